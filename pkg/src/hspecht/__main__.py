import sys

from hspecht.cli import main

sys.exit(main())
