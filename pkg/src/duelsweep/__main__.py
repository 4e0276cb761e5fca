import sys

from duelsweep.cli import main

sys.exit(main())
