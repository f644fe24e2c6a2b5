import sys

from liouville.cli import main

sys.exit(main())
