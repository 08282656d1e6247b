import sys

from ptwell.cli import main

sys.exit(main())
