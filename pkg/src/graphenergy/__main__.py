import sys

from graphenergy.cli import main

sys.exit(main())
