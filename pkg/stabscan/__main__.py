import sys

from stabscan.cli import main

sys.exit(main())
