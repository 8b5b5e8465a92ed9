import sys

from edsforge.cli import main

sys.exit(main())
