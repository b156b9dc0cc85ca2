import sys

from cubecover.cli import main

sys.exit(main())
