import sys

from harmjet.cli import main

sys.exit(main())
