import sys

from helly.cli import main

sys.exit(main())
