import sys

from desp.cli import main

sys.exit(main())
