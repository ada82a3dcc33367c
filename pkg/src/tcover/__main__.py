import sys

from tcover.cli import main

sys.exit(main())
