import sys

from cantorexit.cli import main

sys.exit(main())
