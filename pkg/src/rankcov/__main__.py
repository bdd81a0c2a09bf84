import sys

from rankcov.cli import main

sys.exit(main())
