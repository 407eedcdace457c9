"""`python -m planeaut` dispatches to the command line front end."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
