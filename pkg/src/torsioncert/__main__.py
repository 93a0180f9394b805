"""Allow running torsioncert as a module: python -m torsioncert"""

import sys
from torsioncert.main import main

if __name__ == "__main__":
    sys.exit(main())
