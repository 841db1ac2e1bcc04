"""Allow running the CLI as ``python -m caseframe``."""

import sys

from caseframe.cli import main

if __name__ == "__main__":
    sys.exit(main())
