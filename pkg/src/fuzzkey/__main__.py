"""Allow ``python -m fuzzkey``."""

import sys

from .cli import main

sys.exit(main())
