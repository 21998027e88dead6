"""Allow ``python -m dtwc``."""

import sys

from .cli import main

sys.exit(main())
