"""BearingBox entrypoint.

Usage:
    python main.py run --scenario case4
    python main.py --log-level INFO observability --scenario case1 --out verdicts.jsonl

Same as the `bbx` wrapper created by install.sh.
"""

from __future__ import annotations

import sys

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
