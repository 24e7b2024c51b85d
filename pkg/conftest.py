"""Puts the repository root on sys.path so `core`, `geometry`, ... import as top-level packages."""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))
