"""Linear-system nonlocal games: group lowering compiler and representation lab."""
from __future__ import annotations

__version__ = "0.1.0"
