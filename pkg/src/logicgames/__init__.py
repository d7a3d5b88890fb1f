"""Logic games over finite relational structures.

Three games with a shared exhaustive-solving kernel: formula evaluation,
model existence, and round-bounded structure comparison, plus the
translations that move winning strategies between them.
"""

__version__ = "0.1.0"
