"""Vector invariants of orthogonal groups in characteristic 2."""

__version__ = "0.1.0"
