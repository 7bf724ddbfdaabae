"""Search for elliptic curves in Tate normal form that carry simultaneous
arithmetic progressions of rational points."""

__version__ = "0.1.0"
