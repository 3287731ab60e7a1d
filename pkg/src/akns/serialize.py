"""Deterministic float formatting shared by all file writers."""


def fmt(value: float) -> str:
    """Shortest round-trip decimal form, at most 17 significant digits."""
    return repr(float(value))
