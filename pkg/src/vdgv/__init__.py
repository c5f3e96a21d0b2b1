"""Exact L-polynomials, Gauss sums and supersingularity verdicts for curves y^p - y = x R(x)."""

__version__ = "0.1.0"
