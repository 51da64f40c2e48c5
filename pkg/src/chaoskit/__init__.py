"""Window-scoped chaos diagnostics: set families, subshifts, interval maps,
pseudo-orbit tracing."""

__version__ = "0.1.0"
