"""torsioncert - exact modular-symbol computations and torsion exclusion certificates."""

__version__ = "0.1.0"
