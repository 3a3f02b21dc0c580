"""tfzoo: black-box total search problems, reductions, and randomized solvers."""

__version__ = "0.1.0"
