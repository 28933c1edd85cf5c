"""Numerical and combinatorial core: normal forms, Segre symbols, varieties."""
