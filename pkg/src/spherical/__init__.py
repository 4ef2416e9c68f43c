"""Exact solvers, oracles, and reduction generators for spherical equations
prod_i z_i^-1 c_i z_i = 1 over families of finite groups."""

__version__ = "0.1.0"
