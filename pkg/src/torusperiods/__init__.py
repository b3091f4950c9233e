"""Exact lattice and period-domain computations for blown-up 4-tori."""
