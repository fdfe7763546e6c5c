"""Warm-start level-1 QAOA variants, Goemans-Williamson and Burer-Monteiro baselines for cubic MaxCut."""

__version__ = "0.1.0"
