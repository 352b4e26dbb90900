"""WDW Isospectral - SUSY factorization of the barotropic FRW Wheeler-DeWitt equation."""

__version__ = "0.1.0"
