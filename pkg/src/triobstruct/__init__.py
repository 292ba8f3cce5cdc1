"""Exact computational engine for Puppe triangulated structures on small
additive categories: Hochschild-type cohomology of finite linear categories,
Toda brackets, the local-to-global spectral machinery and the first
enhancement obstructions."""

__version__ = "0.1.0"
