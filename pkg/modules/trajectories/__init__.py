"""
Monte Carlo sampling of pure-state circuit instances, used to check that the
ensemble average reproduces the density-matrix evolution.
"""
