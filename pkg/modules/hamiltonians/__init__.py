"""
Ring Hamiltonians (transverse-field Ising, XY, random 2-local) and their
Gibbs states.
"""
