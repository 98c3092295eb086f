"""
Experiment orchestration: configuration, noise sampling, sweeps over
Hamiltonian, temperature, size and depth, result persistence and plot data.
"""
