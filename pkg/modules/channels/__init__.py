"""
Gate and channel primitives: local unitaries, the probabilistic reset gate,
hardware noise channels and the KAK-parametrized two-qubit gate.
"""
