"""
Loss functions, finite-difference gradients, projected Adam and the
multi-restart optimization protocol.
"""
