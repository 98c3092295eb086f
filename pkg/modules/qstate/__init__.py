"""
Dense many-qubit state algebra: density matrices, pure states and distances.
"""
