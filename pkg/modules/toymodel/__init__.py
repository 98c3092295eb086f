"""
Closed-form single-qubit analysis: depolarizing noise around a probabilistic
reset, the optimal reset probability and its feasibility condition.
"""
