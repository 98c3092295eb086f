"""
Brick-wall dissipative circuit: layout, parameter vector and evolution.
"""
