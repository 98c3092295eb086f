"""
Optimization workflows.
"""
from modules.optimize.workflows.optimization import best_of, optimize_run, run_restarts, select_best

__all__ = ["best_of", "optimize_run", "run_restarts", "select_best"]
