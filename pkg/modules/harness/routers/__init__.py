"""
Routers for harness module.
"""
from modules.harness.routers.harness import router

__all__ = ["router"]
