"""
Routers for trajectories module.
"""
from modules.trajectories.routers.trajectories import router

__all__ = ["router"]
