"""
Routers for toymodel module.
"""
from modules.toymodel.routers.toymodel import router

__all__ = ["router"]
