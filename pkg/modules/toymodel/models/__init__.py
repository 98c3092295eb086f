"""
Toy model data types.
"""
from modules.toymodel.models.toymodel import (
    ResetProbability,
    ToyScenario,
    ToyTableRequest,
    ToyTableResponse,
    ToyTableRow,
)

__all__ = ["ResetProbability", "ToyScenario", "ToyTableRequest", "ToyTableResponse", "ToyTableRow"]
