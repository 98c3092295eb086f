"""
API router for toy-model endpoints.
"""
from fastapi import APIRouter, HTTPException

from modules.toymodel.models.toymodel import ToyTableRequest, ToyTableResponse
from modules.toymodel.tools.toy import toy_table

router = APIRouter()


@router.post("/table", response_model=ToyTableResponse)
async def build_toy_table(request: ToyTableRequest):
    """
    Optimal reset probabilities over a grid of rates and radii.

    Args:
        request: Rate and radius grids

    Returns:
        ToyTableResponse with one row per grid point
    """
    try:
        return ToyTableResponse(rows=toy_table(request.lambdas, request.radii))
    except HTTPException:
        raise
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error building toy table: {str(e)}")


@router.get("/health")
async def health_check():
    """Health check endpoint for the toy model."""
    return {"status": "healthy", "service": "toymodel"}
