"""
API router for trajectory validation endpoints.
"""
from typing import Optional

from fastapi import APIRouter, Depends, HTTPException
from pydantic import ValidationError

from modules.trajectories.models.trajectories import ConvergenceReport, TrajectoryValidationRequest
from modules.trajectories.workflows.validation_workflow import TrajectoryValidationWorkflow

router = APIRouter()

_workflow: Optional[TrajectoryValidationWorkflow] = None


def get_workflow() -> TrajectoryValidationWorkflow:
    """Get or create trajectory validation workflow instance."""
    global _workflow
    if _workflow is None:
        _workflow = TrajectoryValidationWorkflow()
    return _workflow


@router.post("/validate", response_model=ConvergenceReport)
async def validate_trajectories(
    request: TrajectoryValidationRequest,
    workflow: TrajectoryValidationWorkflow = Depends(get_workflow),
):
    """
    Compare trajectory averages against density-matrix evolution.

    Args:
        request: Circuit size, sample counts and seed

    Returns:
        ConvergenceReport
    """
    try:
        return await workflow.execute(request)
    except HTTPException:
        raise
    except (ValueError, ValidationError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error validating trajectories: {str(e)}")


@router.get("/health")
async def health_check():
    """Health check endpoint for trajectory validation."""
    return {"status": "healthy", "service": "trajectories"}
