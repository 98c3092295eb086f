"""
API router for experiment endpoints.
"""
import json
from typing import Any, Dict, List, Optional

from fastapi import APIRouter, Depends, HTTPException
from pydantic import ValidationError

from modules.harness.models.harness import EmitPlotsRequest, ExperimentConfig, ResultRow
from modules.harness.tools.plot_data import emit_plot_data
from modules.harness.workflows.experiment_workflow import ExperimentWorkflow

router = APIRouter()

_workflow: Optional[ExperimentWorkflow] = None


def get_workflow() -> ExperimentWorkflow:
    """Get or create experiment workflow instance."""
    global _workflow
    if _workflow is None:
        _workflow = ExperimentWorkflow()
    return _workflow


@router.post("/prepare-gibbs", response_model=List[ResultRow])
async def prepare_gibbs(
    cfg: ExperimentConfig,
    workflow: ExperimentWorkflow = Depends(get_workflow),
):
    """
    Run an experiment config and return its result rows.

    Args:
        cfg: Experiment config

    Returns:
        Result rows, best-marked rows included
    """
    try:
        records = await workflow.run_experiment(cfg)
        return [record.to_row() for record in records]
    except HTTPException:
        raise
    except (ValueError, ValidationError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error running experiment: {str(e)}")


@router.post("/emit-plots")
async def emit_plots(request: EmitPlotsRequest) -> List[Dict[str, Any]]:
    """Aggregate result rows into a plot-ready table."""
    try:
        frame = emit_plot_data(request.rows, request.group_by, request.stat, best_only=request.best_only)
        return json.loads(frame.to_json(orient="records"))
    except HTTPException:
        raise
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error aggregating rows: {str(e)}")


@router.get("/health")
async def health_check():
    """Health check endpoint for the experiment harness."""
    return {"status": "healthy", "service": "harness"}
