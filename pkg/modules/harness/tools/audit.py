"""
Re-derivation of stored fidelities from stored parameters.
"""
import logging
from typing import Optional, Sequence

import numpy as np

from modules.ansatz.models.ansatz import ParameterVector
from modules.ansatz.tools.evolution import evolve
from modules.ansatz.tools.layout import build_layout, parameter_bounds
from modules.harness.models.harness import AuditResult, ResultRecord
from modules.harness.tools.targets import build_hamiltonian
from modules.hamiltonians.tools.hamiltonians import gibbs_state
from modules.qstate.tools.state_ops import uhlmann_fidelity

logger = logging.getLogger(__name__)


def recompute_fidelity(record: ResultRecord) -> float:
    layout = build_layout(record.n, record.D)
    lower, upper = parameter_bounds(layout, record.noise.reset_cap)
    values = np.clip(np.asarray(record.final_params), lower, upper)
    params = ParameterVector(values=values, lower=lower, upper=upper)
    target = gibbs_state(build_hamiltonian(record.descriptor, record.n), record.beta)
    return uhlmann_fidelity(target.state, evolve(layout, params, record.noise))


def audit_rows(
    records: Sequence[ResultRecord],
    sample: Optional[int] = None,
    tol: float = 1e-8,
) -> AuditResult:
    """
    Recompute fidelities of stored records.

    Args:
        records: Records to check
        sample: Check only the first `sample` records when given
        tol: Allowed absolute deviation

    Returns:
        AuditResult
    """
    chosen = list(records)[:sample] if sample is not None else list(records)
    errors = [abs(recompute_fidelity(r) - r.fidelity) for r in chosen]
    mismatches = [i for i, err in enumerate(errors) if err > tol]
    if mismatches:
        logger.warning(f"Audit found {len(mismatches)} of {len(chosen)} records beyond tolerance {tol}")
    return AuditResult(checked=len(chosen), max_abs_error=max(errors, default=0.0), mismatches=mismatches)
