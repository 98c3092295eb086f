"""
Harness tools: seeding, noise sampling, persistence, aggregation and audit.
"""
from modules.harness.tools.seeding import derive_seed, instance_seeds, noise_rng, restart_seeds
from modules.harness.tools.noise import sample_noise_model
from modules.harness.tools.targets import build_hamiltonian, instance_descriptors
from modules.harness.tools.result_store import (
    read_records_jsonl,
    read_results_csv,
    rows_to_frame,
    write_records_jsonl,
    write_results_csv,
)
from modules.harness.tools.plot_data import emit_plot_data
from modules.harness.tools.audit import audit_rows, recompute_fidelity

__all__ = [
    "derive_seed",
    "instance_seeds",
    "noise_rng",
    "restart_seeds",
    "sample_noise_model",
    "build_hamiltonian",
    "instance_descriptors",
    "read_records_jsonl",
    "read_results_csv",
    "rows_to_frame",
    "write_records_jsonl",
    "write_results_csv",
    "emit_plot_data",
    "audit_rows",
    "recompute_fidelity",
]
