"""
Seed derivation for experiments.

Every stream is a numpy SeedSequence keyed by (master_seed, spawn_key), so
a value depends only on its position in the experiment and never on
execution order.
"""
from typing import List, Optional

import numpy as np

NOISE_STREAM = 1_000_003


def derive_seed(root: int, *key: int) -> int:
    """32-bit integer seed for position `key` under `root`."""
    return int(np.random.SeedSequence(root, spawn_key=tuple(key)).generate_state(1)[0])


def restart_seeds(master_seed: int, point: int, restarts: int) -> List[int]:
    return [derive_seed(master_seed, point, r) for r in range(restarts)]


def noise_rng(master_seed: int, point: int, restart: Optional[int] = None) -> np.random.Generator:
    """Generator for the noise draw of a point, or of one restart of it."""
    key = (point, NOISE_STREAM) if restart is None else (point, NOISE_STREAM, restart)
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))


def instance_seeds(seed: int, count: int) -> List[int]:
    """Seeds of `count` random Hamiltonian instances."""
    return [derive_seed(seed, j) for j in range(count)]
