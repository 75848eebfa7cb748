from __future__ import annotations

import dataclasses
import math
import typing as typ

import numpy as np

from ._report import Outcome, failed, passed
from .. import errors
from ..pipeline import run_parallel
from ..universe import VarUniverse, make_universe, numbered_universe


@dataclasses.dataclass(frozen=True)
class TrialConfig:
    """Parameters of a verification run.

    `k` selects one closure index; when it is None every index 1..n is checked.
    """
    n: int
    trials: int = 100
    seed: int = 0
    k: int = None
    names: tuple[str, ...] = None
    jobs: int = 1
    force: bool = False
    timings: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise errors.SemanticError(f'number of trials must be positive, got {self.trials}')
        if self.names is not None and len(self.names) != self.n:
            raise errors.SemanticError(f'{len(self.names)} names given for {self.n} variables')
        if self.k is not None and not (1 <= self.k <= self.n):
            raise errors.SemanticError(f'index {self.k} out of range [1, {self.n}]')
        if not (0 <= self.seed < 2 ** 64):
            raise errors.SemanticError(f'seed must fit in 64 bits, got {self.seed}')

    @property
    def universe(self) -> VarUniverse:
        return make_universe(self.names) if self.names else numbered_universe(self.n)

    @property
    def ks(self) -> list[int]:
        return [self.k] if self.k is not None else list(range(1, self.n + 1))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """The random generator of a trial; it depends only on the seed and the trial index."""
    return np.random.default_rng([seed, trial])


# A trial returns None when it holds, or a counterexample.
Trial = typ.Callable[[int, np.random.Generator], typ.Any]


def run_trials(cfg: TrialConfig, trial: Trial, salt: int = 0) -> Outcome:
    """Run `cfg.trials` independent trials and report the one with the lowest index that failed.

    :param cfg: The configuration.
    :param trial: The trial function, called with the trial index and its generator.
    :param salt: Distinguishes the random streams of different checks sharing a seed.
    :return: The outcome.
    """
    indices = list(range(cfg.trials))
    chunk_size = max(1, math.ceil(len(indices) / max(cfg.jobs, 1)))
    chunks = [indices[i:i + chunk_size] for i in range(0, len(indices), chunk_size)]

    def run_chunk(chunk: list[int]) -> tuple[int, typ.Any] | None:
        for i in chunk:
            if (cex := trial(i, trial_rng(cfg.seed, salt * 1_000_003 + i))) is not None:
                return i, cex
        return None

    for result in run_parallel(run_chunk, chunks, cfg.jobs):
        if result is not None:
            i, cex = result
            return failed({'trial': i, 'seed': cfg.seed, **cex})
    return passed()
