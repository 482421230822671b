"""
Perturbation search for precondition violations.

A failed parameterization x is perturbed with Gaussian samples; relations
that become true but are not required by the mode are diagnosis
candidates. The search region grows until some violation is found.
diagnose_stable repeats the search on independent streams and keeps the
relations that show up often enough.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence

import numpy as np

from ..core.experience import Experience
from ..core.rng import RngHandle
from ..core.space import ActionParameterization, as_parameterization
from ..execution_model.model import ExecutionModel
from ..relations.conflicts import remove_conflicts
from ..relations.vocabulary import truth_matrix
from ..utils.exceptions import DimensionMismatchError
from ..utils.logging import get_logger, log_performance
from .config import DiagnosisConfig

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class DiagnosisRun:
    """Result of one perturbation search."""

    candidates: FrozenSet[str]
    falsifying: Optional[ActionParameterization]
    expansions: int
    violations: Dict[int, float] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return bool(self.candidates)


@dataclass(frozen=True, eq=False)
class Diagnosis:
    """Stable diagnosis aggregated over several runs."""

    candidates: FrozenSet[str]
    falsifying: ActionParameterization
    frequencies: Dict[str, float]
    expansions_used: int
    runs: int = 1
    failure_id: Optional[int] = None

    @property
    def found(self) -> bool:
        return bool(self.candidates)


def diagnose_once(model: ExecutionModel, mode: Hashable, x: ActionParameterization,
                  cfg: DiagnosisConfig, rng: RngHandle) -> DiagnosisRun:
    """
    One perturbation search around a failed parameterization.

    Each region draws ``k_max`` samples from N(x, diag(sigma^2)). A sample
    making true a relation the mode does not require adds it to the
    candidates and records the sample value for the affected parameters
    (latest sample wins). Conflicts are removed after every violating
    sample, so two members of one group cancel each other. If a whole
    batch finds nothing the standard deviations grow by (1 + r).

    Args:
        model: Execution model
        mode: Qualitative mode q
        x: Failed parameterization
        cfg: Search settings
        rng: Random stream

    Returns:
        DiagnosisRun: Candidates, falsifying parameterization and the
        number of expansions; ``found`` is False when ``i_max``
        expansions produced no violation
    """
    x = as_parameterization(model.space, x)
    if len(cfg.sigma0) != model.space.dim:
        raise DimensionMismatchError(model.space.dim, len(cfg.sigma0), component="Diagnosis")

    vocab = model.vocab
    required = model.preconditions.required(mode)
    allowed = np.array([name in required for name in vocab.names], dtype=bool)
    params = np.array([r.parameter for r in vocab.relations])
    column = {name: j for j, name in enumerate(vocab.names)}

    for expansion in range(cfg.i_max + 1):
        samples = rng.normal(x, cfg.sigmas(expansion), size=(cfg.k_max, model.space.dim))
        truth = truth_matrix(vocab, samples)
        violating = truth & ~allowed

        candidates: FrozenSet[str] = frozenset()
        values: Dict[int, float] = {}
        for row in np.flatnonzero(violating.any(axis=1)):
            hits = np.flatnonzero(violating[row])
            found = {vocab.names[j] for j in hits}
            touched = {int(params[j]) for j in hits}
            for p in touched:
                values[p] = float(samples[row, p])
            if not found <= candidates:
                candidates, values = remove_conflicts(vocab, candidates | found, values)
            # an overwritten value no longer realises a relation this sample left false
            stale = {d for d in candidates - found
                     if vocab.parameter_of(d) in touched and not truth[row, column[d]]}
            if stale:
                candidates = candidates - stale
                supported = {vocab.parameter_of(d) for d in candidates}
                values = {p: v for p, v in values.items() if p in supported}

        if candidates:
            falsifying = x.copy()
            for p, v in values.items():
                falsifying[p] = v
            falsifying.setflags(write=False)
            return DiagnosisRun(candidates, falsifying, expansion, values)

    return DiagnosisRun(frozenset(), None, cfg.i_max)


@log_performance
def diagnose_stable(model: ExecutionModel, mode: Hashable, x: ActionParameterization,
                    cfg: DiagnosisConfig, rng: RngHandle, workers: int = 1) -> Diagnosis:
    """
    Repeat diagnose_once ``n`` times and keep frequent relations.

    A relation is kept when its frequency over the runs is strictly above
    ``alpha``. For each kept relation the falsifying coordinate is the mean
    perturbed value over the runs where that relation appeared; all other
    coordinates stay at x. An empty result is a Diagnosis with no
    candidates.
    """
    x = as_parameterization(model.space, x)
    streams = rng.split(cfg.n)

    def run(stream: RngHandle) -> DiagnosisRun:
        return diagnose_once(model, mode, x, cfg, stream)

    if workers > 1 and cfg.n > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(run, streams))
    else:
        runs = [run(stream) for stream in streams]

    counts: Dict[str, int] = {}
    for result in runs:
        for name in result.candidates:
            counts[name] = counts.get(name, 0) + 1
    frequencies = {name: counts[name] / cfg.n for name in sorted(counts)}

    kept = frozenset(name for name, f in frequencies.items() if f > cfg.alpha)
    kept, _ = remove_conflicts(model.vocab, kept, {})

    falsifying = x.copy()
    for p in sorted({model.vocab.parameter_of(d) for d in kept}):
        on_p = {d for d in kept if model.vocab.parameter_of(d) == p}
        values = [result.violations[p] for result in runs
                  if result.candidates & on_p and p in result.violations]
        falsifying[p] = float(np.mean(values))
    falsifying.setflags(write=False)

    if not kept:
        logger.debug(f"No relation above alpha={cfg.alpha} over {cfg.n} runs")
    return Diagnosis(kept, falsifying, frequencies,
                     max(result.expansions for result in runs), cfg.n)


def diagnose_batch(model: ExecutionModel, mode: Hashable, failures: Sequence[Experience],
                   cfg: DiagnosisConfig, rng: RngHandle, workers: int = 1) -> List[Diagnosis]:
    """
    Stable diagnoses for a list of failures, one sub-stream per failure.

    Output order follows ``failures`` regardless of ``workers``.
    """
    streams = rng.split(len(failures))

    def run(index: int) -> Diagnosis:
        failure = failures[index]
        diagnosis = diagnose_stable(model, mode, failure.params, cfg, streams[index])
        failure_id = failure.experience_id if failure.experience_id is not None else index
        return Diagnosis(diagnosis.candidates, diagnosis.falsifying, diagnosis.frequencies,
                         diagnosis.expansions_used, diagnosis.runs, failure_id)

    if workers > 1 and len(failures) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            diagnoses = list(pool.map(run, range(len(failures))))
    else:
        diagnoses = [run(i) for i in range(len(failures))]

    found = sum(d.found for d in diagnoses)
    logger.info(f"Diagnosed {found} of {len(failures)} failures")
    return diagnoses
