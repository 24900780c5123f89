"""
Bang-bang control of bilinear systems  x' = A x + B x u,  u in {M, N}.

Each constant-control segment realizes one exponential factor of the target,
so a minimum-length factorization gives a minimum-switch schedule. The
rightmost factor is applied first in time.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from .canonical import Axis
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InputError, NotControllableWithTwoLevels
from .factorizer import Factorization, Generator, factor_pair
from .so3 import SOUTH_POLE
from .su2 import SuGenerator, factor_su2

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class BilinearSystem:
    """Drift A, control direction B and the two admissible control values."""

    A: Generator
    B: Generator
    M: float
    N: float

    @property
    def is_quantum(self) -> bool:
        return isinstance(self.A, SuGenerator)

    def generator(self, u: float) -> Generator:
        return self.A + self.B * u


@dataclass(frozen=True)
class Segment:
    u: float
    duration: float


@dataclass(frozen=True)
class ControlSchedule:
    """Time-ordered constant-control segments."""

    segments: Tuple[Segment, ...] = ()

    @property
    def switches(self) -> int:
        return max(len(self.segments) - 1, 0)

    @property
    def total_time(self) -> float:
        return sum(s.duration for s in self.segments)

    def __len__(self) -> int:
        return len(self.segments)


def generators(
    sys: BilinearSystem, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[Generator, Generator]:
    """(Z1, Z2) = (A + B M, A + B N), which must be linearly independent."""
    if type(sys.A) is not type(sys.B):
        raise InputError("A and B must both be so(3) or both su(2) generators")
    Z1, Z2 = sys.generator(sys.M), sys.generator(sys.N)
    n1, n2 = Z1.speed, Z2.speed
    if n1 == 0 or n2 == 0:
        sine = 0.0
    else:
        sine = float(np.linalg.norm(np.cross(Z1.coefficients() / n1, Z2.coefficients() / n2)))
    if sine <= tol.dependence:
        raise NotControllableWithTwoLevels(
            "A + B*M and A + B*N are linearly dependent; two control levels cannot reach every target"
        )
    return Z1, Z2


def schedule_from_factorization(sys: BilinearSystem, F: Factorization) -> ControlSchedule:
    """Reverse the factors into time order: value M for Z1 factors, N for Z2 factors."""
    segments = [
        Segment(sys.M if f.axis is Axis.Z1 else sys.N, f.parameter)
        for f in reversed(F.factors)
        if f.parameter > 0
    ]
    return ControlSchedule(tuple(segments))


def synthesize(sys: BilinearSystem, X_f, tol: Tolerances = DEFAULT_TOLERANCES) -> ControlSchedule:
    """Minimum-switch schedule steering the identity to X_f."""
    Z1, Z2 = generators(sys, tol)
    if sys.is_quantum:
        F = factor_su2(X_f, Z1, Z2, tol)
    else:
        F = factor_pair(X_f, Z1, Z2, tol)
    schedule = schedule_from_factorization(sys, F)
    logger.debug("synthesized %d segments (%d switches)", len(schedule), schedule.switches)
    return schedule


def parallel_map(work: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """work over independent items, in input order; a process pool when jobs > 1."""
    if jobs <= 1:
        return [work(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, items))


def synthesize_batch(
    sys: BilinearSystem,
    targets: Sequence,
    jobs: int = 1,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> List[ControlSchedule]:
    """synthesize over independent targets, in input order."""
    return parallel_map(partial(synthesize, sys, tol=tol), targets, jobs)


# ============================================================
# SIMULATION
# ============================================================

def propagate(sys: BilinearSystem, sched: ControlSchedule) -> np.ndarray:
    """Exact flow X(T): the earliest segment acts first."""
    X = sys.A.identity()
    for segment in sched.segments:
        X = sys.generator(segment.u).exp(segment.duration) @ X
    return X


def sample_flow(
    steps: Sequence[Tuple[Generator, float]],
    x0,
    samples_per_segment: int,
    identity: np.ndarray,
) -> List[Tuple[float, np.ndarray]]:
    """Samples (t, X(t) x0) at uniform times inside each (generator, duration) step."""
    if samples_per_segment < 1:
        raise InputError("samples_per_segment must be at least 1")
    x0 = np.asarray(x0)
    samples = [(0.0, x0.copy())]
    X_start = identity
    t_start = 0.0
    for Z, duration in steps:
        for k in range(1, samples_per_segment + 1):
            s = duration * k / samples_per_segment
            samples.append((t_start + s, Z.exp(s) @ X_start @ x0))
        X_start = Z.exp(duration) @ X_start
        t_start += duration
    return samples


def propagate_state(
    sys: BilinearSystem,
    sched: ControlSchedule,
    x0,
    samples_per_segment: int = 16,
) -> List[Tuple[float, np.ndarray]]:
    """Trajectory of x(t) = X(t) x0 under the schedule."""
    dim = sys.A.dim
    x0 = np.asarray(x0, dtype=complex if sys.is_quantum else float)
    if x0.shape != (dim,):
        raise InputError(f"Initial state must have {dim} components, got shape {x0.shape}")
    steps = [(sys.generator(s.u), s.duration) for s in sched.segments]
    return sample_flow(steps, x0, samples_per_segment, sys.A.identity())


def sphere_path(
    F: Factorization, samples_per_factor: int = 16, start: Optional[np.ndarray] = None
) -> List[Tuple[float, np.ndarray]]:
    """Curve P(t) = X(t) P_s traced while the factors of F are applied, rightmost first."""
    steps = [(F.generator(f.axis), f.parameter) for f in reversed(F.factors)]
    start = SOUTH_POLE if start is None else start
    return sample_flow(steps, start, samples_per_factor, np.eye(3))
