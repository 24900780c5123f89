"""
Multi-start numerical search over fixed-length products.

Independent check on minimality: if a target needs s factors, no product of
s-1 alternating factors should come close to it. Each restart runs a bounded
local minimization from a random start; restarts are independent and can be
spread over a process pool.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .canonical import Axis, canonical_generators
from .so3 import RotationMatrix, validate_rotation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchResult:
    """Closest product found: Frobenius distance, leading axis and parameters."""

    distance: float
    leading_axis: Axis
    parameters: Tuple[float, ...]
    restarts: int


def alternating_axes(leading: Axis, length: int) -> List[Axis]:
    axes = []
    axis = leading
    for _ in range(length):
        axes.append(axis)
        axis = axis.other
    return axes


def _product(params: Sequence[float], rho: float, axes: Sequence[Axis]) -> RotationMatrix:
    Z1, Z2 = canonical_generators(rho)
    X = np.eye(3)
    for axis, t in zip(axes, params):
        X = X @ (Z1 if axis is Axis.Z1 else Z2).exp(float(t))
    return X


def _squared_distance(params: np.ndarray, rho: float, axes: Sequence[Axis], X_f: np.ndarray) -> float:
    diff = _product(params, rho, axes) - X_f
    return float(np.sum(diff * diff))


def _run_restarts(
    X_f: np.ndarray, rho: float, axes: Tuple[Axis, ...], restarts: int, seed
) -> Tuple[float, Tuple[float, ...]]:
    """Best (squared distance, parameters) over a batch of restarts."""
    Z1, Z2 = canonical_generators(rho)
    bounds = [(0.0, (Z1 if axis is Axis.Z1 else Z2).period) for axis in axes]
    rng = np.random.default_rng(seed)

    best_fun, best_x = math.inf, ()
    for _ in range(restarts):
        x0 = np.array([rng.uniform(lo, hi) for lo, hi in bounds])
        result = minimize(
            _squared_distance, x0, args=(rho, axes, X_f), method="L-BFGS-B", bounds=bounds
        )
        if result.fun < best_fun:
            best_fun, best_x = float(result.fun), tuple(float(v) for v in result.x)
    return best_fun, best_x


def shorter_product_distance(
    X_f: RotationMatrix,
    rho: float,
    length: int,
    restarts: int = 500,
    seed: int = 0,
    jobs: int = 1,
) -> SearchResult:
    """Smallest distance from X_f to a product of `length` alternating canonical factors.

    Both axis-leading patterns get `restarts` starts each.
    """
    X_f = validate_rotation(X_f)
    if length <= 0:
        distance = float(np.linalg.norm(np.eye(3) - X_f))
        return SearchResult(distance, Axis.Z1, (), 0)

    jobs = max(1, jobs)
    seeds = np.random.SeedSequence(seed).spawn(2 * jobs)
    tasks = []
    for i, leading in enumerate((Axis.Z1, Axis.Z2)):
        axes = tuple(alternating_axes(leading, length))
        share, extra = divmod(restarts, jobs)
        for j in range(jobs):
            count = share + (1 if j < extra else 0)
            if count:
                tasks.append((leading, axes, count, seeds[i * jobs + j]))

    if jobs == 1:
        outcomes = [_run_restarts(X_f, rho, axes, count, s) for _, axes, count, s in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_restarts, X_f, rho, axes, count, s)
                for _, axes, count, s in tasks
            ]
            outcomes = [f.result() for f in futures]

    best = min(range(len(tasks)), key=lambda k: outcomes[k][0])
    fun, params = outcomes[best]
    logger.debug("search length=%d best squared distance %.3e", length, fun)
    return SearchResult(
        distance=math.sqrt(max(fun, 0.0)),
        leading_axis=tasks[best][0],
        parameters=params,
        restarts=2 * restarts,
    )
