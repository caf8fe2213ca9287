"""Deterministic seeded sampling of points, fibers and bundle vectors.

All randomness flows through ``numpy.random.Generator`` objects derived from
an explicit seed, with per-index spawning so serial and parallel evaluation
orders produce identical samples.
"""

from __future__ import annotations

import numpy as np

from .errors import DegeneratePlane
from .manifold import ChartedMetric, TangentVec, metric_at, plane_gram
from .sphere import SBPoint, SBVec, horizontal_sb, sb_point, tangential_lift

SAMPLE_BOX = 0.55  # chart points are drawn from [-box, box]^n, then domain-filtered


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """Child generator for a sample index; deterministic in (seed, key)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def sample_domain_point(m: ChartedMetric, rng: np.random.Generator, box: float = SAMPLE_BOX) -> np.ndarray:
    for _ in range(1000):
        x = rng.uniform(-box, box, size=m.dim)
        if m.domain_fn(x):
            return x
    raise RuntimeError(f"could not sample an in-domain point of {m.name!r}")


def sample_tangent_vector(m: ChartedMetric, x: np.ndarray, rng: np.random.Generator) -> TangentVec:
    return TangentVec(x, rng.normal(size=m.dim))


def sample_tangent_plane(
    m: ChartedMetric, x: np.ndarray, rng: np.random.Generator, threshold: float = 1e-3
) -> tuple[TangentVec, TangentVec]:
    """Two tangent vectors spanning a decisively nondegenerate plane."""
    g = metric_at(m, x)
    for _ in range(200):
        xv = rng.normal(size=m.dim)
        yv = rng.normal(size=m.dim)
        if abs(plane_gram(g, xv, yv)) > threshold:
            return TangentVec(x, xv), TangentVec(x, yv)
    raise DegeneratePlane("could not sample a nondegenerate tangent plane")


def sample_fiber_vector(
    m: ChartedMetric, x: np.ndarray, eps: int, rng: np.random.Generator, u_max: float = 3.0
) -> np.ndarray:
    """Random u with g(u, u) = eps: rejection on |g(u,u)| < 0.1 and sign, then scaling.

    The pseudo-spheres are noncompact; rescaled vectors with ||u|| > u_max
    are rejected to keep finite-difference truncation well-conditioned.
    """
    g = metric_at(m, x)
    for _ in range(1000):
        u = rng.normal(size=m.dim)
        q = float(u @ g @ u)
        if abs(q) < 0.1 or np.sign(q) != eps:
            continue
        u = u / np.sqrt(abs(q))
        if np.linalg.norm(u) > u_max:
            continue
        return u
    raise RuntimeError(f"could not sample a fiber vector with sign {eps}")


def sample_sb_point(m: ChartedMetric, eps: int, rng: np.random.Generator) -> SBPoint:
    x = sample_domain_point(m, rng)
    u = sample_fiber_vector(m, x, eps, rng)
    return sb_point(m, x, u, eps)


def sample_sb_vec(m: ChartedMetric, p: SBPoint, rng: np.random.Generator) -> SBVec:
    """Random tangent vector of T_eps M (tangential part canonicalized)."""
    return horizontal_sb(p, rng.normal(size=m.dim)) + tangential_lift(m, p, rng.normal(size=m.dim))


def sample_ker_eta_vec(m: ChartedMetric, p: SBPoint, rng: np.random.Generator) -> SBVec:
    """Random vector in ker eta: horizontal part g-orthogonal to u as well."""
    g = metric_at(m, p.x)
    h = rng.normal(size=m.dim)
    h = h - p.eps * float(h @ g @ p.u) * p.u
    return horizontal_sb(p, h) + tangential_lift(m, p, rng.normal(size=m.dim))
