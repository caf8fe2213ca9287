"""Tangent bundle TM with the Sasaki pseudo-metric.

Tangent vectors of TM are stored as (horizontal part, vertical part) pairs
of base vectors, since every closed formula used here is stated in lifts.
Induced coordinates (x^i; u^i) exist only for conversion and crosschecks:

    X^h  ->  (X ; -Gamma(X, u)),      Y^v  ->  (0 ; Y),

with Gamma(X, u)^i = Gamma^i_ab X^a u^b.

(TM, Tg, J) is almost Hermitian and almost Kaehler; J is integrable (and
the Sasaki metric flat) exactly when the base metric is flat.  Beyond the
Hermitian property this is recorded here for reference only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import BasePointMismatch, PointMismatch
from .manifold import (
    ChartedMetric,
    FD_STEP_FIRST,
    TangentVec,
    christoffel_at,
    metric_at,
    riemann_at,
)

VectorField = Union[Callable[[np.ndarray], np.ndarray], np.ndarray, TangentVec]


@dataclass(frozen=True)
class TMPoint:
    """A point (x, u) of TM."""

    x: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))


@dataclass(frozen=True)
class TMVec:
    """X^h + Y^v at a TMPoint, stored as hpart=X, vpart=Y."""

    at: TMPoint
    hpart: np.ndarray
    vpart: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "hpart", np.asarray(self.hpart, dtype=float))
        object.__setattr__(self, "vpart", np.asarray(self.vpart, dtype=float))

    def __add__(self, other: "TMVec") -> "TMVec":
        require_same_tm_point(self, other)
        return TMVec(self.at, self.hpart + other.hpart, self.vpart + other.vpart)

    def __sub__(self, other: "TMVec") -> "TMVec":
        return self + (-1.0) * other

    def __rmul__(self, s: float) -> "TMVec":
        return TMVec(self.at, s * self.hpart, s * self.vpart)

    def __neg__(self) -> "TMVec":
        return TMVec(self.at, -self.hpart, -self.vpart)


def require_same_tm_point(a: TMVec, b: TMVec) -> None:
    if not (
        np.allclose(a.at.x, b.at.x, atol=1e-12) and np.allclose(a.at.u, b.at.u, atol=1e-12)
    ):
        raise PointMismatch("TM vectors live at different bundle points")


def as_field(field: VectorField) -> Callable[[np.ndarray], np.ndarray]:
    """Accept a callable field, a TangentVec, or a constant component vector."""
    if callable(field):
        return field
    if isinstance(field, TangentVec):
        const = field.comps
    else:
        const = np.asarray(field, dtype=float)
    return lambda x: const


def field_at(field: VectorField, x: np.ndarray) -> np.ndarray:
    return np.asarray(as_field(field)(np.asarray(x, dtype=float)), dtype=float)


def field_jacobian(field: VectorField, x: np.ndarray, step: float = FD_STEP_FIRST) -> np.ndarray:
    """J[i, j] = d_j X^i by central differences."""
    fn = as_field(field)
    x = np.asarray(x, dtype=float)
    n = x.size
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = step
        cols.append((np.asarray(fn(x + e)) - np.asarray(fn(x - e))) / (2.0 * step))
    return np.stack(cols, axis=1)


def nabla_vector_field(
    m: ChartedMetric, xvec: np.ndarray, yfield: VectorField, x: np.ndarray
) -> np.ndarray:
    """(nabla_X Y)^i = X^a d_a Y^i + Gamma^i_ab X^a Y^b at x."""
    gamma = christoffel_at(m, x).gamma
    yval = field_at(yfield, x)
    jac = field_jacobian(yfield, x)
    return jac @ xvec + np.einsum("iab,a,b->i", gamma, xvec, yval)


def gamma_contract(m: ChartedMetric, x: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gamma(A, B)^i = Gamma^i_ab A^a B^b."""
    gamma = christoffel_at(m, x).gamma
    return np.einsum("iab,a,b->i", gamma, a, b)


def horizontal_lift(m: ChartedMetric, xvec: TangentVec, at: TMPoint) -> TMVec:
    if not np.allclose(xvec.base, at.x, atol=1e-12):
        raise BasePointMismatch("vector is not based at the bundle point's base")
    return TMVec(at, xvec.comps, np.zeros(m.dim))


def vertical_lift(m: ChartedMetric, xvec: TangentVec, at: TMPoint) -> TMVec:
    if not np.allclose(xvec.base, at.x, atol=1e-12):
        raise BasePointMismatch("vector is not based at the bundle point's base")
    return TMVec(at, np.zeros(m.dim), xvec.comps)


def to_induced_coords(m: ChartedMetric, v: TMVec) -> np.ndarray:
    """Components in the induced chart (x^i; u^i) of TM."""
    du = v.vpart - gamma_contract(m, v.at.x, v.hpart, v.at.u)
    return np.concatenate([v.hpart, du])


def from_induced_coords(m: ChartedMetric, at: TMPoint, w: np.ndarray) -> TMVec:
    w = np.asarray(w, dtype=float)
    n = m.dim
    hpart = w[:n]
    vpart = w[n:] + gamma_contract(m, at.x, hpart, at.u)
    return TMVec(at, hpart, vpart)


def project(v: TMVec) -> tuple[TangentVec, TangentVec]:
    """(pi_* v, K v): differential of the projection and the connection map."""
    return TangentVec(v.at.x, v.hpart), TangentVec(v.at.x, v.vpart)


def sasaki_metric_at(m: ChartedMetric, at: TMPoint, a: TMVec, b: TMVec) -> float:
    """Tg(a, b) = g(a_h, b_h) + g(a_v, b_v) evaluated at pi(at)."""
    require_same_tm_point(a, b)
    g = metric_at(m, at.x)
    return float(a.hpart @ g @ b.hpart + a.vpart @ g @ b.vpart)


def tm_nabla(
    m: ChartedMetric,
    xfield: VectorField,
    yfield: VectorField,
    kind_x: str,
    kind_y: str,
    at: TMPoint,
) -> TMVec:
    """Levi-Civita connection of the Sasaki pseudo-metric on lift fields.

    nabla_{X^v} Y^v = 0
    nabla_{X^v} Y^h = 1/2 h{R(u,X)Y}
    nabla_{X^h} Y^v = (nabla_X Y)^v + 1/2 h{R(u,Y)X}
    nabla_{X^h} Y^h = (nabla_X Y)^h - 1/2 v{R(X,Y)u}
    """
    _check_kinds(kind_x, kind_y, allowed="hv")
    x0, u0 = at.x, at.u
    xval = field_at(xfield, x0)
    yval = field_at(yfield, x0)
    zero = np.zeros(m.dim)
    if kind_x == "v" and kind_y == "v":
        return TMVec(at, zero, zero)
    riem = riemann_at(m, x0)
    if kind_x == "v" and kind_y == "h":
        return TMVec(at, 0.5 * riem.apply(u0, xval, yval), zero)
    if kind_x == "h" and kind_y == "v":
        dxy = nabla_vector_field(m, xval, yfield, x0)
        return TMVec(at, 0.5 * riem.apply(u0, yval, xval), dxy)
    dxy = nabla_vector_field(m, xval, yfield, x0)
    return TMVec(at, dxy, -0.5 * riem.apply(xval, yval, u0))


def lift_bracket(
    m: ChartedMetric,
    xfield: VectorField,
    yfield: VectorField,
    kind_x: str,
    kind_y: str,
    at: TMPoint,
) -> TMVec:
    """Lie brackets of lift fields.

    [X^h, Y^h] = [X, Y]^h - v{R(X,Y)u},  [X^h, Y^v] = (nabla_X Y)^v,
    [X^v, Y^v] = 0.
    """
    _check_kinds(kind_x, kind_y, allowed="hv")
    x0, u0 = at.x, at.u
    zero = np.zeros(m.dim)
    if kind_x == "v" and kind_y == "v":
        return TMVec(at, zero, zero)
    if kind_x == "h" and kind_y == "v":
        return TMVec(at, zero, nabla_vector_field(m, field_at(xfield, x0), yfield, x0))
    if kind_x == "v" and kind_y == "h":
        return TMVec(at, zero, -nabla_vector_field(m, field_at(yfield, x0), xfield, x0))
    xval = field_at(xfield, x0)
    yval = field_at(yfield, x0)
    lie = field_jacobian(yfield, x0) @ xval - field_jacobian(xfield, x0) @ yval
    riem = riemann_at(m, x0)
    return TMVec(at, lie, -riem.apply(xval, yval, u0))


def almost_complex_J(v: TMVec) -> TMVec:
    """J X^h = X^v, J X^v = -X^h; on pairs: (h, v) -> (-v, h)."""
    return TMVec(v.at, -v.vpart, v.hpart)


def _check_kinds(kind_x: str, kind_y: str, allowed: str) -> None:
    if kind_x not in allowed or kind_y not in allowed:
        raise ValueError(f"lift kinds must be in {set(allowed)!r}, got ({kind_x}, {kind_y})")
