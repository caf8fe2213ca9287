"""Base pseudo-Riemannian manifold in a single chart.

A manifold (M, g) is presented by a ``ChartedMetric``: a callable returning
the symmetric component matrix g_ij at a point, optional analytic first and
second partial derivatives, and a domain predicate.  Everything downstream
(Levi-Civita connection, curvature, sectional curvature, space forms) is
computed from these raw ingredients.

Index conventions
-----------------
* ``Christoffel.gamma[i, j, k]`` is Gamma^i_jk, symmetric in (j, k).
* ``RiemannTensor.r[i, j, k, l]`` is the i-component of R(d_k, d_l) d_j
  for the operator convention R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
* ``deriv1_fn(x)[k, i, j]`` is d_k g_ij; ``deriv2_fn(x)[k, l, i, j]`` is
  d_k d_l g_ij.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateMetric, DegeneratePlane, OutOfDomain

Point = np.ndarray

FD_STEP_FIRST = 1e-5
FD_STEP_SECOND = 1e-4


@dataclass(frozen=True)
class TangentVec:
    """Tangent vector of M: components in the chart frame at a base point."""

    base: Point
    comps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", np.asarray(self.base, dtype=float))
        object.__setattr__(self, "comps", np.asarray(self.comps, dtype=float))


@dataclass(frozen=True)
class Christoffel:
    """Levi-Civita connection coefficients Gamma^i_jk at one point."""

    gamma: np.ndarray


@dataclass(frozen=True)
class RiemannTensor:
    """Curvature components R^i_jkl (see module docstring for slots)."""

    r: np.ndarray

    def apply(self, x_vec: np.ndarray, y_vec: np.ndarray, z_vec: np.ndarray) -> np.ndarray:
        """Components of R(X, Y)Z."""
        return np.einsum("ijkl,j,k,l->i", self.r, z_vec, x_vec, y_vec)


@dataclass(frozen=True)
class SpaceFormSpec:
    """Constant-sectional-curvature model parameters."""

    dim: int
    index: int
    curvature: float


@dataclass
class ChartedMetric:
    """A pseudo-metric manifold presented in one coordinate chart.

    ``metric_fn`` must return a symmetric, nondegenerate n x n matrix with
    exactly ``index`` negative eigenvalues everywhere on the domain.  When
    the analytic derivative callables are absent, central finite differences
    (steps 1e-5 / 1e-4) are used and ``uses_fd_derivatives`` is True.
    """

    dim: int
    index: int
    metric_fn: Callable[[Point], np.ndarray]
    deriv1_fn: Optional[Callable[[Point], np.ndarray]] = None
    deriv2_fn: Optional[Callable[[Point], np.ndarray]] = None
    domain_fn: Callable[[Point], bool] = field(default=lambda x: True)
    locally_symmetric: bool = False
    name: str = ""

    @property
    def uses_fd_derivatives(self) -> bool:
        return self.deriv1_fn is None or self.deriv2_fn is None

    def require_in_domain(self, x: Point) -> None:
        if not self.domain_fn(np.asarray(x, dtype=float)):
            raise OutOfDomain(f"point {x} outside domain of chart {self.name!r}")


def metric_at(m: ChartedMetric, x: Point) -> np.ndarray:
    """Evaluate g_ij at x, checking domain, symmetry and signature."""
    x = np.asarray(x, dtype=float)
    m.require_in_domain(x)
    g = np.asarray(m.metric_fn(x), dtype=float)
    if g.shape != (m.dim, m.dim):
        raise DegenerateMetric(f"metric has shape {g.shape}, expected {(m.dim, m.dim)}")
    if not np.allclose(g, g.T, atol=1e-14 * max(1.0, np.abs(g).max())):
        raise DegenerateMetric("metric matrix is not symmetric")
    return g


def metric_deriv1_at(m: ChartedMetric, x: Point) -> np.ndarray:
    """d_k g_ij at x: analytic when supplied, else central differences."""
    x = np.asarray(x, dtype=float)
    if m.deriv1_fn is not None:
        return np.asarray(m.deriv1_fn(x), dtype=float)
    n = m.dim
    h = FD_STEP_FIRST
    dg = np.empty((n, n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = h
        dg[k] = (m.metric_fn(x + e) - m.metric_fn(x - e)) / (2.0 * h)
    return dg


def metric_deriv2_at(m: ChartedMetric, x: Point) -> np.ndarray:
    """d_k d_l g_ij at x: analytic when supplied, else central differences."""
    x = np.asarray(x, dtype=float)
    if m.deriv2_fn is not None:
        return np.asarray(m.deriv2_fn(x), dtype=float)
    n = m.dim
    h = FD_STEP_SECOND
    g0 = np.asarray(m.metric_fn(x), dtype=float)
    ddg = np.empty((n, n, n, n))
    for k in range(n):
        ek = np.zeros(n)
        ek[k] = h
        ddg[k, k] = (m.metric_fn(x + ek) - 2.0 * g0 + m.metric_fn(x - ek)) / h**2
        for l in range(k + 1, n):
            el = np.zeros(n)
            el[l] = h
            mixed = (
                m.metric_fn(x + ek + el)
                - m.metric_fn(x + ek - el)
                - m.metric_fn(x - ek + el)
                + m.metric_fn(x - ek - el)
            ) / (4.0 * h**2)
            ddg[k, l] = mixed
            ddg[l, k] = mixed
    return ddg


def metric_inverse(g: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise DegenerateMetric("metric matrix is singular") from exc


def christoffel_at(m: ChartedMetric, x: Point) -> Christoffel:
    """Levi-Civita symbols Gamma^i_jk from the Koszul formula."""
    x = np.asarray(x, dtype=float)
    g = metric_at(m, x)
    dg = metric_deriv1_at(m, x)
    ginv = metric_inverse(g)
    # T[l, j, k] = d_j g_lk + d_k g_jl - d_l g_jk
    t = np.einsum("jlk->ljk", dg) + np.einsum("kjl->ljk", dg) - dg
    gamma = 0.5 * np.einsum("il,ljk->ijk", ginv, t)
    gamma = 0.5 * (gamma + np.swapaxes(gamma, 1, 2))  # enforce exact lower symmetry
    return Christoffel(gamma)


def _christoffel_deriv_at(m: ChartedMetric, x: Point) -> np.ndarray:
    """d_c Gamma^i_ab, from analytic g-derivatives when available."""
    n = m.dim
    if not m.uses_fd_derivatives:
        g = metric_at(m, x)
        dg = metric_deriv1_at(m, x)
        ddg = metric_deriv2_at(m, x)
        ginv = metric_inverse(g)
        dginv = -np.einsum("im,cmn,nl->cil", ginv, dg, ginv)
        t = np.einsum("jlk->ljk", dg) + np.einsum("kjl->ljk", dg) - dg
        # dt[c, l, a, b] = d_c (d_a g_lb + d_b g_al - d_l g_ab)
        dt = (
            np.einsum("calb->clab", ddg)
            + np.einsum("cbal->clab", ddg)
            - np.einsum("clab->clab", ddg)
        )
        dgamma = 0.5 * (
            np.einsum("cil,lab->ciab", dginv, t) + np.einsum("il,clab->ciab", ginv, dt)
        )
        return dgamma
    h = FD_STEP_SECOND
    dgamma = np.empty((n, n, n, n))
    for c in range(n):
        e = np.zeros(n)
        e[c] = h
        dgamma[c] = (christoffel_at(m, x + e).gamma - christoffel_at(m, x - e).gamma) / (2.0 * h)
    return dgamma


def riemann_at(m: ChartedMetric, x: Point) -> RiemannTensor:
    """Curvature components R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj + quadratic terms."""
    x = np.asarray(x, dtype=float)
    gamma = christoffel_at(m, x).gamma
    dgamma = _christoffel_deriv_at(m, x)
    r = (
        np.einsum("kilj->ijkl", dgamma)
        - np.einsum("likj->ijkl", dgamma)
        + np.einsum("ikm,mlj->ijkl", gamma, gamma)
        - np.einsum("ilm,mkj->ijkl", gamma, gamma)
    )
    return RiemannTensor(r)


def lower_riemann(m: ChartedMetric, x: Point, riem: RiemannTensor) -> np.ndarray:
    """R_ijkl = g_im R^m_jkl."""
    g = metric_at(m, x)
    return np.einsum("im,mjkl->ijkl", g, riem.r)


def nabla_riemann_full(m: ChartedMetric, x: Point) -> np.ndarray:
    """All components nabla_m R^i_jkl at x (index order [m, i, j, k, l]).

    d_m R is taken by central differences of ``riemann_at`` and corrected on
    all four slots with the Christoffel symbols.  Charts flagged
    ``locally_symmetric`` (space forms) short-circuit to zero.
    """
    x = np.asarray(x, dtype=float)
    n = m.dim
    if m.locally_symmetric:
        return np.zeros((n, n, n, n, n))
    gamma = christoffel_at(m, x).gamma
    r = riemann_at(m, x).r
    h = FD_STEP_FIRST
    dr = np.empty((n, n, n, n, n))
    for c in range(n):
        e = np.zeros(n)
        e[c] = h
        dr[c] = (riemann_at(m, x + e).r - riemann_at(m, x - e).r) / (2.0 * h)
    return (
        dr
        + np.einsum("imp,pjkl->mijkl", gamma, r)
        - np.einsum("pmj,ipkl->mijkl", gamma, r)
        - np.einsum("pmk,ijpl->mijkl", gamma, r)
        - np.einsum("pml,ijkp->mijkl", gamma, r)
    )


def nabla_riemann_at(m: ChartedMetric, x: Point, direction: TangentVec) -> RiemannTensor:
    """Covariant derivative (nabla_X R) as a (1,3)-tensor at x."""
    full = nabla_riemann_full(m, x)
    xv = np.asarray(direction.comps, dtype=float)
    return RiemannTensor(np.einsum("m,mijkl->ijkl", xv, full))


def plane_gram(g: np.ndarray, xv: np.ndarray, yv: np.ndarray) -> float:
    return float(xv @ g @ xv) * float(yv @ g @ yv) - float(xv @ g @ yv) ** 2


def sectional_curvature(m: ChartedMetric, x: Point, xvec: TangentVec, yvec: TangentVec) -> float:
    """Sectional curvature K = R(X,Y,Y,X) / (g(X,X)g(Y,Y) - g(X,Y)^2)."""
    x = np.asarray(x, dtype=float)
    g = metric_at(m, x)
    xv, yv = xvec.comps, yvec.comps
    denom = plane_gram(g, xv, yv)
    if abs(denom) <= 1e-8:
        raise DegeneratePlane("plane spanned by X, Y is degenerate")
    riem = riemann_at(m, x)
    numer = float(g @ riem.apply(xv, yv, yv) @ xv)
    return numer / denom


def signature_at(m: ChartedMetric, x: Point) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of g at x."""
    g = metric_at(m, x)
    eig = np.linalg.eigvalsh(g)
    scale = np.abs(eig).max()
    if scale == 0.0 or np.abs(eig).min() < 1e-10 * scale:
        raise DegenerateMetric("metric matrix is (numerically) degenerate")
    neg = int(np.sum(eig < 0.0))
    return m.dim - neg, neg


def space_form_chart(spec: SpaceFormSpec) -> ChartedMetric:
    """Conformal chart of constant sectional curvature.

    g_ij(x) = eps_i delta_ij / F(x)^2 with F(x) = 1 + (c/4) sum_k eps_k x_k^2
    and eps_k = -1 for the first ``index`` coordinates, +1 otherwise.  The
    domain is {F > 0.05}.  Analytic first and second derivatives are
    supplied, and constant curvature is a *validated* property: see
    ``validate_space_form``.
    """
    n, nu, c = spec.dim, spec.index, float(spec.curvature)
    if n < 2 or not 0 <= nu <= n:
        raise ValueError(f"invalid space form spec {spec}")
    signs = np.array([-1.0] * nu + [1.0] * (n - nu))
    eps_diag = np.diag(signs)

    def conf(x):
        return 1.0 + 0.25 * c * float(signs @ (x * x))

    def metric_fn(x):
        return eps_diag / conf(x) ** 2

    def deriv1_fn(x):
        f = conf(x)
        df = 0.5 * c * signs * x  # d_k F
        return np.einsum("k,ij->kij", -2.0 * df / f**3, eps_diag)

    def deriv2_fn(x):
        f = conf(x)
        df = 0.5 * c * signs * x
        ddf = 0.5 * c * np.diag(signs)  # d_k d_l F
        coef = 6.0 * np.outer(df, df) / f**4 - 2.0 * ddf / f**3
        return np.einsum("kl,ij->klij", coef, eps_diag)

    return ChartedMetric(
        dim=n,
        index=nu,
        metric_fn=metric_fn,
        deriv1_fn=deriv1_fn,
        deriv2_fn=deriv2_fn,
        domain_fn=lambda x: conf(x) > 0.05,
        locally_symmetric=True,
        name=f"space_form(n={n},nu={nu},c={c:g})",
    )


def validate_space_form(
    m: ChartedMetric,
    spec: SpaceFormSpec,
    rng: np.random.Generator,
    num_points: int = 10,
    planes_per_point: int = 2,
) -> float:
    """Max |K - c| over sampled nondegenerate planes; raises if above 1e-8."""
    from .sampling import sample_domain_point, sample_tangent_plane

    worst = 0.0
    for _ in range(num_points):
        x = sample_domain_point(m, rng)
        for _ in range(planes_per_point):
            xv, yv = sample_tangent_plane(m, x, rng)
            dev = abs(sectional_curvature(m, x, xv, yv) - spec.curvature)
            worst = max(worst, dev)
    if worst > 1e-8:
        raise DegenerateMetric(
            f"space form validation failed: max |K - c| = {worst:.3e} for {spec}"
        )
    return worst
