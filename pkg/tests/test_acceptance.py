"""Acceptance criteria, one test per criterion, each printing a verdict line.

The configuration matrix is n in {2, 3}, nu in {0, 1}, eps in {+1, -1 where
nu >= 1}, c in {0, 1, -1, 2, -3 + 2 sqrt2, 2 + sqrt5}.

Two known geometric facts make parts of criteria 1 and 3 fail as stated,
and the corresponding assertions are kept faithful rather than weakened:
for timelike fibers (eps = -1) the computed exterior derivative satisfies
d eta = eps g_cm(., phi .), so the strict axiom fails by a sign, and neither
Sasakian characterization holds at c = -3 +- 2 sqrt2 (the normality tensor
vanishes exactly at c = eps instead).  See the test bodies for the measured
values.
"""

import json
import subprocess
import sys

import numpy as np

from sasakigeo.contact import (
    KappaMu,
    check_contact_axioms,
    contact_data_at,
    h_at,
    k_contact_residual,
    kappa_mu_for_space_form,
    kappa_mu_residual,
    phi_sectional,
    sasakian_residual,
)
from sasakigeo.manifold import SpaceFormSpec, space_form_chart, validate_space_form
from sasakigeo.oracle import (
    fd_lie_bracket,
    gauss_curvature_oracle,
    lift_field_fn,
    sasaki_metric_fn,
    sb_lift_field_fn,
    sb_nabla_via_ambient,
    _embed_induced,
)
from sasakigeo.sampling import (
    rng_for,
    sample_domain_point,
    sample_ker_eta_vec,
    sample_sb_point,
    sample_sb_vec,
)
from sasakigeo.sphere import frame_at, frame_gram, sb_bracket, sb_curvature, sb_nabla
from sasakigeo.suites import SQRT5, SQRT8
from sasakigeo.tangent import TMPoint, lift_bracket, to_induced_coords

C_GRID = [0.0, 1.0, -1.0, 2.0, -3.0 + SQRT8, 2.0 + SQRT5]


def matrix():
    for n in (2, 3):
        for nu in (0, 1):
            for eps in (1, -1):
                if eps == -1 and nu == 0:
                    continue
                for c in C_GRID:
                    yield n, nu, c, eps


def chart_for(n, nu, c, seed=0):
    spec = SpaceFormSpec(n, nu, c)
    m = space_form_chart(spec)
    validate_space_form(m, spec, np.random.default_rng(seed), num_points=5)
    return m


def verdict(criterion: int, ok: bool, detail: str) -> None:
    print(f"[criterion {criterion:2d}] {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_structure_axioms():
    """Axioms pass across the matrix: algebraic < 1e-10, FD < 1e-5."""
    failures = []
    for idx, (n, nu, c, eps) in enumerate(matrix()):
        m = chart_for(n, nu, c)
        rng = rng_for(101, idx)
        p = sample_sb_point(m, eps, rng)
        rep = check_contact_axioms(m, p, rng, num_samples=16)
        for chk in rep.checks:
            tol = 1e-5 if "d eta" in chk.name else 1e-10
            if chk.max_residual > tol:
                failures.append(f"(n={n},nu={nu},c={c:.4g},eps={eps:+d}) {chk.name}={chk.max_residual:.2e}")
    ok = not failures
    verdict(1, ok, f"contact axioms across the matrix; {len(failures)} failing check(s)")
    assert ok, failures


def test_criterion_2_kappa_mu_theorem():
    """kappa = c(4 - eps(c+2)), mu = -2c residual < 1e-8; perturbation > 1e-2."""
    worst = 0.0
    worst_pert = np.inf
    for idx, (n, nu, c, eps) in enumerate(matrix()):
        m = chart_for(n, nu, c)
        rng = rng_for(202, idx)
        p = sample_sb_point(m, eps, rng)
        km = kappa_mu_for_space_form(c, eps)
        rep = kappa_mu_residual(m, p, km, rng, num_samples=10)
        worst = max(worst, rep.checks[0].max_residual)
        pert = kappa_mu_residual(m, p, KappaMu(km.kappa + 0.1, km.mu), rng_for(202, idx, 1), num_samples=10)
        worst_pert = min(worst_pert, pert.checks[0].max_residual)
    ok = worst < 1e-8 and worst_pert > 1e-2
    verdict(2, ok, f"(kappa,mu) residual max {worst:.2e}; perturbed min {worst_pert:.2e}")
    assert worst < 1e-8
    assert worst_pert > 1e-2


def test_criterion_3_sasakian_cases():
    """sasakian_residual < 1e-5 at (1, 1) and (-1, -3 +- 2 sqrt2); >= 1e-1 at (1, 0), (1, 2)."""
    def residual(n, nu, c, eps, seed):
        m = chart_for(n, nu, c)
        rng = rng_for(303, seed)
        p = sample_sb_point(m, eps, rng)
        rep = sasakian_residual(m, p, rng, num_samples=12)
        return max(chk.max_residual for chk in rep.checks)

    r_pos = residual(2, 0, 1.0, 1, 0)
    r_neg_a = residual(2, 1, -3.0 + SQRT8, -1, 1)
    r_neg_b = residual(2, 1, -3.0 - SQRT8, -1, 2)
    r_c0 = residual(2, 0, 0.0, 1, 3)
    r_c2 = residual(2, 0, 2.0, 1, 4)
    ok = r_pos < 1e-5 and r_neg_a < 1e-5 and r_neg_b < 1e-5 and r_c0 >= 1e-1 and r_c2 >= 1e-1
    verdict(
        3,
        ok,
        f"Sasakian residuals: (1,1)={r_pos:.2e}, (-1,-3+2r2)={r_neg_a:.2e}, "
        f"(-1,-3-2r2)={r_neg_b:.2e}, (1,0)={r_c0:.2e}, (1,2)={r_c2:.2e}",
    )
    assert r_pos < 1e-5
    assert r_c0 >= 1e-1 and r_c2 >= 1e-1
    assert r_neg_a < 1e-5 and r_neg_b < 1e-5


def test_criterion_4_k_contact_theorem():
    """Both residuals < 1e-5 iff c = eps over c in {-1,0,1,2}; gap 5 at (1, 2)."""
    rows = []
    gap_at_12 = None
    ok = True
    for eps in (1, -1):
        for c in (-1.0, 0.0, 1.0, 2.0):
            nu = 0 if eps == 1 else 1
            m = chart_for(2, nu, c)
            rng = rng_for(404, eps + 2, int(c) + 2)
            points = [sample_sb_point(m, eps, rng) for _ in range(2)]
            rep = k_contact_residual(m, points, rng, samples_per_point=6)
            both_small = all(chk.max_residual < 1e-5 for chk in rep.checks)
            expected = c == eps
            rows.append((eps, c, both_small, expected))
            ok = ok and (both_small == expected)
            if eps == 1 and c == 2.0:
                gap_at_12 = [chk for chk in rep.checks if chk.name.startswith("K(xi")][0].max_residual
    gap_ok = abs(gap_at_12 - 5.0) < 0.01
    verdict(4, ok and gap_ok, f"K-contact iff c = eps over the grid; plane gap at (1, 2) = {gap_at_12:.4f}")
    assert ok, rows
    assert gap_ok


def test_criterion_5_phi_sectional_theorem():
    """At eps=1, c=2+sqrt5: constant 9 + 4 sqrt5 over 50 planes (< 1e-6); c=1 spread > 1e-2."""
    def spread_and_mean(c):
        m = chart_for(3, 0, c)
        rng = rng_for(505, int(c * 1000))
        vals = []
        while len(vals) < 50:
            p = sample_sb_point(m, 1, rng)
            a = sample_ker_eta_vec(m, p, rng)
            data = contact_data_at(m, p)
            phia = data.phi(a)
            den = data.gcm(a, a) * data.gcm(phia, phia) - data.gcm(a, phia) ** 2
            if abs(den) <= 1e-4:
                continue
            vals.append(phi_sectional(m, p, a))
        return max(vals) - min(vals), float(np.mean(vals))

    spread_magic, mean_magic = spread_and_mean(2.0 + SQRT5)
    spread_c1, _ = spread_and_mean(1.0)
    value_ok = abs(mean_magic - (9.0 + 4.0 * SQRT5)) < 1e-6
    ok = spread_magic < 1e-6 and value_ok and spread_c1 > 1e-2
    verdict(
        5,
        ok,
        f"phi-sectional at c=2+sqrt5: spread {spread_magic:.2e}, mean {mean_magic:.6f}; "
        f"spread at c=1: {spread_c1:.2e}",
    )
    assert spread_magic < 1e-6
    assert value_ok
    assert spread_c1 > 1e-2


def test_criterion_6_h_eigenvalues():
    """h eigenvalues 2 - eps(1+c) and eps(c-1), each multiplicity n-1, to 1e-9; h(xi) = 0."""
    worst = 0.0
    worst_xi = 0.0
    for idx, (n, nu, c, eps) in enumerate(matrix()):
        m = chart_for(n, nu, c)
        rng = rng_for(606, idx)
        p = sample_sb_point(m, eps, rng)
        hop = h_at(m, p)
        expected = np.sort([2.0 - eps * (1.0 + c)] * (n - 1) + [eps * (c - 1.0)] * (n - 1) + [0.0])
        worst = max(worst, float(np.abs(hop.eigenvalues() - expected).max()))
        data = contact_data_at(m, p)
        worst_xi = max(worst_xi, float(np.abs(hop.apply(data.xi).comps()).max()))
    ok = worst < 1e-9 and worst_xi < 1e-12
    verdict(6, ok, f"h eigenvalue max deviation {worst:.2e}; |h(xi)| max {worst_xi:.2e}")
    assert worst < 1e-9
    assert worst_xi < 1e-12


def test_criterion_7_oracle_equivalence():
    """sb_curvature vs Gauss oracle < 1e-5 over 100 samples/config;
    sb_nabla vs projected ambient derivative < 1e-9."""
    worst_curv = 0.0
    worst_nab = 0.0
    for idx, (n, nu, c, eps) in enumerate(matrix()):
        m = chart_for(n, nu, c)
        rng = rng_for(707, idx)
        for _ in range(10):
            p = sample_sb_point(m, eps, rng)
            for _ in range(10):
                a, b, cv = (sample_sb_vec(m, p, rng) for _ in range(3))
                d = np.abs((sb_curvature(m, p, a, b, cv) - gauss_curvature_oracle(m, p, a, b, cv)).comps()).max()
                worst_curv = max(worst_curv, float(d))
            for kx, ky in [("h", "h"), ("h", "t"), ("t", "h"), ("t", "t")]:
                xc, yc = rng.normal(size=n), rng.normal(size=n)
                d = np.abs(
                    (sb_nabla(m, xc, yc, kx, ky, p) - sb_nabla_via_ambient(m, xc, yc, kx, ky, p)).comps()
                ).max()
                worst_nab = max(worst_nab, float(d))
    ok = worst_curv < 1e-5 and worst_nab < 1e-9
    verdict(7, ok, f"curvature vs oracle max {worst_curv:.2e}; connection vs projection max {worst_nab:.2e}")
    assert worst_curv < 1e-5
    assert worst_nab < 1e-9


def test_criterion_8_bracket_identities():
    """Closed bracket formulas match the FD Lie bracket to 1e-5."""
    worst = 0.0
    for idx, (n, nu, c, eps) in enumerate(matrix()):
        m = chart_for(n, nu, c)
        rng = rng_for(808, idx)
        p = sample_sb_point(m, eps, rng)
        z0 = np.concatenate([p.x, p.u])
        a1 = rng.normal(size=(n, n))
        a2 = rng.normal(size=(n, n))
        xf = lambda x, a=a1: a @ x + a[0]
        yf = lambda x, a=a2: a @ x + a[1]
        at = TMPoint(p.x, p.u)
        for kx, ky in [("h", "h"), ("h", "v"), ("v", "h"), ("v", "v")]:
            closed = to_induced_coords(m, lift_bracket(m, xf, yf, kx, ky, at))
            fd = fd_lie_bracket(lift_field_fn(m, xf, kx), lift_field_fn(m, yf, ky), z0)
            worst = max(worst, float(np.abs(closed - fd).max()))
        for kx, ky in [("h", "h"), ("h", "t"), ("t", "h"), ("t", "t")]:
            closed = _embed_induced(m, sb_bracket(m, xf, yf, kx, ky, p))
            fd = fd_lie_bracket(
                sb_lift_field_fn(m, xf, kx, eps), sb_lift_field_fn(m, yf, ky, eps), z0
            )
            worst = max(worst, float(np.abs(closed - fd).max()))
    ok = worst < 1e-5
    verdict(8, ok, f"bracket identities vs FD Lie bracket, max residual {worst:.2e}")
    assert ok


def test_criterion_9_signatures():
    """Index of Tg is 2 nu; index of the induced metric is 2 nu - (eps = -1)."""
    ok = True
    detail = []
    for n, nu in [(2, 0), (2, 1), (3, 0), (3, 1)]:
        m = chart_for(n, nu, 1.0)
        tg = sasaki_metric_fn(m)
        rng = rng_for(909, n, nu)
        for i in range(10):
            x = sample_domain_point(m, rng)
            z = np.concatenate([x, rng.normal(size=n)])
            neg = int((np.linalg.eigvalsh(tg(z)) < 0).sum())
            if neg != 2 * nu:
                ok = False
                detail.append(f"Tg index {neg} != {2 * nu} at (n={n},nu={nu})")
        for eps in (1, -1):
            if eps == -1 and nu == 0:
                continue
            p = sample_sb_point(m, eps, rng)
            gram = frame_gram(m, frame_at(m, p))
            neg = int((np.diag(gram) < 0).sum())
            expected = 2 * nu - (1 if eps == -1 else 0)
            if neg != expected:
                ok = False
                detail.append(f"gbar index {neg} != {expected} at (n={n},nu={nu},eps={eps})")
    verdict(9, ok, "Sasaki index 2nu and induced index 2nu - (eps=-1) by eigenvalue count")
    assert ok, detail


def test_criterion_10_determinism():
    """Two runs of `verify all --seed 42` agree byte-for-byte minus runtime."""
    cmd = [sys.executable, "-m", "sasakigeo", "all", "--seed", "42"]
    runs = [subprocess.run(cmd, capture_output=True, text=True, check=False) for _ in range(2)]

    def strip_runtime(text):
        return "\n".join(ln for ln in text.splitlines() if "runtime_ms" not in ln)

    same = strip_runtime(runs[0].stdout) == strip_runtime(runs[1].stdout)
    parsed = json.loads(runs[0].stdout)
    verdict(10, same, f"verify all determinism; report rows {len(parsed['checks'])}")
    assert same
    assert runs[0].returncode == runs[1].returncode
