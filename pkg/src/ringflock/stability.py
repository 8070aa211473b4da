"""Asymptotic-stability verdicts for the ring flock.

Stability here means: the coherent double zero is the only eigenvalue off
the open left half plane.  Three routes to a verdict are provided and cross
checked against each other by the test suite:

* the closed-form gate on nearest-neighbor weights (symmetric position row,
  both gain/center products negative), which decides stability for every n
  at once;
* the four Routh-Hurwitz inequalities applied per mode to the quadratic
  pencil with complex coefficients;
* the spectral verdict, which evaluates every branch eigenvalue at one n.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GateWouldPass, NotNearestNeighbor, ZeroMode
from .model import NEAREST_NEIGHBORHOOD, FlockParams
from .spectral import eigenvalue_arrays, laplacian_eigenvalues, mode_range

#: Relative half-width of the marginal band around Re(nu) = 0.
MARGINAL_BAND = 1e-10

#: Relative tolerance for detecting a symmetric position row.
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class StabilityReport:
    """Combined verdict at one ring size.

    closed_form_stable is None when the neighborhood is not nearest-neighbor
    (the gate is only defined there).  witness is the mode realizing
    max_real_part, present exactly when the spectrum is not strictly stable;
    rh_failures lists (m, condition index 1..4) for every violated
    Routh-Hurwitz inequality.
    """

    n: int
    closed_form_stable: Optional[bool]
    spectral_stable: bool
    marginal: bool
    max_real_part: float
    witness: Optional[tuple]
    rh_failures: list


def stable_for_all_n(params: FlockParams) -> bool:
    """Closed-form gate: stable at every ring size, or not.

    True iff the position weights are symmetric (rho_x[-1] = rho_x[+1] to
    relative tolerance), g_x * rho_x[0] < 0, and g_v * rho_v[0] < 0.

    Raises:
        NotNearestNeighbor: neighborhood is not {-1, 0, +1}.
    """
    if set(params.neighborhood) != set(NEAREST_NEIGHBORHOOD):
        raise NotNearestNeighbor(f"gate needs offsets {{-1,0,1}}, got {params.neighborhood}")
    rx = params.rho_x
    scale = max(abs(w) for w in rx.values()) or 1.0
    symmetric = abs(rx.get(1, 0.0) - rx.get(-1, 0.0)) <= SYMMETRY_TOL * scale
    return (symmetric
            and params.g_x * rx.get(0, 0.0) < 0.0
            and params.g_v * params.rho_v.get(0, 0.0) < 0.0)


def _rh_conditions(lam_x, lam_v):
    """The four per-mode Routh-Hurwitz inequalities, vectorized."""
    xr, xi = lam_x.real, lam_x.imag
    vr, vi = lam_v.real, lam_v.imag
    c1 = vr < 0.0
    c2 = 2.0 * xr < vr * vr + vi * vi
    c3 = xr * vr + xi * vi > 0.0
    c4 = xr * vr * vr + vr * xi * vi + xi * xi < 0.0
    return c1, c2, c3, c4


def routh_hurwitz(params: FlockParams, m: int):
    """The four stability inequalities evaluated at mode m.

    All four hold iff both branch eigenvalues of the mode lie strictly in
    the left half plane.

    Raises:
        ZeroMode: m = 0 mod n (the coherent mode is excluded by definition).
    """
    if m % params.n == 0:
        raise ZeroMode("mode m=0 carries the coherent double zero")
    lam_x, lam_v = laplacian_eigenvalues(params, m)
    c1, c2, c3, c4 = _rh_conditions(np.asarray(lam_x), np.asarray(lam_v))
    return bool(c1), bool(c2), bool(c3), bool(c4)


def spectral_verdict(params: FlockParams, n: Optional[int] = None) -> StabilityReport:
    """Evaluate every branch eigenvalue at ring size n and classify.

    Strict stability means max Re(nu) over the nonzero modes falls below
    -MARGINAL_BAND * scale; values inside the band are reported as marginal
    rather than stable.  The coherent mode contributes exactly the double
    zero by construction and is excluded from the maximum.
    """
    p = params if n is None else params.with_n(n)
    ms = mode_range(p.n)
    lx, lv, plus, minus, _ = eigenvalue_arrays(p, ms)
    keep = ms != 0

    res = np.concatenate([plus[keep].real, minus[keep].real])
    nus = np.concatenate([plus[keep], minus[keep]])
    scale = max(1.0, float(np.abs(nus).max()))
    band = MARGINAL_BAND * scale

    i = int(np.argmax(res))
    max_re = float(res[i])
    half = res.size // 2
    witness_m = int(ms[keep][i % half])
    witness_branch = "+" if i < half else "-"
    witness_nu = complex(nus[i])

    stable = max_re < -band
    marginal = (not stable) and (max_re < band)

    c1, c2, c3, c4 = _rh_conditions(lx[keep], lv[keep])
    rh_failures = []
    for idx, cond in enumerate((c1, c2, c3, c4), start=1):
        for m_bad in ms[keep][~cond]:
            rh_failures.append((int(m_bad), idx))

    try:
        gate = stable_for_all_n(p)
    except NotNearestNeighbor:
        gate = None

    return StabilityReport(
        n=p.n,
        closed_form_stable=gate,
        spectral_stable=stable,
        marginal=marginal,
        max_real_part=max_re,
        witness=None if stable else (witness_m, witness_branch, witness_nu),
        rh_failures=sorted(rh_failures),
    )


def instability_witness(params: FlockParams, n_max: int = 4096,
                        n_start: int = 8) -> Optional[tuple]:
    """Search growing ring sizes for an eigenvalue with positive real part.

    Ring sizes double from n_start up to n_max (n_max itself is always
    tried).  Returns the first (n, m, nu) with Re(nu) above the marginal
    band, or None when the search is inconclusive; None never means stable.

    Raises:
        GateWouldPass: the closed-form gate already certifies stability.
    """
    if stable_for_all_n(params):
        raise GateWouldPass("parameters pass the closed-form gate; no witness exists")
    n = max(3, n_start)
    while True:
        report = spectral_verdict(params, n)
        if not report.spectral_stable and not report.marginal:
            m, branch, nu = report.witness
            return n, m, nu
        if n >= n_max:
            return None
        n = min(2 * n, n_max)
