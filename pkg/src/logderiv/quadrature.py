"""Adaptive panel quadrature for means of |g| on [-1, 1] and the disk.

The workhorse is a 15-point Gauss-Kronrod pair per panel: the Kronrod
value is kept, |K - G| is the panel error.  Panels carrying the top half
of the global error are bisected each round, and panel sums are reduced
with exact compensated summation in left-to-right panel order, so a
fixed panel tree always reproduces the same bits.

Singularities of |g| sit above the projections cos(theta_k) at height
|sin(theta_k)|; panels within that distance are pre-split geometrically
(ratio 1/2, down to width 1e-13) so a narrow spike cannot slip between
sample points and fake convergence.

A real pole makes the x-integrals diverge for p >= 1; that is detected
structurally, never by overflow.  For p < 1 the endpoint singularity
|x -+ 1|^(-p) is integrable but too steep for any quadrature on the
float grid near the endpoint, so the innermost window is handled by a
second-order closed-form tail instead.

The disk integral of |g| reduces to an angular integral over [0, pi] of
weighted radial means, each of which is again a panel integral; radial
pools for all pending angles are refined together in lockstep batches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .bounds import mean_lower_constant
from .errors import DomainError, ToleranceNotMet
from .poles import PoleSet

# 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
# (Gauss nodes are the odd-indexed entries).
_XGK = np.array([
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993944, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0, 0.2077849550078985, 0.4058451513773972,
    0.5860872354676911, 0.7415311855993944, 0.8648644233597691,
    0.9491079123427585, 0.9914553711208126,
])
_WGK = np.array([
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278, 0.2044329400752989,
    0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299786, 0.0229353220105292,
])
_WG = np.array([
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697,
])

GRADE_MIN_WIDTH = 1e-13
_TAIL_WINDOW = 1e-8


@dataclass(frozen=True)
class MeanSpec:
    """What to integrate: p-th power mean, optionally weighted by |x|^p."""

    p: float
    weighted: bool = False
    rel_tol: float = 1e-8
    max_panels: int = 200_000

    def __post_init__(self):
        if not self.p > 0.0:
            raise DomainError(f"p must be positive, got {self.p}")
        if not 0.0 < self.rel_tol <= 1e-2:
            raise DomainError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol}")
        if self.max_panels < 4:
            raise DomainError("max_panels must be at least 4")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    divergent: bool
    panels: int
    function_evals: int


def _graded_cuts(
    lo: float,
    hi: float,
    breaks: Iterable[float],
    ladders: Iterable[Tuple[float, float, float, int]],
) -> np.ndarray:
    """Cut points: plain breaks plus geometric ladders toward singular points.

    Each ladder is (center, halfwidth, min_width, sides); sides is -1 for
    a one-sided ladder below the center, +1 above, 0 for both.
    """
    pts = {lo, hi}
    for b in breaks:
        if lo < b < hi:
            pts.add(float(b))
    for c, w, mw, sides in ladders:
        if lo < c < hi:
            pts.add(float(c))
        for s in ((-1.0, 1.0) if sides == 0 else (float(sides),)):
            d = float(w)
            while d > mw:
                q = c + s * d
                if lo < q < hi:
                    pts.add(q)
                d *= 0.5
    arr = np.array(sorted(pts))
    keep = np.concatenate(([True], np.diff(arr) > 4e-16))
    return arr[keep]


def _rule(f: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * _XGK
    y = f(x)
    k = h * (y * _WGK).sum(axis=1)
    g = h * (y[:, 1::2] * _WG).sum(axis=1)
    return k, np.abs(k - g)


def _adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    cuts: np.ndarray,
    rel_tol: float,
    max_panels: int,
    abs_floor: float = 0.0,
) -> QuadratureResult:
    a = cuts[:-1].copy()
    b = cuts[1:].copy()
    k, e = _rule(f, a, b)
    evals = 15 * len(a)
    while True:
        order = np.argsort(a, kind="stable")
        value = math.fsum(k[order].tolist())
        err = math.fsum(e[order].tolist())
        target = max(rel_tol * abs(value), abs_floor)
        if err <= target:
            return QuadratureResult(value, err, False, len(a), evals)
        partial = QuadratureResult(value, err, False, len(a), evals)
        if len(a) >= max_panels:
            raise ToleranceNotMet(
                f"panel budget {max_panels} reached with error {err:.3e} > {target:.3e}",
                result=partial,
            )
        splittable = (b - a) > 5e-16 * np.maximum(np.abs(a), np.abs(b)) + 5e-300
        worst = np.lexsort((a, -e))
        cum = np.cumsum(e[worst])
        m = int(np.searchsorted(cum, 0.5 * err)) + 1
        sel = worst[:m]
        sel = sel[splittable[sel]]
        if sel.size == 0:
            raise ToleranceNotMet(
                f"unsplittable panels still carry error {err:.3e} > {target:.3e}",
                result=partial,
            )
        mid = 0.5 * (a[sel] + b[sel])
        new_a = np.concatenate([a[sel], mid])
        new_b = np.concatenate([mid, b[sel]])
        nk, ne = _rule(f, new_a, new_b)
        evals += 15 * len(new_a)
        keep = np.ones(len(a), dtype=bool)
        keep[sel] = False
        a = np.concatenate([a[keep], new_a])
        b = np.concatenate([b[keep], new_b])
        k = np.concatenate([k[keep], nk])
        e = np.concatenate([e[keep], ne])


def _real_pole_tail(
    p: float, weighted: bool, mult: int, other_re_sum: float, w: float
) -> Tuple[float, float]:
    """Closed-form integral of |g|^p (|x|^p) over a width-w endpoint window.

    Near a real pole of multiplicity m the integrand is
    m^p u^(-p) (1 - p u (Re g_rest / m + [weighted])) + O(u^(2-p)),
    u the distance to the endpoint.  Returns (value, error bound).
    """
    lead = mult**p * w ** (1.0 - p) / (1.0 - p)
    corr = mult**p * p * (other_re_sum / mult + (1.0 if weighted else 0.0))
    corr *= w ** (2.0 - p) / (2.0 - p)
    # Quadratic remainder, crude but sufficient at w <= 1e-8.
    err = abs(corr) * w * 4.0 + mult**p * w ** (3.0 - p)
    return lead - corr, err


def lp_mean(poles: PoleSet, spec: MeanSpec) -> QuadratureResult:
    """integral over [-1,1] of |g|^p, optionally weighted by |x|^p."""
    angles = poles.angles
    pts = poles.points
    has_plus = any(t == 0.0 for t in angles)
    has_minus = any(t == math.pi for t in angles)
    if (has_plus or has_minus) and spec.p >= 1.0:
        return QuadratureResult(math.inf, 0.0, True, 0, 0)

    p = spec.p

    def integrand(x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.abs((1.0 / (x[..., None] - pts)).sum(axis=-1)) ** p
        if spec.weighted:
            g = g * np.abs(x) ** p
        return g

    breaks = [0.0]
    ladders: List[Tuple[float, float, float, int]] = []
    for t in angles:
        if t == 0.0 or t == math.pi:
            continue
        c, y = math.cos(t), abs(math.sin(t))
        ladders.append((c, min(y, 2.0), GRADE_MIN_WIDTH, 0))
        breaks.append(c)

    lo, hi = -1.0, 1.0
    tail_value = 0.0
    tail_err = 0.0
    for endpoint, present in ((1.0, has_plus), (-1.0, has_minus)):
        if not present:
            continue
        mult = sum(1 for t in angles if t == (0.0 if endpoint > 0 else math.pi))
        others = [z for z in pts if z != endpoint]
        dmin = min((abs(endpoint - z) for z in others), default=1.0)
        w = max(min(_TAIL_WINDOW, dmin / 16.0), GRADE_MIN_WIDTH)
        # Re 1/(1-z) = 1/2 for every unit z, and likewise at -1, so the
        # first-order coefficient is exactly (n - mult)/2.
        v, err = _real_pole_tail(p, spec.weighted, mult, (poles.n - mult) / 2.0, w)
        tail_value += v
        tail_err += err
        if endpoint > 0:
            hi = 1.0 - w
            ladders.append((hi, 0.5, w / 2.0, -1))
        else:
            lo = -1.0 + w
            ladders.append((lo, 0.5, w / 2.0, +1))

    cuts = _graded_cuts(lo, hi, breaks, ladders)
    core = _adaptive(integrand, cuts, spec.rel_tol, spec.max_panels)
    return QuadratureResult(
        core.value + tail_value,
        core.error_estimate + tail_err,
        False,
        core.panels,
        core.function_evals,
    )


# ---------------------------------------------------------------------------
# Disk area integral via angular slices of weighted radial means.


def _radial_batch(
    thetas: np.ndarray,
    ts: np.ndarray,
    rel_tol: float,
    max_rounds: int = 200,
    panel_cap: int = 400_000,
) -> Tuple[np.ndarray, np.ndarray, int, int]:
    """W(t) = integral over [-1,1] of |r| |g(r e^{it})| dr, batched over t.

    Radial pole projections are cos(theta_k - t) at height
    |sin(theta_k - t)|.  A t that lands exactly on a pole angle would
    make its slice divergent; nodes are interior points of angular
    panels so this cannot happen for honest inputs, but it is guarded
    by a deterministic nudge.
    """
    ts = ts.copy()
    for _ in range(4):
        hit = (np.sin(thetas[None, :] - ts[:, None]) == 0.0).any(axis=1)
        if not hit.any():
            break
        ts[hit] += 4e-13

    m = len(ts)
    u = np.exp(1j * (thetas[None, :] - ts[:, None]))  # (m, n)

    tidx_list: List[np.ndarray] = []
    a_list: List[np.ndarray] = []
    b_list: List[np.ndarray] = []
    for i in range(m):
        ladders = []
        for c, y in zip(u[i].real, np.abs(u[i].imag)):
            ladders.append((c, min(y, 2.0), max(1e-10, y / 8.0), 0))
        cuts = _graded_cuts(-1.0, 1.0, [0.0], ladders)
        tidx_list.append(np.full(len(cuts) - 1, i))
        a_list.append(cuts[:-1])
        b_list.append(cuts[1:])
    tidx = np.concatenate(tidx_list)
    pa = np.concatenate(a_list)
    pb = np.concatenate(b_list)

    def eval_panels(ti, a, b):
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        x = c[:, None] + h[:, None] * _XGK
        with np.errstate(divide="ignore", invalid="ignore"):
            y = np.abs((1.0 / (x[:, :, None] - u[ti][:, None, :])).sum(axis=-1))
        y *= np.abs(x)
        k = h * (y * _WGK).sum(axis=1)
        g = h * (y[:, 1::2] * _WG).sum(axis=1)
        return k, np.abs(k - g)

    def eval_chunked(ti, a, b, chunk=8192):
        ks, es = [], []
        for s in range(0, len(a), chunk):
            k, e = eval_panels(ti[s : s + chunk], a[s : s + chunk], b[s : s + chunk])
            ks.append(k)
            es.append(e)
        return np.concatenate(ks), np.concatenate(es)

    pk, pe = eval_chunked(tidx, pa, pb)
    evals = 15 * len(pa)

    for _ in range(max_rounds):
        val = np.bincount(tidx, weights=pk, minlength=m)
        err = np.bincount(tidx, weights=pe, minlength=m)
        pending = err > rel_tol * np.abs(val)
        if not pending.any():
            return val, err, len(pa), evals
        if len(pa) > panel_cap:
            break
        emax = np.zeros(m)
        np.maximum.at(emax, tidx, pe)
        sel = pending[tidx] & (pe > 0.4 * emax[tidx]) & ((pb - pa) > 1e-15)
        if not sel.any():
            break
        mid = 0.5 * (pa[sel] + pb[sel])
        na = np.concatenate([pa[sel], mid])
        nb = np.concatenate([mid, pb[sel]])
        nt = np.concatenate([tidx[sel], tidx[sel]])
        nk, ne = eval_chunked(nt, na, nb)
        evals += 15 * len(na)
        keep = ~sel
        tidx = np.concatenate([tidx[keep], nt])
        pa = np.concatenate([pa[keep], na])
        pb = np.concatenate([pb[keep], nb])
        pk = np.concatenate([pk[keep], nk])
        pe = np.concatenate([pe[keep], ne])

    val = np.bincount(tidx, weights=pk, minlength=m)
    err = np.bincount(tidx, weights=pe, minlength=m)
    raise ToleranceNotMet(
        "radial slices failed to converge",
        result=QuadratureResult(float(val.sum()), float(err.sum()), False, len(pa), evals),
    )


def area_integral(
    poles: PoleSet,
    rel_tol: float = 1e-6,
    max_panels: int = 4000,
    inner_rel_tol: Optional[float] = None,
) -> QuadratureResult:
    """integral of |g| over the unit disk, always finite.

    Written as the integral over t in [0, pi] of the weighted radial
    mean W(t); W has logarithmic spikes exactly at the pole angles
    (mod pi), which are placed as panel endpoints.
    """
    thetas = np.asarray(poles.angles)
    itol = inner_rel_tol if inner_rel_tol is not None else rel_tol / 5.0

    sing = sorted({math.fmod(t, math.pi) for t in thetas})
    if any(s == 0.0 for s in sing):
        sing.append(math.pi)

    counters = {"evals": 0, "inner_panels": 0}

    def outer_integrand(tmat: np.ndarray) -> np.ndarray:
        vals, _, panels, evals = _radial_batch(thetas, tmat.ravel(), itol)
        counters["evals"] += evals
        counters["inner_panels"] += panels
        return vals.reshape(tmat.shape)

    ladders = []
    edges = [0.0] + sing + [math.pi]
    uniq = sorted(set(edges))
    for s in sing:
        i = uniq.index(s)
        left_gap = s - uniq[i - 1] if i > 0 else 0.0
        right_gap = uniq[i + 1] - s if i + 1 < len(uniq) else 0.0
        gap = max(left_gap, right_gap, 1e-3)
        ladders.append((s, 0.5 * gap, max(1e-6, gap * 2.0**-12), 0))

    cuts = _graded_cuts(0.0, math.pi, sing, ladders)
    core = _adaptive(outer_integrand, cuts, rel_tol, max_panels)
    return QuadratureResult(
        core.value, core.error_estimate, False, core.panels, counters["evals"]
    )


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeanBoundReport:
    """Both p-means of a configuration against the closed-form floor."""

    p: float
    n: int
    unweighted: QuadratureResult
    weighted: QuadratureResult
    lower_bound: float
    ok_unweighted_ge_weighted: bool
    ok_weighted_ge_bound: bool

    @property
    def ok(self) -> bool:
        return self.ok_unweighted_ge_weighted and self.ok_weighted_ge_bound


def check_lp_lower_bound(
    poles: PoleSet, p: float, rel_tol: float = 1e-8, max_panels: int = 200_000
) -> MeanBoundReport:
    """Evaluate unweighted >= weighted >= constant * n^(p-1).

    Divergent integrals count as satisfying their side of the chain.
    Comparisons carry a slack of 10 * rel_tol * bound.
    """
    u = lp_mean(poles, MeanSpec(p=p, weighted=False, rel_tol=rel_tol, max_panels=max_panels))
    w = lp_mean(poles, MeanSpec(p=p, weighted=True, rel_tol=rel_tol, max_panels=max_panels))
    bound = mean_lower_constant(p) * poles.n ** (p - 1.0)
    slack = 10.0 * rel_tol
    ok_uw = u.divergent or (w.divergent is False and u.value >= w.value * (1.0 - slack))
    if u.divergent and w.divergent:
        ok_uw = True
    ok_wb = w.divergent or w.value > bound * (1.0 - slack)
    return MeanBoundReport(
        p=p,
        n=poles.n,
        unweighted=u,
        weighted=w,
        lower_bound=bound,
        ok_unweighted_ge_weighted=ok_uw,
        ok_weighted_ge_bound=ok_wb,
    )


def mean_csv_row(poles: PoleSet, spec: MeanSpec, result: QuadratureResult) -> str:
    """poles_hash, n, p, weighted, value, error, divergent, panels."""
    from .poles import poles_digest

    return ",".join([
        poles_digest(poles),
        str(poles.n),
        repr(spec.p),
        "1" if spec.weighted else "0",
        repr(result.value),
        repr(result.error_estimate),
        "1" if result.divergent else "0",
        str(result.panels),
    ])
