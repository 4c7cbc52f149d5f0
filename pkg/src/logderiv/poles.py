"""Pole configurations on the unit circle and their level function.

A configuration of n points z_k = exp(i*theta_k) on the unit circle
determines

    g(z) = sum_k 1/(z - z_k),

the logarithmic derivative of any polynomial whose zeros are the z_k.
On the segment [-1, 1] the central object is the level function

    F(x) = Re(x * g(x)) = sum_k (x^2 - a_k x) / (x^2 - 2 a_k x + 1),

with a_k = cos(theta_k).  Expanding each term shows the identity

    F(x) = (n - sum_k P(z_k; x)) / 2,

where P(v; x) = (1 - x^2) / (1 - 2 x Re(v) + x^2) is the Poisson kernel,
nonnegative on [-1, 1].  Real poles z_k = +1 or -1 reduce to x/(x -+ 1)
after cancelling a linear factor.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, PoleHit

TWO_PI = 2.0 * math.pi

# Compensated summation kicks in above this many poles.
_FSUM_THRESHOLD = 64

# Angles read from files are snapped to the real axis within this tolerance.
SNAP_TOL = 1e-14


def _normalize_angle(theta: float) -> float:
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t == TWO_PI:
        t = 0.0
    return t + 0.0  # clears the sign of -0.0


@dataclass(frozen=True)
class PoleSet:
    """Multiset of unit-circle poles, stored as angles in [0, 2*pi).

    Angles are the source of truth; cartesian coordinates are derived on
    demand so that |z_k| = 1 holds exactly by construction.  Duplicates
    are allowed and count with multiplicity.
    """

    angles: Tuple[float, ...]

    def __post_init__(self):
        if len(self.angles) < 1:
            raise DomainError("a pole set needs at least one pole")
        norm = tuple(_normalize_angle(float(t)) for t in self.angles)
        for t in norm:
            if not math.isfinite(t):
                raise DomainError(f"non-finite angle {t}")
        object.__setattr__(self, "angles", norm)

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def points(self) -> np.ndarray:
        """Pole locations as complex numbers."""
        th = np.asarray(self.angles)
        return np.cos(th) + 1j * np.sin(th)

    @property
    def real_pole_indices(self) -> Tuple[int, ...]:
        """Indices of poles lying exactly at +1 (angle 0) or -1 (angle pi)."""
        return tuple(k for k, t in enumerate(self.angles) if t == 0.0 or t == math.pi)

    def rotate(self, phi: float) -> "PoleSet":
        return PoleSet(tuple(t + phi for t in self.angles))

    def conjugate(self) -> "PoleSet":
        return PoleSet(tuple(-t for t in self.angles))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "angles": list(self.angles)}, sort_keys=True)

    @staticmethod
    def from_json(text: str, snap_tol: float = SNAP_TOL) -> "PoleSet":
        """Parse {"n": ..., "angles": [...]}, snapping near-real angles.

        Angles within snap_tol of 0, pi or 2*pi are snapped onto the real
        axis so that files produced with limited precision still classify
        real poles deterministically.
        """
        try:
            doc = json.loads(text)
            raw = [float(t) for t in doc["angles"]]
            n = int(doc.get("n", len(raw)))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed pole-set document: {exc}") from exc
        if n != len(raw):
            raise DomainError(f"declared n={n} but {len(raw)} angles given")
        snapped = []
        for t in raw:
            u = _normalize_angle(t)
            if min(u, TWO_PI - u) <= snap_tol:
                u = 0.0
            elif abs(u - math.pi) <= snap_tol:
                u = math.pi
            snapped.append(u)
        return PoleSet(tuple(snapped))


def eval_logderiv(poles: PoleSet, z: complex) -> complex:
    """g(z) = sum_k 1/(z - z_k).  Raises PoleHit when z is a pole."""
    zs = poles.points
    diffs = z - zs
    if np.any(diffs == 0):
        raise PoleHit(f"z={z} coincides with a pole")
    return complex(np.sum(1.0 / diffs))


def poisson_kernel(v_angle: float, x: float) -> float:
    """P(v; x) = (1 - x^2) / (1 - 2 x cos(v) + x^2) for x in [-1, 1].

    The denominator is |x - v|^2 for unit v, so P >= 0 throughout, with
    P(v; +-1) = 0 unless v = +-1 where the kernel is singular.
    """
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"x={x} outside [-1, 1]")
    den = 1.0 - 2.0 * x * math.cos(v_angle) + x * x
    if den == 0.0:
        raise PoleHit(f"kernel singular at x={x}, v_angle={v_angle}")
    return (1.0 - x * x) / den


def _level_terms(angles: Sequence[float], x: float) -> Iterable[float]:
    for t in angles:
        if t == 0.0:
            yield x / (x - 1.0)
        elif t == math.pi:
            yield x / (x + 1.0)
        else:
            a = math.cos(t)
            yield (x * x - a * x) / (x * x - 2.0 * a * x + 1.0)


def eval_level(poles: PoleSet, x: float) -> float:
    """F(x) = Re(x * g(x)) on [-1, 1] via the per-pole rational terms.

    Summation is in index order, switching to compensated accumulation
    above 64 poles.  Raises PoleHit at a real pole's own endpoint.
    """
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"x={x} outside [-1, 1]")
    if x == 1.0 and any(t == 0.0 for t in poles.angles):
        raise PoleHit("x=1 is a pole of the configuration")
    if x == -1.0 and any(t == math.pi for t in poles.angles):
        raise PoleHit("x=-1 is a pole of the configuration")
    terms = _level_terms(poles.angles, x)
    if poles.n > _FSUM_THRESHOLD:
        return math.fsum(terms)
    return sum(terms)


def eval_level_array(poles: PoleSet, xs: np.ndarray) -> np.ndarray:
    """Vectorized F over an array of abscissae.

    Real-pole endpoints produce +-inf instead of raising, which is the
    convenient convention for membership sampling.
    """
    x = np.asarray(xs, dtype=float)
    a = np.cos(np.asarray(poles.angles))
    real_plus = np.asarray([t == 0.0 for t in poles.angles])
    real_minus = np.asarray([t == math.pi for t in poles.angles])
    xx = x[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        generic = (xx * xx - a * xx) / (xx * xx - 2.0 * a * xx + 1.0)
        if real_plus.any():
            generic[..., real_plus] = xx / (xx - 1.0)
        if real_minus.any():
            generic[..., real_minus] = xx / (xx + 1.0)
        out = generic.sum(axis=-1)
    return out


@dataclass(frozen=True)
class RationalLevelFunction:
    """F written over a common denominator, coefficients ascending.

    Conjugate poles share one quadratic factor, so cos-equal poles are
    grouped (cluster tolerance 1e-14) and each real pole contributes a
    single linear factor x -+ 1 after cancellation.  Degrees stay <= 2n.
    """

    numerator: Tuple[float, ...]
    denominator: Tuple[float, ...]
    n: int
    real_pole_flags: Tuple[int, ...]

    def eval(self, x: float) -> float:
        num = npoly.polyval(x, np.asarray(self.numerator))
        den = npoly.polyval(x, np.asarray(self.denominator))
        return num / den


def _grouped_cosines(angles: Sequence[float]) -> list:
    """Cluster cos(theta_k) of the non-real poles; gap tolerance 1e-14."""
    vals = sorted(math.cos(t) for t in angles if t != 0.0 and t != math.pi)
    groups = []
    for a in vals:
        if groups and a - groups[-1][-1] <= 1e-14:
            groups[-1].append(a)
        else:
            groups.append([a])
    return [(math.fsum(g) / len(g), len(g)) for g in groups]


def to_rational(poles: PoleSet) -> RationalLevelFunction:
    """Assemble F = N/D from the grouped per-pole factors."""
    plus = sum(1 for t in poles.angles if t == 0.0)
    minus = sum(1 for t in poles.angles if t == math.pi)
    groups = _grouped_cosines(poles.angles)

    # (numerator factor, denominator factor, multiplicity) per group
    parts = []
    if plus:
        parts.append((np.array([0.0, 1.0]), np.array([-1.0, 1.0]), plus))
    if minus:
        parts.append((np.array([0.0, 1.0]), np.array([1.0, 1.0]), minus))
    for a, count in groups:
        parts.append((np.array([0.0, -a, 1.0]), np.array([1.0, -2.0 * a, 1.0]), count))

    den = np.array([1.0])
    for _, q, _ in parts:
        den = npoly.polymul(den, q)

    num = np.zeros(1)
    for i, (pnum, _, count) in enumerate(parts):
        term = pnum * count
        for j, (_, q, _) in enumerate(parts):
            if j != i:
                term = npoly.polymul(term, q)
        num = npoly.polyadd(num, term)

    return RationalLevelFunction(
        numerator=tuple(np.atleast_1d(num).tolist()),
        denominator=tuple(np.atleast_1d(den).tolist()),
        n=poles.n,
        real_pole_flags=poles.real_pole_indices,
    )


def poles_digest(poles: PoleSet) -> str:
    """Short stable hash of the configuration, for CSV rows."""
    import hashlib

    payload = ",".join(repr(t) for t in poles.angles).encode()
    return hashlib.sha256(payload).hexdigest()[:12]


def eval_abs_logderiv_array(points: np.ndarray, pole_points: np.ndarray) -> np.ndarray:
    """|g| at an array of complex points; inf where a point hits a pole."""
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = 1.0 / (points[..., None] - pole_points)
        s = terms.sum(axis=-1)
    return np.abs(s)
