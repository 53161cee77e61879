"""Exact rational directions, lattice-adapted orthogonal frames, and the moving-frame matrix.

All lattice arithmetic is done with `fractions.Fraction` (always lowest terms,
positive denominator); floating point only enters when building the numeric
frame matrix R or measuring angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotInLattice, ToleranceUnreachable


def _gcd_fractions(values):
    """gcd of a collection of Fractions: gcd of numerators over lcm of denominators."""
    num = 0
    den = 1
    for v in values:
        if v == 0:
            continue
        num = math.gcd(num, abs(v.numerator))
        den = den * v.denominator // math.gcd(den, v.denominator)
    if num == 0:
        raise ValueError("gcd of all-zero collection")
    return Fraction(num, den)


@dataclass(frozen=True)
class RationalDirection:
    """A point of Q^N on the unit sphere; unit norm holds exactly."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) < 1:
            raise ValueError("direction needs at least one coordinate")
        if sum(c * c for c in coords) != 1:
            raise ValueError("coordinates do not lie exactly on the unit sphere")

    @property
    def dimension(self):
        return len(self.coords)

    def as_float(self):
        return np.array([float(c) for c in self.coords])


@dataclass(frozen=True)
class SqrtPeriod:
    """Exact period of the form ratio / sqrt(radicand), both rational."""

    ratio: Fraction
    radicand: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.ratio <= 0 or self.radicand <= 0:
            raise ValueError("period components must be positive")

    def value(self):
        return float(self.ratio) / math.sqrt(float(self.radicand))

    def squared(self):
        return self.ratio * self.ratio / self.radicand


@dataclass(frozen=True)
class OrthogonalFrame:
    """Orthogonal basis adapted to a rational direction.

    `beta` holds the unnormalized Gram-Schmidt vectors restricted to the active
    coordinates; `basis` embeds them back to R^N followed by the canonical
    vectors of the inactive coordinates, so `basis[0]` is the direction itself.
    """

    dimension: int
    active: tuple
    inactive: tuple
    beta: tuple          # d vectors of length d (Fractions)
    norms_sq: tuple      # squared norms of every basis vector (Fractions)
    basis: tuple         # N vectors of length N (Fractions)

    @property
    def d(self):
        return len(self.active)

    def basis_float(self):
        return np.array([[float(c) for c in v] for v in self.basis])


@dataclass(frozen=True)
class LatticeDecomposition:
    """Canonical gcd constants and periods, plus the paper-formula periods."""

    g: tuple             # Fractions, one per basis vector
    tau: tuple           # SqrtPeriod, canonical: g_i / ||beta_i||
    tau_paper: tuple     # SqrtPeriod, from the appendix closed forms

    def tau_values(self):
        return np.array([t.value() for t in self.tau])


@dataclass(frozen=True)
class FrameMatrix:
    """Numeric orthogonal frame: first column of R is the propagation direction."""

    R: np.ndarray
    hatR: np.ndarray
    y_periods: np.ndarray | None

    @property
    def dimension(self):
        return self.R.shape[0]

    @property
    def e(self):
        return self.R[:, 0]


def orthogonal_basis(zeta: RationalDirection) -> OrthogonalFrame:
    """Build the exact orthogonal frame whose first vector is `zeta`.

    Axis directions bypass Gram-Schmidt (permuted canonical frame); two active
    coordinates use the quarter-turn vector (-b2, b1); three or more use the
    closed-form Gram-Schmidt vectors on {beta_1, e_1, ..., e_{d-1}}.
    """
    n = zeta.dimension
    active = tuple(i for i, c in enumerate(zeta.coords) if c != 0)
    inactive = tuple(i for i, c in enumerate(zeta.coords) if c == 0)
    b = [zeta.coords[i] for i in active]
    d = len(active)

    beta = [tuple(b)]
    if d >= 2:
        if d == 2:
            beta.append((-b[1], b[0]))
        else:
            # suffix sums S[l] = sum_{i=l}^{d} b_i^2 with 1-based l
            suffix = [Fraction(0)] * (d + 2)
            for i in range(d, 0, -1):
                suffix[i] = suffix[i + 1] + b[i - 1] * b[i - 1]
            for l in range(2, d + 1):
                s_prev = suffix[l - 1]
                v = [Fraction(0)] * (d)
                v[l - 2] = suffix[l] / s_prev
                for j in range(l - 1, d):
                    v[j] = -b[l - 2] * b[j] / s_prev
                beta.append(tuple(v))

    norms_sq = [sum(c * c for c in v) for v in beta]

    for i in range(len(beta)):
        for j in range(i + 1, len(beta)):
            if sum(beta[i][k] * beta[j][k] for k in range(d)) != 0:
                raise AssertionError("Gram-Schmidt vectors not exactly orthogonal")

    basis = []
    for v in beta:
        full = [Fraction(0)] * n
        for idx, c in zip(active, v):
            full[idx] = c
        basis.append(tuple(full))
    for l in inactive:
        full = [Fraction(0)] * n
        full[l] = Fraction(1)
        basis.append(tuple(full))
        norms_sq.append(Fraction(1))

    return OrthogonalFrame(
        dimension=n,
        active=active,
        inactive=inactive,
        beta=tuple(beta),
        norms_sq=tuple(norms_sq),
        basis=tuple(basis),
    )


def _paper_tau_formulas(frame: OrthogonalFrame):
    """Periods from the appendix closed forms, in the unit-basis normalization.

    The closed forms multiply the unnormalized beta_i, so the unit-vector
    period is formula * ||beta_i||, stored exactly as SqrtPeriod.
    """
    d = frame.d
    b = frame.beta[0]
    if d == 1:
        formulas = [Fraction(1)]
    elif d == 2:
        # quarter-turn branch: both periods are 1/|n1*n2| (the second vector is unit)
        t = Fraction(1, abs(b[0].denominator * b[1].denominator))
        formulas = [t, t]
    else:
        n_abs = [c.denominator for c in b]
        m_abs = [abs(c.numerator) for c in b]
        prod_all = math.prod(n_abs)
        formulas = [Fraction(1, prod_all)]
        formulas.append(
            Fraction(1, (n_abs[0] ** 2 - m_abs[0] ** 2) * math.prod(n_abs[1:]))
        )
        suffix = [Fraction(0)] * (d + 2)
        for i in range(d, 0, -1):
            suffix[i] = suffix[i + 1] + b[i - 1] * b[i - 1]
        for l in range(3, d):
            prod_sq = math.prod(n_abs[l - 1:]) ** 2
            formulas.append(Fraction(1, 1) / (n_abs[l - 2] * suffix[l] * prod_sq))
        formulas.append(Fraction(1, m_abs[d - 1] * n_abs[d - 2]))

    out = []
    for formula, nsq in zip(formulas, frame.norms_sq[:d]):
        out.append(SqrtPeriod(formula * nsq, nsq))
    for _ in frame.inactive:
        out.append(SqrtPeriod(Fraction(1), Fraction(1)))
    return tuple(out)


def lattice_periods(frame: OrthogonalFrame) -> LatticeDecomposition:
    """Canonical periods g_i/||beta_i|| with g_i = gcd_j (e_j . beta_i).

    Also evaluates the appendix period formulas and checks the divisibility
    invariant: tau_paper_i * ||beta_i|| divides g_i with integer quotient.
    """
    g = []
    tau = []
    for v, nsq in zip(frame.basis, frame.norms_sq):
        gi = _gcd_fractions(v)
        g.append(gi)
        tau.append(SqrtPeriod(gi, nsq))

    tau_paper = _paper_tau_formulas(frame)
    for gi, tp in zip(g, tau_paper):
        quotient = gi / tp.ratio
        if quotient.denominator != 1 or quotient <= 0:
            raise AssertionError(
                "paper period does not divide the canonical gcd constant"
            )
    return LatticeDecomposition(g=tuple(g), tau=tuple(tau), tau_paper=tau_paper)


def decompose_integer_vector(k, frame: OrthogonalFrame, periods: LatticeDecomposition):
    """Integer coefficients p with k = sum_i tau_i p_i zeta_i, exactly.

    p_i = (k . beta_i) / g_i; any non-integral p_i raises NotInLattice (a bug
    by the lattice lemma). The reconstruction identity is verified in exact
    rational arithmetic before returning.
    """
    k = [int(x) for x in k]
    if len(k) != frame.dimension:
        raise ValueError("vector dimension does not match the frame")
    p = []
    for v, gi in zip(frame.basis, periods.g):
        proj = sum(Fraction(kj) * vj for kj, vj in zip(k, v))
        coeff = proj / gi
        if coeff.denominator != 1:
            raise NotInLattice(f"non-integral coefficient {coeff} for k={k}")
        p.append(int(coeff))

    recon = [Fraction(0)] * frame.dimension
    for pi, gi, nsq, v in zip(p, periods.g, frame.norms_sq, frame.basis):
        w = pi * gi / nsq
        for j in range(frame.dimension):
            recon[j] += w * v[j]
    if any(r != kj for r, kj in zip(recon, k)):
        raise NotInLattice(f"exact reconstruction failed for k={k}")
    return np.array(p, dtype=object)


def _angle_between(u, v):
    """Angle via the chord length; accurate near zero where acos floors out."""
    chord = np.linalg.norm(np.asarray(u, dtype=float) - np.asarray(v, dtype=float))
    return 2.0 * math.asin(min(1.0, chord / 2.0))


def best_rational_direction(e, max_denominator):
    """Best stereographic/continued-fraction rational direction under the cap.

    Projects from the pole opposite the dominant coordinate, rationalizes each
    projected coordinate by continued fractions over a nested ladder of
    denominator caps, and maps back (exactly rational). Returns (direction,
    angle); the achieved angle is nonincreasing in max_denominator.
    """
    e = np.asarray(e, dtype=float)
    n = e.size
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("input direction must be a unit vector")
    if n == 1:
        zeta = RationalDirection((Fraction(1 if e[0] > 0 else -1),))
        return zeta, 0.0

    j = int(np.argmax(np.abs(e)))
    s = 1 if e[j] >= 0 else -1
    f = e.copy()
    f[j] *= s
    others = [i for i in range(n) if i != j]
    u = f[others] / (1.0 + f[j])

    caps = []
    q = 1
    while q < max_denominator:
        caps.append(q)
        q *= 2
    caps.append(max_denominator)

    best = None
    best_angle = math.inf
    for cap in caps:
        u_rat = [Fraction(x).limit_denominator(cap) for x in u]
        r2 = sum(x * x for x in u_rat)
        denom = 1 + r2
        coords = [Fraction(0)] * n
        coords[j] = s * (1 - r2) / denom
        for idx, x in zip(others, u_rat):
            coords[idx] = 2 * x / denom
        zeta = RationalDirection(tuple(coords))
        angle = _angle_between(zeta.as_float(), e)
        if angle < best_angle:
            best_angle = angle
            best = zeta
    return best, best_angle


def rationalize_direction(e, angle_tol, max_denominator=10**6) -> RationalDirection:
    """Rational unit direction within `angle_tol` of the float unit vector `e`."""
    if angle_tol <= 0:
        raise ValueError("angle_tol must be positive")
    zeta, angle = best_rational_direction(e, max_denominator)
    if angle > angle_tol:
        raise ToleranceUnreachable(
            f"best angle {angle:.3e} exceeds tolerance {angle_tol:.3e} "
            f"with denominators <= {max_denominator}",
            best_angle=angle,
            best_direction=zeta,
        )
    return zeta


def random_rational_direction(rng, dimension, max_q=20) -> RationalDirection:
    """Seeded random rational sphere point via inverse stereographic projection."""
    if dimension == 1:
        return RationalDirection((Fraction(rng.choice([-1, 1])),))
    u = [
        Fraction(int(rng.integers(-max_q, max_q + 1)), int(rng.integers(1, max_q + 1)))
        for _ in range(dimension - 1)
    ]
    r2 = sum(x * x for x in u)
    denom = 1 + r2
    coords = [(1 - r2) / denom] + [2 * x / denom for x in u]
    perm = rng.permutation(dimension)
    return RationalDirection(tuple(coords[int(i)] for i in perm))


def moving_frame(e, frame: OrthogonalFrame | None = None) -> FrameMatrix:
    """Numeric orthogonal matrix R with Re_1 = e, plus hatR and the y periods.

    With a frame, columns are the normalized frame vectors (their first must
    match `e` to 1e-12) and y_periods comes from the canonical lattice periods.
    Without one, the columns complete e by Gram-Schmidt over the canonical
    basis and y_periods is None.
    """
    e = np.asarray(e, dtype=float)
    n = e.size
    if frame is not None:
        if frame.dimension != n:
            raise ValueError("frame dimension does not match the direction")
        basis = frame.basis_float()
        norms = np.sqrt(np.array([float(q) for q in frame.norms_sq]))
        cols = basis / norms[:, None]
        if np.max(np.abs(cols[0] - e)) > 1e-12:
            raise ValueError("frame direction does not match e")
        R = cols.T.copy()
        R[:, 0] = e
        periods = lattice_periods(frame)
        y_periods = periods.tau_values()[1:]
    else:
        cols = [e / np.linalg.norm(e)]
        for i in range(n):
            v = np.zeros(n)
            v[i] = 1.0
            for c in cols:
                v -= np.dot(v, c) * c
            norm = np.linalg.norm(v)
            if norm > 1e-8:
                cols.append(v / norm)
            if len(cols) == n:
                break
        R = np.column_stack(cols)
        R[:, 0] = e
        y_periods = None

    ortho_defect = np.max(np.abs(R.T @ R - np.eye(n)))
    if ortho_defect > 1e-12:
        raise AssertionError(f"frame matrix not orthonormal: defect {ortho_defect:.2e}")
    hatR = R[:, 1:].T.copy()
    return FrameMatrix(R=R, hatR=hatR, y_periods=y_periods)
