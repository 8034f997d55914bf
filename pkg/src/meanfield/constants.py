"""Scalar limit quantities: diluted costs, their theta -> infinity limits,
rigorous bounds, and the closed-form reference solutions.

The diluted cost has two equivalent integral forms, implemented independently
as a cross-check: a double integral of the survival function over the
half-plane x + y >= 0, and a single integral against the survival function of
an independent pair sum.  Both are evaluated exactly for the piecewise-linear
grid representation (endpoint atoms included), so they agree to rounding and
their common discretization error is the representation's own O(step^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.signal import fftconvolve
from scipy.special import lambertw as _scipy_lambertw
from scipy.special import zeta as _zeta

from .operators import (
    DEFAULT_CELLS,
    FixedPointReport,
    solve_fixed_point,
)
from .survival import ModelParams, SurvivalGrid, from_function

__all__ = [
    "BetaEstimate",
    "EdgeCoverMoments",
    "beta_theta",
    "beta_theta_convolution",
    "pair_sum_survival",
    "density_q",
    "beta_limit",
    "rigorous_bounds",
    "matching_d1_closed_form",
    "matching_d1_q_from_theta",
    "tsp_d1_reference",
    "lambert_w",
    "edgecover_d1",
    "edgecover_d2",
    "erf",
    "DEFAULT_THETA_SCHEDULE",
]

DEFAULT_THETA_SCHEDULE = (2.0, 4.0, 8.0, 16.0, 32.0)

_GL_X, _GL_W = leggauss(12)


@dataclass(frozen=True)
class BetaEstimate:
    """Diluted costs along a theta schedule and the extrapolated limit."""

    problem: str
    d: float
    theta_values: list
    beta_values: list
    beta_limit: float
    extrapolation_gap: float
    q_values: Optional[list] = None


@dataclass(frozen=True)
class EdgeCoverMoments:
    """Zeroth and first moments (A, B) of the edge-cover survival function."""

    A: float
    B: float

    def constraint_residual(self) -> float:
        return self.B - (math.exp(-2 * self.B) / 2 - self.A**2)


# ----------------------------------------------------------------------
# exact cell moments of s^{D-1} against local polynomials
# ----------------------------------------------------------------------

def _poly_moments(c: np.ndarray, h: float, D: float, pmax: int, upper_piece: bool):
    """Moments int s^{D-1} sigma^p ds for p = 0..pmax over one grid piece.

    Lower piece: s in [max(c,0), c+h], sigma = s - c.  Upper piece: s in
    [max(c+h,0), c+2h], sigma = c+2h - s.  Binomial expansion is exact but
    cancels badly once c >> h, where 12-point Gauss-Legendre is ample.
    """
    c = np.asarray(c, dtype=float)
    out = np.zeros((pmax + 1, len(c)))
    top = c + (2 * h if upper_piece else h)
    bot = c + (h if upper_piece else 0.0)
    valid = top > 0
    small = valid & (c <= 8 * h)
    large = valid & ~small
    if small.any():
        cs = c[small]
        a = np.maximum(bot[small] if upper_piece else np.maximum(cs, 0.0), 0.0)
        b = top[small]
        pw = [(b ** (D + e) - a ** (D + e)) / (D + e) for e in range(pmax + 1)]
        ref = cs + 2 * h if upper_piece else cs
        sign = -1.0 if upper_piece else 1.0
        # sigma^p = (sign*(s - ref))^p expanded binomially in s-powers
        for p in range(pmax + 1):
            acc = np.zeros_like(cs)
            for e in range(p + 1):
                acc += math.comb(p, e) * (-ref) ** (p - e) * pw[e]
            out[p][small] = sign**p * acc
    if large.any():
        cl = c[large]
        a = bot[large]
        b = top[large]
        mid, half = (a + b) / 2, (b - a) / 2
        s = mid[None, :] + _GL_X[:, None] * half[None, :]
        w = _GL_W[:, None] * half[None, :]
        sig = (cl[None, :] + 2 * h - s) if upper_piece else (s - cl[None, :])
        base = s ** (D - 1)
        for p in range(pmax + 1):
            out[p][large] = (w * base * sig**p).sum(axis=0)
    return out


def _cellwise(F: SurvivalGrid, extend: bool):
    """Per-cell (left value, right value, slope) arrays, optionally extended
    by constant cells down to -hi so the domain square is symmetric."""
    vals = F.values
    h = F.step
    left = vals[:-1]
    right = vals[1:]
    slope = (right - left) / h
    lo = F.lo
    if extend and F.lo > -F.hi + 1e-12:
        pad = round((F.lo + F.hi) / h)
        if abs((F.lo + F.hi) / h - pad) > 1e-9:
            raise ValueError("extension region is not commensurate with step")
        const = np.full(pad, F.below_convention)
        zeros = np.zeros(pad)
        left = np.concatenate([const, left])
        right = np.concatenate([const, right])
        slope = np.concatenate([zeros, slope])
        lo = -F.hi
    return left, right, slope, lo, h


def beta_theta(F: SurvivalGrid, p: Optional[ModelParams] = None, *, d: Optional[float] = None) -> float:
    """(d^2/2) * iint over {x+y >= 0} of (x+y)^{d-1} F(x)F(y) dx dy.

    Anti-diagonal decomposition: on each cell pair the integrand is s^{d-1}
    times a cubic in the diagonal offset, whose coefficients across a fixed
    anti-diagonal are discrete convolutions of the cell arrays; the diagonal
    x + y = 0 lands exactly on the piece boundaries.  Exact for the grid
    representation, including the jump below lo on one-sided domains.
    """
    dim = p.d if p is not None else float(d)
    if p is not None and abs(F.hi - p.theta / 2) > 1e-9:
        raise ValueError("grid upper end must sit at theta/2")
    left, right, slope, lo, h = _cellwise(F, extend=True)
    cFF = fftconvolve(left, left)
    cFB = fftconvolve(left, slope)
    cBB = fftconvolve(slope, slope)
    cTT = fftconvolve(right, right)
    cTB = fftconvolve(right, slope)
    m = np.arange(len(cFF))
    cdiag = 2 * lo + m * h
    L = _poly_moments(cdiag, h, dim, 3, upper_piece=False)
    U = _poly_moments(cdiag, h, dim, 3, upper_piece=True)
    total = (
        cFF * L[1]
        + cFB * L[2]
        + cBB * L[3] / 6.0
        + cTT * U[1]
        - cTB * U[2]
        + cBB * U[3] / 6.0
    )
    return float((dim * dim / 2.0) * total.sum())


def _pair_survival_coeffs(F: SurvivalGrid):
    """Quadratic coefficients of P(f1 + f2 >= l) per lattice cell.

    The pair-sum survival on the lattice s_m = 2*lo + m*step is piecewise
    quadratic: the convolved continuous density is piecewise linear, and the
    endpoint atoms contribute shifted copies of the survival function plus
    step constants.
    """
    vals = F.values
    n = len(vals) - 1
    h = F.step
    a_lo = F.below_convention - vals[0]
    a_hi = vals[-1] - F.above_convention
    w = vals[:-1] - vals[1:]  # continuous mass per cell
    C = vals - a_hi  # survival of the continuous part
    slopeC = np.diff(C) / h
    # piecewise-linear pair density at interior lattice nodes
    rho = np.zeros(2 * n + 1)
    if n > 0:
        rho[1:2 * n] = fftconvolve(w, w)[: 2 * n - 1] / h
    # exact tail integral of the piecewise-linear density
    Tcc = np.zeros(2 * n + 1)
    cell_mass = h * (rho[:-1] + rho[1:]) / 2
    Tcc[:-1] = cell_mass[::-1].cumsum()[::-1]
    c0 = Tcc[:-1].copy()
    c1 = -rho[:-1].copy()
    c2 = -(np.diff(rho)) / (2 * h)
    m = np.arange(2 * n)
    # atom at lo against the continuous part: C(l - lo), cells 0..n-1
    sel = m < n
    c0[sel] += 2 * a_lo * C[m[sel]]
    c1[sel] += 2 * a_lo * slopeC[m[sel]]
    # atom at hi against the continuous part: C(l - hi)
    c0[~sel] += 2 * a_hi * C[m[~sel] - n]
    c1[~sel] += 2 * a_hi * slopeC[m[~sel] - n]
    c0[sel] += 2 * a_hi * C[0]
    # atom-atom masses at lo+hi and 2*hi (the mass at 2*lo sits below l=0)
    c0[sel] += 2 * a_lo * a_hi
    c0 += a_hi**2
    return c0, c1, c2


def pair_sum_survival(F: SurvivalGrid, l) -> float | np.ndarray:
    """P(f1 + f2 >= l) for independent draws with survival F, for l > 2*lo."""
    c0, c1, c2 = _pair_survival_coeffs(F)
    n = len(F.values) - 1
    h = F.step
    ls = np.atleast_1d(np.asarray(l, dtype=float))
    idx = np.clip(np.floor((ls - 2 * F.lo) / h).astype(int), 0, 2 * n - 1)
    sig = ls - (2 * F.lo + idx * h)
    out = c0[idx] + c1[idx] * sig + c2[idx] * sig**2
    out = np.where(ls > 2 * F.hi, 0.0, np.clip(out, 0.0, 1.0))
    out = np.where(ls <= 2 * F.lo, 1.0, out)
    return float(out[0]) if np.isscalar(l) else out


def beta_theta_convolution(F: SurvivalGrid, p: Optional[ModelParams] = None, *, d: Optional[float] = None) -> float:
    """(d/2) * int_0^{2*hi} l^d P(f1 + f2 >= l) dl, the pair-sum route."""
    dim = p.d if p is not None else float(d)
    if p is not None and abs(F.hi - p.theta / 2) > 1e-9:
        raise ValueError("grid upper end must sit at theta/2")
    c0, c1, c2 = _pair_survival_coeffs(F)
    n = len(F.values) - 1
    h = F.step
    m = np.arange(2 * n)
    s = 2 * F.lo + m * h
    M = _poly_moments(s, h, dim + 1, 2, upper_piece=False)
    return float((dim / 2.0) * np.sum(c0 * M[0] + c1 * M[1] + c2 * M[2]))


def density_q(F: SurvivalGrid) -> float:
    """Upper-endpoint value: the chance of an immediate quit at cost theta/2."""
    return float(F.values[-1])


def beta_limit(
    problem: str,
    d: float,
    theta_schedule: Optional[Sequence[float]] = None,
    tol: float = 1e-6,
    *,
    cells: int = DEFAULT_CELLS,
    step: Optional[float] = None,
    refine: bool = False,
    fp_tol: float = 1e-10,
) -> BetaEstimate:
    """Diluted cost along an increasing theta schedule, with early stop.

    Each theta gets a certified fixed point and the double-integral cost;
    refine=True adds one step-halving Richardson extrapolation per theta.
    An explicit step fixes the grid pitch across the whole schedule; the
    default scales it as theta/cells.  Stops once the increment over a
    doubling drops below tol; a decrease beyond 1e-9 means numerical error
    and raises.
    """
    schedule = list(theta_schedule) if theta_schedule is not None else list(DEFAULT_THETA_SCHEDULE)
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("theta schedule must be strictly increasing")
    if step is not None and step <= 0:
        raise ValueError("step must be positive")
    thetas, betas, qs = [], [], []
    for theta in schedule:
        p = ModelParams(d=d, theta=theta)
        h = step if step is not None else theta / cells
        beta, q = _beta_at(problem, p, h, fp_tol)
        if refine:
            beta_fine, q = _beta_at(problem, p, h / 2, fp_tol)
            beta = beta_fine + (beta_fine - beta) / 3
        thetas.append(theta)
        betas.append(beta)
        qs.append(q)
        if len(betas) >= 2:
            inc = betas[-1] - betas[-2]
            if inc < -1e-9:
                raise RuntimeError(
                    f"beta decreased by {-inc:.3e} from theta={thetas[-2]} to {theta}; "
                    "numerical error exceeds the monotonicity slack"
                )
            if inc < tol:
                break
    gap = betas[-1] - betas[-2] if len(betas) >= 2 else math.inf
    return BetaEstimate(
        problem=problem,
        d=d,
        theta_values=thetas,
        beta_values=betas,
        beta_limit=betas[-1],
        extrapolation_gap=max(gap, 0.0),
        q_values=qs,
    )


def _beta_at(problem: str, p: ModelParams, step: float, fp_tol: float):
    report: FixedPointReport = solve_fixed_point(problem, p, fp_tol, step=step)
    if not report.converged:
        raise RuntimeError(
            f"fixed point not certified at theta={p.theta}: residual {report.residual:.3e}"
        )
    F = report.fixed_point
    return beta_theta(F, p), density_q(F)


def rigorous_bounds(d: float):
    """(lower, upper, greedy) bounds on the matching limit cost; greedy is
    None at d = 1 where its expression has a pole."""
    if d < 1:
        raise ValueError("d must be >= 1")
    g = math.gamma(1 + 1 / d)
    lower = g / 2
    upper = g * float(_zeta(1 + 1 / d, 1)) / (2 * d)
    greedy = (math.pi / d) / math.sin(math.pi / d) / 2 if d > 1 else None
    return lower, upper, greedy


def matching_d1_q_from_theta(theta: float) -> float:
    """Invert theta = -2 ln(q)/(1+q) for q in (0, 1)."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    return brentq(
        lambda q: -2 * math.log(q) / (1 + q) - theta, 1e-300, 1 - 1e-15, xtol=1e-15
    )


def matching_d1_closed_form(q: float, *, cells: int = DEFAULT_CELLS):
    """Closed-form d=1 fixed point: theta, the sampled survival grid, and the
    cost integral_q^1 (-ln t)/(1+t) dt."""
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    theta = -2 * math.log(q) / (1 + q)
    F = from_function(
        lambda x: (1 + q) / (1 + np.exp((1 + q) * x)),
        -theta / 2,
        theta / 2,
        theta / cells,
    )
    beta, _ = quad(lambda t: -math.log(t) / (1 + t), q, 1, epsabs=1e-13, epsrel=1e-13)
    return theta, F, beta


def tsp_d1_reference() -> float:
    """Paired-root form of the d=1 TSP constant.

    With g(t) = (1+t/2)e^{-t}, the defining relation g(x) + g(y) = 1 is a
    symmetric decreasing curve; half the area under it is the constant.
    Splitting at the symmetric point g(x*) = 1/2 leaves only a bounded,
    exponentially decaying branch to integrate, so the y(0) divergence never
    enters.
    """
    g = lambda t: (1 + t / 2) * math.exp(-t)
    xstar = brentq(lambda x: g(x) - 0.5, 0.5, 3.0, xtol=1e-15)

    def branch(x: float) -> float:
        target = 1 - g(x)
        return brentq(lambda y: g(y) - target, 1e-18, xstar + 1e-6, xtol=1e-15)

    # beyond x = 38 the branch is below 1e-15; the remainder is negligible
    tail, _ = quad(branch, xstar, 38.0, epsabs=1e-12, epsrel=1e-12, limit=300)
    return xstar**2 / 2 + tail


def lambert_w(x: float) -> float:
    """Principal branch of the inverse of w e^w, for x >= 0."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    return float(_scipy_lambertw(x).real)


def edgecover_d1():
    """d=1 edge-cover solution: the survival scale W(1) and the limit cost."""
    w = lambert_w(1.0)
    return w, w + w * w / 2


def edgecover_d2(tol: float = 1e-12, max_iter: int = 10000):
    """d=2 edge-cover moments and limit cost.

    Iterates the two-dimensional moment map to a fixed point (A, B), then
    integrates the pair-sum cost.  The pair-sum survival is assembled from
    the atom at zero plus the continuous density -F', which yields the
    coefficient (2 - F(0)) on the F(l) term; the single-atom and continuous
    contributions both carry one, and dropping either fails to reproduce the
    d=1 expansion.
    """
    A, B = 0.4, 0.18
    for _ in range(max_iter):
        E = math.exp(-2 * B + A * A)
        tailA = (math.sqrt(math.pi) / 2) * E * (1 - erf(A))
        A_next = tailA
        B_next = math.exp(-2 * B) / 2 - A * tailA
        if abs(A_next - A) + abs(B_next - B) < tol:
            A, B = A_next, B_next
            break
        A, B = A_next, B_next
    else:
        raise RuntimeError(
            f"moment map did not converge: residual {abs(A_next - A) + abs(B_next - B):.3e}"
        )
    moments = EdgeCoverMoments(A=A, B=B)

    def F(t: float) -> float:
        return math.exp(-t * t - 2 * A * t - 2 * B)

    def pair_survival(l: float) -> float:
        conv, _ = quad(
            lambda u: (2 * u + 2 * A) * F(u) * F(l - u), 0, l, epsabs=1e-13, epsrel=1e-13
        )
        return (2 - F(0.0)) * F(l) + conv

    cost, _ = quad(
        lambda l: l * l * pair_survival(l), 0, 12.0, epsabs=1e-11, epsrel=1e-11, limit=200
    )
    return moments, cost


def erf(x: float) -> float:
    """Error function, delegated to the platform implementation."""
    return math.erf(x)
