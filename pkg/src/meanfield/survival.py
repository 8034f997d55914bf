"""Discretized survival functions on uniform grids, with the quadrature kernel
used by the cavity operators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SurvivalGrid",
    "ModelParams",
    "evaluate",
    "kernel_integral",
    "sup_distance",
    "grid_nodes",
    "from_function",
]

_MONOTONE_SLACK = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Pseudo-dimension d >= 1 and dilution parameter theta > 0."""

    d: float
    theta: float

    def __post_init__(self) -> None:
        if not self.d >= 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")


@dataclass(frozen=True)
class SurvivalGrid:
    """Survival function F(x) = P(f >= x) sampled on a uniform grid.

    values[i] approximates F(lo + i*step).  Outside [lo, hi] the function is
    the constant below_convention / above_convention (each 0 or 1).  An atom
    at an endpoint is the jump between the convention and the endpoint value;
    in particular values[-1] carries the point mass at hi when
    above_convention is 0.
    """

    lo: float
    hi: float
    step: float
    values: np.ndarray = field(repr=False)
    below_convention: float = 1.0
    above_convention: float = 0.0

    def __post_init__(self) -> None:
        vals = np.ascontiguousarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if self.step <= 0:
            raise ValueError("step must be positive")
        n = (self.hi - self.lo) / self.step
        if abs(n - round(n)) > 1e-9:
            raise ValueError(f"(hi-lo)/step = {n} is not an integer")
        if len(vals) != round(n) + 1:
            raise ValueError(
                f"expected {round(n) + 1} values for this grid, got {len(vals)}"
            )
        if self.below_convention not in (0.0, 1.0) or self.above_convention not in (0.0, 1.0):
            raise ValueError("conventions must be 0 or 1")
        if vals.min() < -_MONOTONE_SLACK or vals.max() > 1 + _MONOTONE_SLACK:
            raise ValueError("values must lie in [0, 1]")
        if np.any(np.diff(vals) > _MONOTONE_SLACK):
            raise ValueError("values must be non-increasing")
        if vals[0] > self.below_convention + _MONOTONE_SLACK:
            raise ValueError("values[0] must not exceed below_convention")
        if vals[-1] < self.above_convention - _MONOTONE_SLACK:
            raise ValueError("values[-1] must not fall below above_convention")
        # repair float-level noise so downstream monotone logic is exact
        np.clip(vals, 0.0, 1.0, out=vals)
        np.minimum.accumulate(vals, out=vals)
        vals.flags.writeable = False

    @property
    def n_cells(self) -> int:
        return len(self.values) - 1

    def with_values(self, values: np.ndarray) -> "SurvivalGrid":
        return SurvivalGrid(
            self.lo, self.hi, self.step, values, self.below_convention, self.above_convention
        )


def grid_nodes(grid: SurvivalGrid) -> np.ndarray:
    """Grid node coordinates lo, lo+step, ..., hi."""
    return grid.lo + grid.step * np.arange(len(grid.values))


def from_function(
    fn, lo: float, hi: float, step: float, below: float = 1.0, above: float = 0.0
) -> SurvivalGrid:
    """Sample a callable survival function onto a grid."""
    n = round((hi - lo) / step)
    x = lo + step * np.arange(n + 1)
    return SurvivalGrid(lo, hi, step, np.asarray(fn(x), dtype=float), below, above)


def evaluate(grid: SurvivalGrid, x) -> float | np.ndarray:
    """F(x) with the out-of-domain conventions; linear interpolation inside."""
    xs = np.asarray(x, dtype=float)
    inner = np.interp(xs, grid_nodes(grid), grid.values)
    out = np.where(
        xs < grid.lo, grid.below_convention, np.where(xs > grid.hi, grid.above_convention, inner)
    )
    return float(out) if np.isscalar(x) or out.ndim == 0 else out


def sup_distance(a: SurvivalGrid, b: SurvivalGrid) -> float:
    """Max node-wise |a - b|; the grids must coincide."""
    if (
        abs(a.lo - b.lo) > 1e-12
        or abs(a.hi - b.hi) > 1e-12
        or abs(a.step - b.step) > 1e-12
        or len(a.values) != len(b.values)
    ):
        raise ValueError("grids do not match")
    return float(np.abs(a.values - b.values).max())


def _power_moments(l1: np.ndarray, l2: np.ndarray, d: float):
    """(d*int l^{d-1} dl, d*int l^{d-1}(l-l1) dl) over [l1, l2], elementwise."""
    p0 = l2**d - l1**d
    p1 = (d / (d + 1)) * (l2 ** (d + 1) - l1 ** (d + 1)) - l1 * p0
    return p0, p1


def kernel_integral(grid: SurvivalGrid, x: float, d: float, upper: float) -> float:
    """d * int_0^upper l^{d-1} F(l - x) dl, exact for the piecewise-linear F.

    The integrand's kinks sit where l - x crosses a grid node; each smooth
    piece is integrated with the closed-form power moments, so piecewise
    linear inputs incur no quadrature error beyond rounding.
    """
    if upper < 0:
        raise ValueError("upper must be nonnegative")
    if upper == 0:
        return 0.0
    # breakpoints in l: 0, upper, and the grid nodes shifted by x
    nodes = grid_nodes(grid) + x
    inner = nodes[(nodes > 0) & (nodes < upper)]
    bks = np.concatenate(([0.0], inner, [upper]))
    l1, l2 = bks[:-1], bks[1:]
    mid = 0.5 * (l1 + l2) - x
    f1 = evaluate(grid, l1 - x)
    fm = evaluate(grid, mid)
    # a piece starting at the top boundary sees the outside convention (the
    # right limit), not the atom parked on the last node
    top = l1 >= x + grid.hi
    if top.any():
        f1 = np.where(top, grid.above_convention, f1)
        fm = np.where(top, grid.above_convention, fm)
    # slope of F on each piece, recovered from midpoint to stay exact at kinks
    width = l2 - l1
    slope = np.zeros_like(width)
    nz = width > 0
    slope[nz] = 2 * (fm[nz] - f1[nz]) / width[nz]
    p0, p1 = _power_moments(l1, l2, d)
    return float(np.sum(f1 * p0 + slope * p1))
