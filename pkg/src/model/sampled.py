"""Grids, sampled functions and finite-difference stencils on the A axis."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.errors import ConfigurationError, NumericRangeError

FloatArray = NDArray[np.float64]

MIN_POINTS = 16

# Residual norms skip the one-sided end stencils
INTERIOR = slice(2, -2)


@dataclass(frozen=True, eq=False)
class Grid:
    """Strictly increasing, strictly positive scale-factor samples."""

    points: FloatArray

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < MIN_POINTS:
            raise ConfigurationError(
                f"Grid needs at least {MIN_POINTS} points, got {pts.size}"
            )
        if not np.all(np.isfinite(pts)):
            raise ConfigurationError("Grid points must be finite")
        if pts[0] <= 0:
            raise ConfigurationError(f"Grid must start at A > 0, got {pts[0]:g}")
        if np.any(np.diff(pts) <= 0):
            raise ConfigurationError("Grid points must be strictly increasing")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def linspace(cls, a_min: float, a_max: float, n: int) -> "Grid":
        """Uniform grid on [a_min, a_max]."""
        return cls(np.linspace(a_min, a_max, n))

    @classmethod
    def geomspace(cls, a_min: float, a_max: float, n: int) -> "Grid":
        """Geometric grid, denser near the origin."""
        return cls(np.geomspace(a_min, a_max, n))

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def a_min(self) -> float:
        return float(self.points[0])

    @property
    def a_max(self) -> float:
        return float(self.points[-1])

    def power(self, exponent: float) -> FloatArray:
        """A**exponent sampled on the grid."""
        return np.power(self.points, exponent)

    def sub(self, start: int, stop: int) -> "Grid":
        """Sub-grid of indices [start, stop)."""
        return Grid(self.points[start:stop])


def _stencil_weights(offsets: FloatArray) -> FloatArray:
    """First-derivative weights for rows of point offsets.

    Solves sum_j w_j d_j**p = delta(p, 1) per row on offsets scaled to O(1).
    """
    scale = np.max(np.abs(offsets), axis=1, keepdims=True)
    scaled = offsets / scale
    k = offsets.shape[1]
    powers = np.arange(k)
    vander = scaled[:, None, :] ** powers[None, :, None]
    rhs = np.zeros((offsets.shape[0], k, 1))
    rhs[:, 1, 0] = 1.0
    return np.linalg.solve(vander, rhs)[..., 0] / scale


def differentiate(grid: Grid, values: FloatArray) -> FloatArray:
    """d/dA of sampled values.

    4th-order central five-point weights in the interior, 2nd-order
    three-point weights at the two outermost points on each end.
    """
    x = grid.points
    y = np.asarray(values, dtype=float)
    n = x.size
    if y.shape != x.shape:
        raise ConfigurationError(f"Values shape {y.shape} does not match grid {x.shape}")
    if n < 5:
        raise ConfigurationError("Grid too coarse for the derivative stencil")

    out = np.empty(n)

    centre = np.arange(2, n - 2)
    idx = centre[:, None] + np.arange(-2, 3)[None, :]
    w = _stencil_weights(x[idx] - x[centre][:, None])
    out[2:-2] = np.sum(w * y[idx], axis=1)

    head = np.array([0, 1])
    head_idx = np.tile(np.arange(3), (2, 1))
    w = _stencil_weights(x[head_idx] - x[head][:, None])
    out[:2] = np.sum(w * y[head_idx], axis=1)

    tail = np.array([n - 2, n - 1])
    tail_idx = np.tile(np.arange(n - 3, n), (2, 1))
    w = _stencil_weights(x[tail_idx] - x[tail][:, None])
    out[-2:] = np.sum(w * y[tail_idx], axis=1)

    return out


def max_relative(diff: FloatArray, scale: FloatArray, floor: float = 1e-14) -> float:
    """Pointwise relative max-norm of ``diff`` against a non-negative ``scale``.

    The scale is floored at ``floor * max(scale)`` so isolated zeros of the
    scale do not dominate.
    """
    diff = np.abs(np.asarray(diff, dtype=float))
    scale = np.abs(np.asarray(scale, dtype=float))
    top = float(np.max(scale)) if scale.size else 0.0
    if top == 0.0:
        return float(np.max(diff)) if diff.size else 0.0
    return float(np.max(diff / np.maximum(scale, floor * top)))


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """A function of A on a grid, with values and first derivatives."""

    grid: Grid
    values: FloatArray
    derivs: FloatArray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        derivs = np.array(self.derivs, dtype=float)
        n = len(self.grid)
        if values.shape != (n,) or derivs.shape != (n,):
            raise ConfigurationError(
                f"Sampled arrays must have length {n}, got {values.shape} and {derivs.shape}"
            )
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(derivs))):
            raise NumericRangeError("Sampled function has non-finite entries")
        values.setflags(write=False)
        derivs.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "derivs", derivs)

    @classmethod
    def from_values(cls, grid: Grid, values: FloatArray) -> "SampledFunction":
        """Sampled function whose derivative comes from the stencil."""
        values = np.asarray(values, dtype=float)
        return cls(grid, values, differentiate(grid, values))

    @classmethod
    def from_evaluator(
        cls,
        grid: Grid,
        evaluator: Callable[[FloatArray], tuple[FloatArray, FloatArray]],
    ) -> "SampledFunction":
        """Sample an analytic (value, derivative) evaluator."""
        values, derivs = evaluator(grid.points)
        return cls(grid, np.asarray(values, dtype=float), np.asarray(derivs, dtype=float))

    @property
    def points(self) -> FloatArray:
        return self.grid.points

    def second_derivative(self) -> FloatArray:
        """Stencil derivative of the stored first derivative."""
        return differentiate(self.grid, self.derivs)

    def restrict(self, start: int, stop: int) -> "SampledFunction":
        """Restriction to grid indices [start, stop)."""
        return SampledFunction(
            self.grid.sub(start, stop), self.values[start:stop], self.derivs[start:stop]
        )

    def scaled(self, factor: float) -> "SampledFunction":
        return SampledFunction(self.grid, factor * self.values, factor * self.derivs)

    def reciprocal(self) -> "SampledFunction":
        """1/f with derivative -f'/f**2."""
        return SampledFunction(
            self.grid, 1.0 / self.values, -self.derivs / self.values**2
        )

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        if other.grid is not self.grid and not np.array_equal(other.points, self.points):
            raise ConfigurationError("Cannot add sampled functions on different grids")
        return SampledFunction(
            self.grid, self.values + other.values, self.derivs + other.derivs
        )

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        return self + other.scaled(-1.0)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))
