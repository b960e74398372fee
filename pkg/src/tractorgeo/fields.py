"""Scalar fields on coordinate charts, exact jets, and the finite-difference oracle.

The toolkit has exactly two derivative engines and they are kept strictly
separate:

* the primary engine evaluates a field on seeded :class:`~tractorgeo.jets.Jet`
  objects and is exact to roundoff (``jet``),
* the oracle differentiates the same field with central differences plus one
  Richardson extrapolation level (``fd_oracle``) and never touches the jet
  arithmetic.

Tests compare the two; production code uses the jets except for the few
frame-field derivatives that are stencil-based by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import StencilOutOfDomain, UnsupportedOrder
from .jets import Jet, check_order, value_of

# Default oracle steps per derivative order, scaled by coordinate magnitude.
# Orders 1-2 use 1e-4; order 3 nests a first difference (outer step) around
# second differences (inner step) because 1e-4 at third order would leave
# roundoff comparable to the documented 1e-4 tolerance.
FD_DEFAULT_STEP = {1: 1e-4, 2: 1e-4, 3: 5e-3}
FD_INNER_STEP = 1e-3


def as_coords(p, dim=None):
    """Coerce a point (CoordinatePoint, sequence, array) to a float vector."""
    if isinstance(p, CoordinatePoint):
        x = np.asarray(p.coords, dtype=float)
    else:
        x = np.asarray(p, dtype=float).reshape(-1)
    if not np.all(np.isfinite(x)):
        raise ValueError("coordinates must be finite")
    if dim is not None and x.size != dim:
        raise ValueError(f"expected {dim} coordinates, got {x.size}")
    return x


@dataclass(frozen=True)
class CoordinatePoint:
    """A point of a coordinate chart; entries are dimensionless reals."""

    coords: tuple
    dim: int

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.dim:
            raise ValueError("coords length must equal dim")
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        if not all(math.isfinite(c) for c in coords):
            raise ValueError("coordinates must be finite")

    @classmethod
    def of(cls, *coords):
        return cls(tuple(coords), len(coords))


class JetArrays(NamedTuple):
    """Derivative arrays of a scalar field at a point (None above `order`)."""

    value: float
    grad: np.ndarray | None
    hess: np.ndarray | None
    third: np.ndarray | None


@dataclass(frozen=True)
class ScalarField:
    """A smooth map chart -> R, evaluable on floats or on seeded jets.

    ``fn`` receives one positional argument per chart coordinate.  It must be
    written with the arithmetic of :mod:`tractorgeo.jets` (operators plus
    ``exp/log/sqrt/sin/cos``) so that jet evaluation realises the chain rule.
    """

    arity: int
    fn: Callable
    name: str = ""

    def __call__(self, *coords):
        return self.fn(*coords)

    def value(self, p) -> float:
        x = as_coords(p, self.arity)
        return value_of(self.fn(*x))

    @classmethod
    def constant(cls, c, arity, name=""):
        c = float(c)
        return cls(arity, lambda *coords: c, name or repr(c))

    @classmethod
    def coordinate(cls, index, arity):
        return cls(arity, lambda *coords: coords[index], f"x{index}")


def jet(field: ScalarField, p, order: int = 3) -> JetArrays:
    """Exact-to-roundoff derivative arrays of ``field`` at ``p`` (order <= 3)."""
    check_order(order)
    x = as_coords(p, field.arity)
    out = field.fn(*Jet.seed(x))
    if not isinstance(out, Jet):
        out = Jet.constant(out, x.size)
    return JetArrays(
        out.val,
        out.d1.copy() if order >= 1 else None,
        out.d2.copy() if order >= 2 else None,
        out.d3.copy() if order >= 3 else None,
    )


# ----------------------------------------------------------------------
# finite-difference oracle
# ----------------------------------------------------------------------

def _richardson(coarse, fine):
    """One Richardson level for an O(h^2) central-difference estimate."""
    return (4.0 * fine - coarse) / 3.0


def _first(f, x, i, h):
    def central(step):
        xp, xm = x.copy(), x.copy()
        xp[i] += step
        xm[i] -= step
        return (f(xp) - f(xm)) / (2.0 * step)

    return _richardson(central(h), central(h / 2.0))


def _second(f, x, i, j, h_i, h_j):
    if i == j:
        def central(step):
            xp, xm = x.copy(), x.copy()
            xp[i] += step
            xm[i] -= step
            return (f(xp) - 2.0 * f(x) + f(xm)) / step**2

        return _richardson(central(h_i), central(h_i / 2.0))

    def central(si, sj):
        out = 0.0
        for a in (+1.0, -1.0):
            for b in (+1.0, -1.0):
                y = x.copy()
                y[i] += a * si
                y[j] += b * sj
                out += a * b * f(y)
        return out / (4.0 * si * sj)

    return _richardson(central(h_i, h_j), central(h_i / 2.0, h_j / 2.0))


def fd_oracle(field: ScalarField, p, order: int, step: float | None = None) -> JetArrays:
    """Central-difference derivative arrays with one Richardson level.

    Independent of the jet engine: only plain float evaluations of the field
    are used.  Steps are scaled per coordinate by (1 + |x_i|).
    """
    check_order(order)
    if step is not None and step <= 0.0:
        raise ValueError("step must be positive")
    x = as_coords(p, field.arity)
    n = x.size

    def f(y):
        return value_of(field.fn(*y))

    value = f(x)
    grad = hess = third = None

    if order >= 1:
        h = step if step is not None else FD_DEFAULT_STEP[1]
        steps = h * (1.0 + np.abs(x))
        grad = np.array([_first(f, x, i, steps[i]) for i in range(n)])

    if order >= 2:
        h = step if step is not None else FD_DEFAULT_STEP[2]
        steps = h * (1.0 + np.abs(x))
        hess = np.zeros((n, n))
        for i in range(n):
            for j in range(i, n):
                hess[i, j] = hess[j, i] = _second(f, x, i, j, steps[i], steps[j])

    if order >= 3:
        h = step if step is not None else FD_DEFAULT_STEP[3]
        steps = h * (1.0 + np.abs(x))
        inner = FD_INNER_STEP * (1.0 + np.abs(x))

        third = np.zeros((n, n, n))
        for j in range(n):
            for k in range(j, n):
                def second_jk(y):
                    return _second(f, y, j, k, inner[j], inner[k])

                for i in range(n):
                    t = _first(second_jk, x, i, steps[i])
                    for a, b, c in ((i, j, k), (i, k, j), (j, i, k),
                                    (j, k, i), (k, i, j), (k, j, i)):
                        third[a, b, c] = t

    return JetArrays(value, grad, hess, third)


# ----------------------------------------------------------------------
# stencil derivatives of array-valued point functions (frame fields etc.)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ChartDomain:
    """Axis-aligned box with membership test, used to guard stencils."""

    lo: tuple
    hi: tuple

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lo) and np.all(x <= self.hi))


def stencil_partials(fn, x, domain: ChartDomain | None = None, step: float = 1e-4):
    """Directional derivatives of an array-valued function of chart points.

    Central differences with one Richardson level, step scaled per coordinate.
    Returns an array with the derivative direction as the leading axis.
    Raises StencilOutOfDomain if a sample point leaves ``domain``.
    """
    x = np.asarray(x, dtype=float)
    n = x.size

    def sample(y):
        if domain is not None and not domain.contains(y):
            raise StencilOutOfDomain(f"stencil point {y.tolist()} outside chart domain")
        return np.asarray(fn(y), dtype=float)

    rows = []
    for i in range(n):
        h = step * (1.0 + abs(x[i]))

        def central(s):
            xp, xm = x.copy(), x.copy()
            xp[i] += s
            xm[i] -= s
            return (sample(xp) - sample(xm)) / (2.0 * s)

        rows.append(_richardson(central(h), central(h / 2.0)))
    return np.stack(rows, axis=0)
