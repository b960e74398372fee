"""Forward-mode automatic differentiation with truncated Taylor jets.

A :class:`Jet` carries the value of a smooth scalar expression together with
its symmetric derivative tensors up to third order with respect to a fixed
set of seed variables.  Arithmetic propagates derivatives exactly (to
roundoff) through the Leibniz and Faa di Bruno rules, so the curvature
formulas built on top need neither a symbolic engine nor step-size tuning.

Composition is transparent: evaluating any formula made of ``+ - * / **``
and the elementary functions below on seeded jets yields the jets of the
composite map.  Plugging the jet of one map into another map's formula
implements the chain rule automatically, which is how immersion pull-backs
are differentiated.
"""

from __future__ import annotations

import math
import numbers

import numpy as np

from .errors import UnsupportedOrder

MAX_ORDER = 3


def _outer(a, b):
    return np.multiply.outer(a, b)


def _sym3(a, b):
    """Sum of the three placements of gradient ``a`` against symmetric ``b``."""
    t = np.einsum("i,jk->ijk", a, b)
    return t + t.transpose(1, 0, 2) + t.transpose(2, 1, 0)


class Jet:
    """Value and symmetric derivative tensors (orders 1..3) of a scalar."""

    __slots__ = ("dim", "val", "d1", "d2", "d3")

    def __init__(self, dim, val, d1=None, d2=None, d3=None):
        self.dim = dim
        self.val = float(val)
        self.d1 = np.zeros(dim) if d1 is None else d1
        self.d2 = np.zeros((dim, dim)) if d2 is None else d2
        self.d3 = np.zeros((dim, dim, dim)) if d3 is None else d3

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, value, dim):
        return cls(dim, value)

    @classmethod
    def variable(cls, value, index, dim):
        d1 = np.zeros(dim)
        d1[index] = 1.0
        return cls(dim, value, d1)

    @staticmethod
    def seed(coords):
        """Identity-seeded jets for a coordinate tuple (one per variable)."""
        coords = [float(c) for c in coords]
        n = len(coords)
        return [Jet.variable(c, i, n) for i, c in enumerate(coords)]

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, numbers.Real):
            return Jet(self.dim, self.val + other, self.d1, self.d2, self.d3)
        return Jet(self.dim, self.val + other.val, self.d1 + other.d1,
                   self.d2 + other.d2, self.d3 + other.d3)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.dim, -self.val, -self.d1, -self.d2, -self.d3)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            c = float(other)
            return Jet(self.dim, self.val * c, self.d1 * c, self.d2 * c, self.d3 * c)
        val = self.val * other.val
        d1 = self.d1 * other.val + other.d1 * self.val
        d2 = (self.d2 * other.val + other.d2 * self.val
              + _outer(self.d1, other.d1) + _outer(other.d1, self.d1))
        d3 = (self.d3 * other.val + other.d3 * self.val
              + _sym3(self.d1, other.d2) + _sym3(other.d1, self.d2))
        return Jet(self.dim, val, d1, d2, d3)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return self * (1.0 / float(other))
        return self * other._reciprocal()

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, Jet):
            return (p * self._log()).exp_jet()
        if isinstance(p, numbers.Integral):
            return self._int_power(int(p))
        return (float(p) * self._log()).exp_jet()

    # ------------------------------------------------------------------
    # composition with a univariate smooth function
    # ------------------------------------------------------------------

    def compose(self, c0, c1, c2, c3):
        """Jet of ``h(self)`` given derivatives ``c0..c3`` of h at self.val."""
        u1, u2, u3 = self.d1, self.d2, self.d3
        d1 = c1 * u1
        d2 = c1 * u2 + c2 * _outer(u1, u1)
        d3 = c1 * u3 + c2 * _sym3(u1, u2) + c3 * np.einsum("i,j,k->ijk", u1, u1, u1)
        return Jet(self.dim, c0, d1, d2, d3)

    def _reciprocal(self):
        v = self.val
        if v == 0.0:
            raise ZeroDivisionError("jet division by zero value")
        return self.compose(1.0 / v, -1.0 / v**2, 2.0 / v**3, -6.0 / v**4)

    def _int_power(self, p):
        if p == 0:
            return Jet.constant(1.0, self.dim)
        if p < 0:
            return self._reciprocal()._int_power(-p)
        result = self
        for _ in range(p - 1):
            result = result * self
        return result

    def exp_jet(self):
        e = math.exp(self.val)
        return self.compose(e, e, e, e)

    def _log(self):
        v = self.val
        if v <= 0.0:
            raise ValueError("log of a non-positive jet value")
        return self.compose(math.log(v), 1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def _sqrt(self):
        v = self.val
        if v <= 0.0:
            raise ValueError("sqrt of a non-positive jet value")
        s = math.sqrt(v)
        return self.compose(s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v))

    def _sin(self):
        s, c = math.sin(self.val), math.cos(self.val)
        return self.compose(s, c, -s, -c)

    def _cos(self):
        s, c = math.sin(self.val), math.cos(self.val)
        return self.compose(c, -s, -c, s)

    def __repr__(self):
        return f"Jet(dim={self.dim}, val={self.val!r})"


def partial(jet, i):
    """Jet of the i-th partial derivative, one order lower (third order zero)."""
    return Jet(jet.dim, jet.d1[i], jet.d2[i].copy(), jet.d3[i].copy())


# ----------------------------------------------------------------------
# elementary functions usable on floats and jets alike
# ----------------------------------------------------------------------

def exp(x):
    return x.exp_jet() if isinstance(x, Jet) else math.exp(x)


def log(x):
    return x._log() if isinstance(x, Jet) else math.log(x)


def sqrt(x):
    return x._sqrt() if isinstance(x, Jet) else math.sqrt(x)


def sin(x):
    return x._sin() if isinstance(x, Jet) else math.sin(x)


def cos(x):
    return x._cos() if isinstance(x, Jet) else math.cos(x)


def value_of(x):
    """Scalar value of a float or a jet."""
    return x.val if isinstance(x, Jet) else float(x)


def check_order(order):
    if not isinstance(order, int) or order < 0 or order > MAX_ORDER:
        raise UnsupportedOrder(f"derivative order {order!r} not in 0..{MAX_ORDER}")
