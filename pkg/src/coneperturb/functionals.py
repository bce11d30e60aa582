"""Linear functionals in structured form.

Every functional lives on a fixed ambient shape and can be evaluated on a
single point or a batch with leading axes. Structure (spin dual, trace form,
...) is kept so that pullbacks stay readable and the dual-cone constraints of
each family can be enforced at construction.
"""

from functools import cached_property

import numpy as np

from .errors import NotPositiveFunctional, ShapeMismatch


def _fmt(arr):
    """Compact JSON-compatible text with round-trip float precision."""
    a = np.asarray(arr, dtype=float)
    if a.ndim == 0:
        return repr(float(a))
    return "[" + ",".join(_fmt(x) for x in a) + "]"


def trapezoid_weights(nodes):
    """Node weights of the trapezoid rule; exact for piecewise-linear node data."""
    t = np.asarray(nodes, dtype=float)
    w = np.zeros_like(t)
    gaps = np.diff(t)
    w[:-1] += gaps / 2
    w[1:] += gaps / 2
    return w


class Functional:
    """Base class. Subclasses define ``shape`` and ``_weights``."""

    shape = ()

    @cached_property
    def weights(self):
        w = np.asarray(self._weights(), dtype=float)
        w.setflags(write=False)
        return w

    def _weights(self):
        raise NotImplementedError

    def eval(self, p):
        p = np.asarray(p, dtype=float)
        k = len(self.shape)
        if p.shape[p.ndim - k:] != self.shape:
            raise ShapeMismatch(f"functional on {self.shape} applied to point of shape {p.shape}")
        val = np.tensordot(p, self.weights, axes=k)
        return float(val) if val.ndim == 0 else val

    __call__ = eval

    def norm(self):
        return float(np.linalg.norm(self.weights))

    def __mul__(self, coef):
        return Scaled(coef, self)

    __rmul__ = __mul__

    def to_text(self):
        return "covector:" + _fmt(self.weights)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"


class DenseCovector(Functional):
    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)
        self.shape = self.values.shape

    def _weights(self):
        return self.values

    def to_text(self):
        return "covector:" + _fmt(self.values)


class SpinDual(Functional):
    """``(x, alpha) -> alpha + <x, xhat>`` with ``||xhat|| <= 1``."""

    def __init__(self, xhat):
        self.xhat = np.atleast_1d(np.asarray(xhat, dtype=float))
        if np.linalg.norm(self.xhat) > 1 + 1e-12:
            raise NotPositiveFunctional(f"spin dual needs ||xhat|| <= 1, got {np.linalg.norm(self.xhat)}")
        self.shape = (self.xhat.size + 1,)

    def _weights(self):
        return np.append(self.xhat, 1.0)

    def to_text(self):
        return "spindual:" + _fmt(self.xhat)


class TraceForm(Functional):
    """``A -> trace(B A)`` with ``B`` positive semidefinite."""

    def __init__(self, b):
        from .numerics import as_symmat, sym_eig

        self.b = as_symmat(b)
        if sym_eig(self.b).eigenvalues[0] < -1e-10:
            raise NotPositiveFunctional("trace form needs a positive semidefinite B")
        self.shape = self.b.shape

    def _weights(self):
        return self.b

    def to_text(self):
        if np.array_equal(self.b, np.eye(self.b.shape[0])):
            return "trace"
        return "trace:" + _fmt(self.b)


class CPForm(Functional):
    """``A -> sum_i v_i^T A v_i`` with entrywise nonnegative ``v_i``."""

    def __init__(self, vectors):
        self.vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        if np.any(self.vectors < -1e-12):
            raise NotPositiveFunctional("completely positive form needs nonnegative vectors")
        n = self.vectors.shape[1]
        self.shape = (n, n)

    def _weights(self):
        return self.vectors.T @ self.vectors

    def to_text(self):
        return "cp:" + _fmt(self.vectors)


class TrapezoidIntegral(Functional):
    def __init__(self, nodes):
        self.nodes = np.asarray(nodes, dtype=float)
        self.shape = self.nodes.shape

    def _weights(self):
        return trapezoid_weights(self.nodes)

    def to_text(self):
        return "integral"


class PointEvaluation(Functional):
    def __init__(self, nodes, index):
        self.nodes = np.asarray(nodes, dtype=float)
        self.index = int(index)
        if not 0 <= self.index < self.nodes.size:
            raise ShapeMismatch(f"node index {index} outside grid of {self.nodes.size} nodes")
        self.shape = self.nodes.shape

    def _weights(self):
        w = np.zeros(self.shape)
        w[self.index] = 1.0
        return w

    def to_text(self):
        return f"eval@{self.index}"


class LexFirstCoord(Functional):
    shape = (2,)

    def _weights(self):
        return np.array([1.0, 0.0])

    def to_text(self):
        return "lexfirst"


class Scaled(Functional):
    def __init__(self, coef, inner):
        self.coef = float(coef)
        if self.coef < 0:
            raise NotPositiveFunctional("negative multiples leave the dual cone")
        self.inner = inner
        self.shape = inner.shape

    def _weights(self):
        return self.coef * self.inner.weights

    def to_text(self):
        return f"{self.coef!r}*{self.inner.to_text()}"


class Combination(Functional):
    """Nonnegative combination ``sum c_i f_i``."""

    def __init__(self, terms):
        self.terms = tuple((float(c), f) for c, f in terms)
        if not self.terms:
            raise ValueError("empty combination")
        if any(c < 0 for c, _ in self.terms):
            raise NotPositiveFunctional("combination coefficients must be nonnegative")
        self.shape = self.terms[0][1].shape

    def _weights(self):
        return sum(c * f.weights for c, f in self.terms)

    def to_text(self):
        return " + ".join(f"{c!r}*{f.to_text()}" for c, f in self.terms)


class Composed(Functional):
    """``p -> f(S p)``: the structure-free fallback of a pullback."""

    def __init__(self, f, linear_map):
        self.f = f
        self.map = linear_map
        self.shape = f.shape

    def eval(self, p):
        return self.f.eval(self.map.apply(p))

    __call__ = eval

    def _weights(self):
        basis = np.eye(int(np.prod(self.shape))).reshape(-1, *self.shape)
        return np.asarray(self.f.eval(self.map.apply(basis))).reshape(self.shape)
