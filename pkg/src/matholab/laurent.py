"""Truncated Laurent series with vector or matrix coefficients.

A series f(z) = sum_n c_n z^n is stored on the symmetric index window
[-M, M]; ``order`` is M and ``coeffs[n + M]`` holds c_n. Alongside the
stored coefficients each series carries ``tail_bound``, a certified upper
bound on the L^2 norm of everything that has ever been discarded, so a
truncated object still says how far it can be trusted.

Multiplication of stored windows is exact convolution (Laurent polynomials
multiply exactly); the tail propagates by the rule

    tail(F g) <= sup|F| * tail(g) + tail(F) * sup|g|,

where sup|.| is bounded by the l^1 sum of coefficient norms plus the tail.
Truncation folds the exact L^2 mass of dropped coefficients into the bound.
"""

from __future__ import annotations

import numpy as np

from .jsonio import ScenarioError, matrix_from_json, matrix_to_json, vector_from_json, vector_to_json

__all__ = [
    "VectorLaurent",
    "MatrixLaurent",
    "mul",
    "adjoint_star",
    "flip",
    "reflect_z",
    "riesz_split",
    "inner_product",
    "evaluate",
    "sample_circle",
    "fit_circle_samples",
    "geometric_coeffs",
]


class _Laurent:
    """Shared window machinery. Instances are immutable."""

    __slots__ = ("coeffs", "order", "tail_bound", "dim")

    def __init__(self, coeffs, order, tail_bound=0.0):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape[0] != 2 * order + 1:
            raise ValueError(f"window length {coeffs.shape[0]} does not match order {order}")
        self._check_shape(coeffs)
        coeffs = coeffs.copy()
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "tail_bound", float(tail_bound))
        object.__setattr__(self, "dim", int(coeffs.shape[1]))

    def __setattr__(self, name, value):
        raise AttributeError("Laurent objects are immutable")

    # -- window access ---------------------------------------------------

    def coeff(self, n):
        """Coefficient c_n (zero outside the stored window)."""
        if abs(n) > self.order:
            return np.zeros(self.coeffs.shape[1:], dtype=complex)
        return self.coeffs[n + self.order]

    def support(self):
        """(nmin, nmax) of the nonzero stored coefficients; (0, 0) if zero."""
        nz = np.flatnonzero(self._coeff_norms() > 0.0)
        if nz.size == 0:
            return (0, 0)
        return (int(nz[0]) - self.order, int(nz[-1]) - self.order)

    def _coeff_norms(self):
        flat = self.coeffs.reshape(self.coeffs.shape[0], -1)
        return np.linalg.norm(flat, axis=1)

    def with_order(self, order):
        """Re-embed in a window of at least the current order."""
        if order == self.order:
            return self
        if order < self.order:
            return self.truncate(order)
        pad = order - self.order
        shape = (2 * order + 1,) + self.coeffs.shape[1:]
        out = np.zeros(shape, dtype=complex)
        out[pad:pad + 2 * self.order + 1] = self.coeffs
        return type(self)(out, order, self.tail_bound)

    def truncate(self, order):
        """Shrink the window to [-order, order]; dropped L^2 mass joins tail_bound."""
        if order >= self.order:
            return self.with_order(order)
        lo = self.order - order
        kept = self.coeffs[lo:lo + 2 * order + 1]
        dropped = np.concatenate([self._coeff_norms()[:lo], self._coeff_norms()[lo + 2 * order + 1:]])
        extra = float(np.linalg.norm(dropped))
        return type(self)(kept, order, self.tail_bound + extra)

    def trim(self):
        """Smallest symmetric window holding all nonzero coefficients."""
        nmin, nmax = self.support()
        order = max(abs(nmin), abs(nmax))
        if order >= self.order:
            return self
        lo = self.order - order
        return type(self)(self.coeffs[lo:lo + 2 * order + 1], order, self.tail_bound)

    # -- linear structure ------------------------------------------------

    def _binary(self, other, op):
        if type(other) is not type(self) or other.coeffs.shape[1:] != self.coeffs.shape[1:]:
            raise ValueError("operands have mismatched kind or dimension")
        order = max(self.order, other.order)
        a = self.with_order(order)
        b = other.with_order(order)
        return type(self)(op(a.coeffs, b.coeffs), order, self.tail_bound + other.tail_bound)

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def scale(self, c):
        return type(self)(self.coeffs * complex(c), self.order, abs(complex(c)) * self.tail_bound)

    def __neg__(self):
        return self.scale(-1.0)

    # -- index games -----------------------------------------------------

    def shift(self, k):
        """Multiply by z^k."""
        if k == 0:
            return self
        order = self.order + abs(k)
        shape = (2 * order + 1,) + self.coeffs.shape[1:]
        out = np.zeros(shape, dtype=complex)
        lo = (order - self.order) + k
        out[lo:lo + 2 * self.order + 1] = self.coeffs
        return type(self)(out, order, self.tail_bound).trim()

    def reflect_z(self):
        """The series of z -> f(conj(z)) on the circle: c_n -> c_{-n}."""
        return type(self)(self.coeffs[::-1], self.order, self.tail_bound)

    def conj_coeffs(self):
        """Entrywise conjugate of every coefficient, same index."""
        return type(self)(np.conj(self.coeffs), self.order, self.tail_bound)

    def riesz_split(self):
        """Split into (plus, minus): the n >= 0 part and the n <= -1 part.

        Both halves inherit the full tail bound (either half of the lost
        tail may be this large, so the bound stays certified).
        """
        plus = np.zeros_like(self.coeffs)
        minus = np.zeros_like(self.coeffs)
        plus[self.order:] = self.coeffs[self.order:]
        minus[:self.order] = self.coeffs[:self.order]
        cls = type(self)
        return (cls(plus, self.order, self.tail_bound).trim(),
                cls(minus, self.order, self.tail_bound).trim())

    # -- size ------------------------------------------------------------

    def norm(self):
        """L^2 norm of the stored coefficients."""
        return float(np.linalg.norm(self.coeffs))

    def sup_bound(self):
        """Certified bound on sup_{|z|=1} |f(z)| (l^1 of coefficient norms plus tail)."""
        return float(np.sum(self._coeff_norms())) + self.tail_bound

    def is_analytic(self, tol=0.0):
        neg = self._coeff_norms()[:self.order]
        return bool(np.all(neg <= tol))

    # -- evaluation ------------------------------------------------------

    def evaluate(self, z0):
        """Value at z0. |z0| must be 1 unless the series is analytic (then |z0| <= 1).

        On the circle the stored-part error is at most tail_bound; inside the
        disk it is at most tail_bound as well for analytic series (|z0^n| <= 1).
        """
        z0 = complex(z0)
        r = abs(z0)
        if abs(r - 1.0) <= 1e-12:
            powers = z0 ** np.arange(-self.order, self.order + 1)
            return np.tensordot(powers, self.coeffs, axes=(0, 0))
        if not (r < 1.0 and self.is_analytic()):
            raise ValueError("evaluation off the unit circle needs an analytic series inside the disk")
        # sum the analytic half only; z0 = 0 would poison the window sum
        powers = z0 ** np.arange(self.order + 1)
        return np.tensordot(powers, self.coeffs[self.order:], axes=(0, 0))

    def sample_circle(self, n_grid):
        """Values at the n_grid-th roots of unity, exact (indices fold mod n_grid)."""
        shape = (n_grid,) + self.coeffs.shape[1:]
        bins = np.zeros(shape, dtype=complex)
        for idx in range(2 * self.order + 1):
            bins[(idx - self.order) % n_grid] += self.coeffs[idx]
        return np.fft.ifft(bins, axis=0) * n_grid

    def allclose(self, other, tol=1e-12):
        order = max(self.order, other.order)
        a = self.with_order(order)
        b = other.with_order(order)
        return bool(np.max(np.abs(a.coeffs - b.coeffs)) <= tol)


class VectorLaurent(_Laurent):
    """Laurent series with coefficients in C^d."""

    def _check_shape(self, coeffs):
        if coeffs.ndim != 2:
            raise ValueError("VectorLaurent wants coefficients of shape (2M+1, d)")

    @classmethod
    def zeros(cls, dim, order=0):
        return cls(np.zeros((2 * order + 1, dim), dtype=complex), order)

    @classmethod
    def constant(cls, vec):
        vec = np.asarray(vec, dtype=complex).ravel()
        return cls(vec[None, :], 0)

    @classmethod
    def monomial(cls, n, vec):
        """vec * z^n."""
        vec = np.asarray(vec, dtype=complex).ravel()
        order = abs(int(n))
        out = np.zeros((2 * order + 1, vec.size), dtype=complex)
        out[n + order] = vec
        return cls(out, order)

    @classmethod
    def from_coeff_map(cls, entries, dim, tail_bound=0.0):
        order = max([abs(int(n)) for n in entries], default=0)
        out = np.zeros((2 * order + 1, dim), dtype=complex)
        for n, v in entries.items():
            out[int(n) + order] = np.asarray(v, dtype=complex).ravel()
        return cls(out, order, tail_bound)

    def left_const(self, a):
        """Apply a constant matrix to every coefficient: (A f)(z)."""
        a = np.asarray(a, dtype=complex)
        out = np.einsum("ab,nb->na", a, self.coeffs)
        return VectorLaurent(out, self.order, float(np.linalg.norm(a, 2)) * self.tail_bound)

    def flip(self):
        """The flip J: (Jf)(z) = conj(z) * f(conj(z)); coefficient m picks up a_{-m-1}."""
        order = self.order + 1
        out = np.zeros((2 * order + 1, self.dim), dtype=complex)
        # m + order = index of m; source n = -m-1 at n + self.order
        for m in range(-order, order):
            n = -m - 1
            if abs(n) <= self.order:
                out[m + order] = self.coeffs[n + self.order]
        return VectorLaurent(out, order, self.tail_bound).trim()

    def to_json(self):
        doc = {}
        for idx in range(2 * self.order + 1):
            if np.any(self.coeffs[idx] != 0):
                doc[str(idx - self.order)] = vector_to_json(self.coeffs[idx])
        return {"dim": self.dim, "coeffs": doc, "trunc_order": self.order,
                "tail_bound": self.tail_bound}

    @classmethod
    def from_json(cls, obj, field="laurent"):
        dim, order, tail, raw = _laurent_header(obj, field)
        out = np.zeros((2 * order + 1, dim), dtype=complex)
        for key, val in raw.items():
            n = _coeff_index(key, order, field)
            out[n + order] = vector_from_json(val, f"{field}.coeffs[{key}]", length=dim)
        return cls(out, order, tail)


class MatrixLaurent(_Laurent):
    """Laurent series with coefficients in the d x d matrices."""

    def _check_shape(self, coeffs):
        if coeffs.ndim != 3 or coeffs.shape[1] != coeffs.shape[2]:
            raise ValueError("MatrixLaurent wants coefficients of shape (2M+1, d, d)")

    @classmethod
    def zeros(cls, dim, order=0):
        return cls(np.zeros((2 * order + 1, dim, dim), dtype=complex), order)

    @classmethod
    def constant(cls, mat):
        mat = np.asarray(mat, dtype=complex)
        return cls(mat[None, :, :], 0)

    @classmethod
    def identity(cls, dim):
        return cls.constant(np.eye(dim))

    @classmethod
    def monomial(cls, n, mat):
        mat = np.asarray(mat, dtype=complex)
        order = abs(int(n))
        out = np.zeros((2 * order + 1,) + mat.shape, dtype=complex)
        out[n + order] = mat
        return cls(out, order)

    @classmethod
    def from_coeff_map(cls, entries, dim, tail_bound=0.0):
        order = max([abs(int(n)) for n in entries], default=0)
        out = np.zeros((2 * order + 1, dim, dim), dtype=complex)
        for n, v in entries.items():
            out[int(n) + order] = np.asarray(v, dtype=complex)
        return cls(out, order, tail_bound)

    def mul(self, other):
        """Exact convolution product F * g (g vector or matrix valued)."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in series product")
        order = self.order + other.order
        shape = (2 * order + 1,) + other.coeffs.shape[1:]
        out = np.zeros(shape, dtype=complex)
        spec = "ab,nb->na" if isinstance(other, VectorLaurent) else "ab,nbc->nac"
        norms = self._coeff_norms()
        width = 2 * other.order + 1
        for idx in range(2 * self.order + 1):
            if norms[idx] == 0.0:
                continue
            lo = idx  # (k + M_F) + (m + M_g) indexes the result slot directly
            out[lo:lo + width] += np.einsum(spec, self.coeffs[idx], other.coeffs)
        tail = self.sup_bound() * other.tail_bound + self.tail_bound * other.sup_bound()
        return type(other)(out, order, tail).trim()

    def adjoint_star(self):
        """F*(z) = sum_n F_n^* z^{-n}: pointwise adjoint of the boundary values."""
        out = np.conj(np.transpose(self.coeffs[::-1], (0, 2, 1)))
        return MatrixLaurent(out, self.order, self.tail_bound)

    def tilde(self):
        """The reflected function F~(z) = F(conj(z))^*: coefficientwise adjoint."""
        out = np.conj(np.transpose(self.coeffs, (0, 2, 1)))
        return MatrixLaurent(out, self.order, self.tail_bound)

    def left_const(self, a):
        a = np.asarray(a, dtype=complex)
        out = np.einsum("ab,nbc->nac", a, self.coeffs)
        return MatrixLaurent(out, self.order, float(np.linalg.norm(a, 2)) * self.tail_bound)

    def right_const(self, b):
        b = np.asarray(b, dtype=complex)
        out = np.einsum("nab,bc->nac", self.coeffs, b)
        return MatrixLaurent(out, self.order, float(np.linalg.norm(b, 2)) * self.tail_bound)

    def column(self, j):
        return VectorLaurent(self.coeffs[:, :, j], self.order, self.tail_bound)

    def to_json(self):
        doc = {}
        for idx in range(2 * self.order + 1):
            if np.any(self.coeffs[idx] != 0):
                doc[str(idx - self.order)] = matrix_to_json(self.coeffs[idx])
        return {"dim": self.dim, "coeffs": doc, "trunc_order": self.order,
                "tail_bound": self.tail_bound}

    @classmethod
    def from_json(cls, obj, field="laurent"):
        dim, order, tail, raw = _laurent_header(obj, field)
        out = np.zeros((2 * order + 1, dim, dim), dtype=complex)
        for key, val in raw.items():
            n = _coeff_index(key, order, field)
            out[n + order] = matrix_from_json(val, f"{field}.coeffs[{key}]", shape=(dim, dim))
        return cls(out, order, tail)


def _laurent_header(obj, field):
    if not isinstance(obj, dict):
        raise ScenarioError(f"{field}: expected an object")
    for key in ("dim", "coeffs"):
        if key not in obj:
            raise ScenarioError(f"{field}.{key}: missing")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ScenarioError(f"{field}.dim: expected a positive integer")
    raw = obj["coeffs"]
    if not isinstance(raw, dict):
        raise ScenarioError(f"{field}.coeffs: expected an object keyed by index")
    declared = obj.get("trunc_order")
    indices = []
    for key in raw:
        try:
            indices.append(int(key))
        except ValueError:
            raise ScenarioError(f"{field}.coeffs[{key!r}]: key is not an integer index") from None
    order = max([abs(n) for n in indices], default=0)
    if declared is not None:
        if not isinstance(declared, int) or declared < order:
            raise ScenarioError(f"{field}.trunc_order: must be an integer >= {order}")
        order = declared
    tail = obj.get("tail_bound", 0.0)
    if not isinstance(tail, (int, float)) or tail < 0:
        raise ScenarioError(f"{field}.tail_bound: expected a nonnegative number")
    return dim, order, float(tail), raw


def _coeff_index(key, order, field):
    n = int(key)
    if abs(n) > order:
        raise ScenarioError(f"{field}.coeffs[{key}]: index outside trunc_order window")
    return n


# -- functional aliases (module-level API mirrors the operation names) ----

def mul(f_matrix, g):
    return f_matrix.mul(g)


def adjoint_star(f_matrix):
    return f_matrix.adjoint_star()


def flip(f):
    return f.flip()


def reflect_z(f):
    return f.reflect_z()


def riesz_split(f):
    return f.riesz_split()


def evaluate(f, z0):
    return f.evaluate(z0)


def evaluate_many(f, zs):
    """Values at an array of unimodular points (stored part only; the error
    is bounded by tail_bound at each point)."""
    zs = np.asarray(zs, dtype=complex).ravel()
    powers = zs[:, None] ** np.arange(-f.order, f.order + 1)[None, :]
    return np.tensordot(powers, f.coeffs, axes=(1, 0))


def sample_circle(f, n_grid):
    return f.sample_circle(n_grid)


def inner_product(f, g):
    """L^2 pairing <f, g>, linear in f, conjugate-linear in g.

    By Parseval this is the sum over the common window of <c_n(f), c_n(g)>;
    for matrix series the coefficient pairing is Hilbert-Schmidt.
    """
    if type(f) is not type(g) or f.coeffs.shape[1:] != g.coeffs.shape[1:]:
        raise ValueError("inner_product needs two series of the same kind and dimension")
    order = min(f.order, g.order)
    lo_f = f.order - order
    lo_g = g.order - order
    a = f.coeffs[lo_f:lo_f + 2 * order + 1]
    b = g.coeffs[lo_g:lo_g + 2 * order + 1]
    return complex(np.sum(a * np.conj(b)))


def fit_circle_samples(values, order, kind="vector", drop_tol=0.0):
    """Interpolate circle samples back to a Laurent window [-order, order].

    ``values`` holds samples at the N-th roots of unity (N along axis 0,
    N > 2*order). Mass in discrete-Fourier bins outside the window, and any
    coefficient whose norm falls below drop_tol times the largest, is folded
    into tail_bound rather than silently discarded.
    """
    values = np.asarray(values, dtype=complex)
    n_grid = values.shape[0]
    if n_grid <= 2 * order:
        raise ValueError("need more samples than window slots")
    bins = np.fft.fft(values, axis=0) / n_grid
    shape = (2 * order + 1,) + values.shape[1:]
    out = np.zeros(shape, dtype=complex)
    for n in range(-order, order + 1):
        out[n + order] = bins[n % n_grid]
    inside = {n % n_grid for n in range(-order, order + 1)}
    rest = [k for k in range(n_grid) if k not in inside]
    tail = float(np.linalg.norm(bins[rest])) if rest else 0.0
    if drop_tol > 0.0:
        norms = np.linalg.norm(out.reshape(shape[0], -1), axis=1)
        top = norms.max()
        small = norms <= drop_tol * top
        if np.any(small) and top > 0:
            tail += float(np.linalg.norm(norms[small]))
            out[small] = 0.0
    cls = VectorLaurent if kind == "vector" else MatrixLaurent
    return cls(out, order, tail).trim()


def refit_on_circle(fn, order, kind="matrix", n_grid=None, drop_tol=1e-13):
    """Fit fn (a vectorized map from circle points to values) to a Laurent window.

    Samples at the roots of unity, projects onto [-order, order], then
    estimates the residual at half-offset points and folds it into
    tail_bound. This is the honest route for functions only available
    pointwise (Crofoot transforms and their images).
    """
    if n_grid is None:
        n_grid = max(512, 4 * (order + 1))
    nodes = np.exp(2j * np.pi * np.arange(n_grid) / n_grid)
    fitted = fit_circle_samples(fn(nodes), order, kind=kind, drop_tol=drop_tol)
    half = np.exp(1j * np.pi / n_grid)
    twist = half ** np.arange(-fitted.order, fitted.order + 1)
    shape = twist.shape + (1,) * (fitted.coeffs.ndim - 1)
    twisted = type(fitted)(fitted.coeffs * twist.reshape(shape), fitted.order)
    resid = twisted.sample_circle(n_grid) - fn(nodes * half)
    rms = float(np.sqrt(np.mean(np.sum(np.abs(resid.reshape(n_grid, -1)) ** 2, axis=1))))
    return type(fitted)(fitted.coeffs, fitted.order, fitted.tail_bound + rms)


def geometric_coeffs(ratio, order):
    """Coefficients of 1/(1 - ratio*z) on [0, order] plus its certified L^2 tail."""
    ratio = complex(ratio)
    powers = ratio ** np.arange(order + 1)
    r = abs(ratio)
    tail = 0.0 if r == 0 else r ** (order + 1) / np.sqrt(1.0 - r * r)
    return powers, float(tail)
