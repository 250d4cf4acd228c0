"""Antilinear symmetries on C^d and on the series spaces built over it.

A conjugation J x = U conj(x) is fixed by a unitary symmetric matrix U.
From it we build the coefficientwise lift Jstar, the unitary transform
tau_Theta f = conj(z) Thetatilde(z) f(conj(z)), and the pointwise
conjugation C_Theta f = Theta(z) conj(z) J(f(z)), which agrees with
Jstar tau_Theta exactly when Theta is J-symmetric.

Crofoot maps between K_Theta and K_{Theta^W} are realised by sampling the
resolvent-type factor on the unit circle and refitting a series.
"""

from __future__ import annotations

import numpy as np

from .blaschke import MAX_POLE_ABS, _check_unitary
from .jsonio import ScenarioError, matrix_from_json, matrix_to_json
from .laurent import MatrixLaurent, VectorLaurent, evaluate_many, refit_on_circle

__all__ = [
    "Conjugation", "CrofootData", "jstar", "tau", "CTheta",
    "crofoot_map", "sandwich_pointwise", "sandwich_reflected",
    "jsymmetry_defect",
]

_SYM_TOL = 1e-12


class Conjugation:
    """J x = U conj(x) with U unitary and symmetric (so J^2 = I)."""

    __slots__ = ("U", "dim")

    def __init__(self, u):
        u = np.asarray(u, dtype=complex)
        _check_unitary(u, "conjugation matrix")
        if np.max(np.abs(u - u.T)) > _SYM_TOL:
            raise ValueError("conjugation matrix must be symmetric")
        object.__setattr__(self, "U", u)
        object.__setattr__(self, "dim", u.shape[0])

    def __setattr__(self, name, value):
        raise AttributeError("Conjugation is immutable")

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    def apply(self, x):
        return self.U @ np.conj(np.asarray(x, dtype=complex))

    def apply_mat(self, m):
        """J M J for a matrix M (the conjugated operator on C^d)."""
        return self.U @ np.conj(m) @ np.conj(self.U)

    def to_json(self):
        return {"unitary": matrix_to_json(self.U)}

    @classmethod
    def from_json(cls, obj, field="conjugation"):
        if not isinstance(obj, dict) or "unitary" not in obj:
            raise ScenarioError(f"{field}: expected an object with a 'unitary' key")
        u = matrix_from_json(obj["unitary"], f"{field}.unitary")
        try:
            return cls(u)
        except ValueError as exc:
            raise ScenarioError(f"{field}: {exc}") from exc


def jstar(conj_j, f):
    """Coefficientwise lift: (Jstar f)(z) = J(f(conj(z))), a_n -> J(a_n)."""
    if isinstance(f, MatrixLaurent):
        raise TypeError("jstar acts on vector series; use sandwich_* for matrix symbols")
    coeffs = np.einsum("ab,nb->na", conj_j.U, np.conj(f.coeffs))
    return VectorLaurent(coeffs, f.order, f.tail_bound)


def tau(theta_series, f):
    """tau_Theta f: the series of conj(z) Thetatilde(z) f(conj(z))."""
    return theta_series.tilde().mul(f.reflect_z()).shift(-1)


class CTheta:
    """C_Theta f = Theta(z) conj(z) J(f(z)), evaluated on the series window.

    is_involution records whether Theta passed the pointwise J-symmetry
    check; only then is C_Theta a conjugation on K_Theta (and only then
    does it coincide with Jstar tau_Theta).
    """

    def __init__(self, theta_series, conj_j, is_involution):
        self.theta_series = theta_series
        self.conj_j = conj_j
        self.is_involution = bool(is_involution)

    def apply(self, f):
        flipped = np.einsum("ab,nb->na", self.conj_j.U, np.conj(f.coeffs[::-1]))
        h = VectorLaurent(flipped, f.order, f.tail_bound).shift(-1)
        return self.theta_series.mul(h)


def sandwich_pointwise(conj2, f_series, conj1):
    """Series of z -> J2 F(z) J1 composed as maps: G_n = U2 conj(F_{-n}) conj(U1)."""
    coeffs = np.einsum("ab,nbc,cd->nad",
                       conj2.U, np.conj(f_series.coeffs[::-1]), np.conj(conj1.U))
    return MatrixLaurent(coeffs, f_series.order, f_series.tail_bound)


def sandwich_reflected(conj2, f_series, conj1):
    """Series of z -> J2 F(conj(z)) J1 composed as maps: G_n = U2 conj(F_n) conj(U1)."""
    coeffs = np.einsum("ab,nbc,cd->nad",
                       conj2.U, np.conj(f_series.coeffs), np.conj(conj1.U))
    return MatrixLaurent(coeffs, f_series.order, f_series.tail_bound)


def jsymmetry_defect(theta_series, conj_j, n_samples=64):
    """max over sample nodes of norm(J Theta(z) J - Theta(z)^*)."""
    nodes = np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    vals = evaluate_many(theta_series, nodes)
    uj = conj_j.U
    sym = uj[None] @ np.conj(vals) @ np.conj(uj)[None]
    gap = sym - np.conj(np.transpose(vals, (0, 2, 1)))
    return float(np.linalg.norm(gap, axis=(1, 2)).max())


class CrofootData:
    """Strict contraction W with the two defect square roots attached."""

    __slots__ = ("W", "D_W", "D_Wstar", "dim")

    def __init__(self, w):
        w = np.asarray(w, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("Crofoot parameter must be a square matrix")
        if np.linalg.norm(w, 2) > MAX_POLE_ABS:
            raise ValueError(f"Crofoot parameter norm exceeds the {MAX_POLE_ABS} cap")
        eye = np.eye(w.shape[0])
        object.__setattr__(self, "W", w)
        object.__setattr__(self, "D_W", _psd_sqrt(eye - w.conj().T @ w))
        object.__setattr__(self, "D_Wstar", _psd_sqrt(eye - w @ w.conj().T))
        object.__setattr__(self, "dim", w.shape[0])

    def __setattr__(self, name, value):
        raise AttributeError("CrofootData is immutable")

    def to_json(self):
        return {"w": matrix_to_json(self.W)}

    @classmethod
    def from_json(cls, obj, field="w"):
        if not isinstance(obj, dict) or "w" not in obj:
            raise ScenarioError(f"{field}: expected an object with a 'w' key")
        w = matrix_from_json(obj["w"], f"{field}.w")
        try:
            return cls(w)
        except ValueError as exc:
            raise ScenarioError(f"{field}: {exc}") from exc


def _psd_sqrt(mat):
    w, vecs = np.linalg.eigh(mat)
    w = np.clip(w, 0.0, None)
    return (vecs * np.sqrt(w)) @ vecs.conj().T


def crofoot_map(theta_series, crofoot, f, direction="forward", n_grid=None):
    """Unitary Crofoot map between K_Theta and K_{Theta^W}.

    direction "forward": J_W f = D_{W*} (I - Theta W*)^{-1} f, with
    theta_series the SOURCE inner function Theta.
    direction "adjoint": J_W^* g = D_{W*} (I + Theta^W W*)^{-1} g, with
    theta_series the IMAGE inner function Theta^W.
    """
    if direction == "forward":
        sign = -1.0
    elif direction == "adjoint":
        sign = 1.0
    else:
        raise ValueError(f"unknown Crofoot direction {direction!r}")
    eye = np.eye(crofoot.dim)
    wstar = crofoot.W.conj().T

    def fn(nodes):
        tv = evaluate_many(theta_series, nodes)
        fv = evaluate_many(f, nodes)
        core = np.linalg.solve(eye + sign * (tv @ wstar), fv[..., None])
        return (crofoot.D_Wstar @ core)[..., 0]

    order = max(theta_series.order, f.order)
    return refit_on_circle(fn, order, kind="vector", n_grid=n_grid)
