"""Finite-dimensional model spaces K_Theta and their shift structure.

For a pure rational inner Theta, K_Theta = H^2 ominus Theta H^2 is spanned
by the recursion K_{B Theta'} = K_B + B K_{Theta'}: one elementary factor
with pole a and frame columns v_i contributes sqrt(1-|a|^2)/(1-conj(a)z) v_i,
and the remaining factors are pushed through by multiplication. The basis
this produces is orthonormal in exact arithmetic (factor-major order); a
symmetric Loewdin pass absorbs the truncation-level defect without
reordering or sign flips.

All operators live as matrices in that fixed basis: the compressed shift
S[i, j] = <z b_j, b_i>, the defect operators D = I - S S*, Dtilde = I - S* S,
and the projections onto the defect spaces spanned by the kernels k_0 e_l
and ktilde_0 e_l.
"""

from __future__ import annotations

import numpy as np

from .blaschke import BlaschkePotapovProduct, PURITY_MARGIN, validate
from .laurent import MatrixLaurent, VectorLaurent, geometric_coeffs, inner_product
from .jsonio import matrix_to_json

__all__ = ["ModelSpace", "random_modifier"]

_RANK_TOL = 1e-8
_GRAM_EXACT = 1e-14


def _elementary_basis(factor, order):
    powers, tail = geometric_coeffs(np.conj(factor.a), order)
    scale = np.sqrt(1.0 - abs(factor.a) ** 2)
    out = []
    for col in range(factor.rank):
        v = factor.frame[:, col]
        coeffs = np.zeros((2 * order + 1, factor.dim), dtype=complex)
        coeffs[order:] = scale * powers[:, None] * v[None, :]
        out.append(VectorLaurent(coeffs, order, scale * tail).trim())
    return out


def _product_basis(factors, order):
    if not factors:
        return []
    head, rest = factors[0], factors[1:]
    basis = _elementary_basis(head, order)
    if rest:
        head_series = head.laurent(order)
        basis += [head_series.mul(g).truncate(order) for g in _product_basis(rest, order)]
    return basis


class ModelSpace:
    """K_Theta with a fixed orthonormal basis and the derived operator data."""

    def __init__(self, theta_series, basis, theta=None):
        if not basis:
            raise ValueError("model space needs at least one basis function")
        self.theta = theta
        self.theta_series = theta_series
        self.dim = theta_series.dim
        self.order = max(theta_series.order, max(b.order for b in basis))
        self.dim_K = len(basis)
        self.basis = tuple(self._orthonormalize(basis))
        # Theta(0) is the 0-indexed coefficient; refit series may carry
        # negligible anti-analytic noise, which a window sum at 0 cannot take.
        theta0 = theta.theta0() if theta is not None else theta_series.coeff(0)
        self.theta0 = np.asarray(theta0, dtype=complex)
        if np.linalg.norm(self.theta0, 2) >= 1.0 - PURITY_MARGIN:
            raise ValueError("Theta is not pure: norm(Theta(0)) too close to 1")
        self._stack = np.stack([b.with_order(self.order).coeffs for b in self.basis])
        self._build_shift_structure()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_product(cls, theta, order=64):
        report = validate(theta)
        if not report.inner:
            raise ValueError(f"Theta fails the sampled inner check (defect {report.max_unitary_defect:.2e})")
        if not report.pure:
            raise ValueError(f"Theta is not pure (norm(Theta(0)) = {report.theta0_norm:.6f})")
        if theta.model_dim() == 0:
            raise ValueError("constant Theta has a trivial model space")
        basis = [b.left_const(theta.left_unitary) for b in _product_basis(theta.factors, order)]
        return cls(theta.laurent(order), basis, theta=theta)

    @classmethod
    def from_basis(cls, theta_series, basis):
        """Space carried by an explicitly given (near-)orthonormal basis.

        Used for spaces reached through a unitary map (Crofoot images) where
        no Potapov factorization of the target Theta is on hand.
        """
        return cls(theta_series, list(basis), theta=None)

    def _orthonormalize(self, basis):
        order = max(b.order for b in basis)
        stack = np.stack([b.with_order(order).coeffs for b in basis])
        flat = stack.reshape(len(basis), -1)
        gram = flat @ flat.conj().T
        gram = gram.T  # gram[i, j] = <b_j, b_i>
        if np.max(np.abs(gram - np.eye(len(basis)))) <= _GRAM_EXACT:
            return list(basis)
        w, vecs = np.linalg.eigh(gram)
        if w.min() <= 1e-10:
            raise ValueError("basis functions are numerically dependent")
        inv_half = (vecs * (w ** -0.5)) @ vecs.conj().T
        mixed = np.tensordot(inv_half.T, stack, axes=(1, 0))
        tails = np.array([b.tail_bound for b in basis])
        out = []
        for k in range(len(basis)):
            tail = float(np.abs(inv_half[:, k]) @ tails)
            out.append(VectorLaurent(mixed[k], order, tail).trim())
        return out

    def _build_shift_structure(self):
        stack = self._stack
        shifted = np.zeros_like(stack)
        shifted[:, 1:, :] = stack[:, :-1, :]
        self.S = np.einsum("jnd,ind->ij", shifted, np.conj(stack))
        self.S_star = self.S.conj().T
        eye = np.eye(self.dim_K)
        self.D = eye - self.S @ self.S_star
        self.D_tilde = eye - self.S_star @ self.S
        self.k0_cols = np.stack(
            [self.coords(self.kernel(0.0, np.eye(self.dim)[l], variant="k")) for l in range(self.dim)],
            axis=1)
        self.kt0_cols = np.stack(
            [self.coords(self.kernel(0.0, np.eye(self.dim)[l], variant="ktilde")) for l in range(self.dim)],
            axis=1)
        self.P_D, self.defect_dim = _span_projection(self.k0_cols)
        self.P_Dt, self.defect_dim_tilde = _span_projection(self.kt0_cols)
        self.omega = np.linalg.pinv(self.k0_cols, rcond=1e-10)
        self.j_theta = _psd_pinv(self.D)

    # -- coordinates -------------------------------------------------------

    def coords(self, f):
        """Coefficient vector of P_Theta-projected f is NOT taken here: this is
        the plain pairing <f, b_i>, which equals the coordinates whenever
        f is already a member (and the projection coordinates in general)."""
        return np.array([inner_product(f, b) for b in self.basis])

    def from_coords(self, c):
        c = np.asarray(c, dtype=complex).ravel()
        coeffs = np.tensordot(c, self._stack, axes=(0, 0))
        tail = float(np.abs(c) @ np.array([b.tail_bound for b in self.basis]))
        return VectorLaurent(coeffs, self.order, tail).trim()

    def membership_gap(self, f):
        """L^2 distance from f to the span of the basis (0 for members)."""
        rec = self.from_coords(self.coords(f))
        return (f - rec.with_order(max(f.order, rec.order))).norm()

    # -- projections and kernels -------------------------------------------

    def project(self, f):
        """P_Theta f = f_+ - Theta P_+(Theta^* f_+)."""
        f_plus = f.riesz_split()[0]
        g_plus = self.theta_series.adjoint_star().mul(f_plus).riesz_split()[0]
        return f_plus - self.theta_series.mul(g_plus).with_order(
            max(f_plus.order, self.theta_series.order + g_plus.order))

    def kernel(self, lam, x, variant="k"):
        """Reproducing kernel members of K_Theta at lam in the open disk.

        variant "k":      (1 - conj(lam) z)^{-1} (I - Theta(z) Theta(lam)^*) x
        variant "ktilde": (z - lam)^{-1} (Theta(z) - Theta(lam)) x
        """
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise ValueError("kernel parameter must lie in the open disk")
        x = np.asarray(x, dtype=complex).ravel()
        if x.size != self.dim:
            raise ValueError("kernel direction has the wrong dimension")
        if variant == "k":
            theta_lam = self._theta_at(lam)
            v = VectorLaurent.constant(x) - self.theta_series.mul(
                VectorLaurent.constant(theta_lam.conj().T @ x))
            powers, tail = geometric_coeffs(np.conj(lam), self.order)
            szego = np.zeros((2 * self.order + 1, self.dim, self.dim), dtype=complex)
            szego[self.order:] = powers[:, None, None] * np.eye(self.dim)
            profile = MatrixLaurent(szego, self.order, np.sqrt(self.dim) * tail)
            return profile.mul(v).truncate(self.order)
        if variant == "ktilde":
            tcoeffs = self.theta_series.coeffs
            off = self.theta_series.order
            out = np.zeros((2 * self.order + 1, self.dim), dtype=complex)
            acc = np.zeros(self.dim, dtype=complex)
            for j in range(self.theta_series.order, -1, -1):
                acc = lam * acc + (tcoeffs[off + j + 1] @ x if j + 1 <= off else 0.0)
                if j <= self.order:
                    out[self.order + j] = acc
            return VectorLaurent(out, self.order, self.theta_series.tail_bound).trim()
        raise ValueError(f"unknown kernel variant {variant!r}")

    def _theta_at(self, lam):
        if self.theta is not None:
            return self.theta.evaluate(complex(lam))
        return self.theta_series.evaluate(lam)

    # -- shift modifications -------------------------------------------------

    def modified_shift(self, x_map, tol=1e-8):
        """S_{Theta,X} = S + P_D (X - S) P_Dtilde for X mapping Dtilde into D.

        x_map is a dim_K x dim_K matrix in basis coordinates; only its
        compression to the defect pair matters, but a map whose restriction
        to Dtilde leaks out of D is rejected.
        """
        x_map = np.asarray(x_map, dtype=complex)
        if x_map.shape != (self.dim_K, self.dim_K):
            raise ValueError("modifier matrix has the wrong shape")
        restricted = x_map @ self.P_Dt
        leak = np.linalg.norm((np.eye(self.dim_K) - self.P_D) @ restricted)
        if leak > tol * (1.0 + np.linalg.norm(x_map)):
            raise ValueError(f"modifier range leaves the defect space (leak {leak:.2e})")
        return self.S + self.P_D @ (restricted - self.S) @ self.P_Dt

    # -- reporting -----------------------------------------------------------

    def describe(self):
        return {
            "dim": self.dim,
            "dim_K": self.dim_K,
            "trunc_order": self.order,
            "defect_dim": self.defect_dim,
            "defect_dim_tilde": self.defect_dim_tilde,
            "S": matrix_to_json(self.S),
            "D": matrix_to_json(self.D),
            "D_tilde": matrix_to_json(self.D_tilde),
            "basis": [b.to_json() for b in self.basis],
        }


def _span_projection(cols):
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((cols.shape[0], cols.shape[0])), 0
    rank = int(np.sum(s > _RANK_TOL * s[0]))
    q = u[:, :rank]
    return q @ q.conj().T, rank


def _psd_pinv(mat):
    w, vecs = np.linalg.eigh(mat)
    cut = _RANK_TOL * max(w.max(), 1e-300)
    inv = np.where(w > cut, 1.0 / np.where(w > cut, w, 1.0), 0.0)
    return (vecs * inv) @ vecs.conj().T


def random_modifier(space, rng, scale=1.0):
    """A legal modifier map: a random matrix compressed to P_D (.) P_Dtilde."""
    raw = rng.standard_normal((space.dim_K, space.dim_K)) \
        + 1j * rng.standard_normal((space.dim_K, space.dim_K))
    return scale * (space.P_D @ raw @ space.P_Dt)
