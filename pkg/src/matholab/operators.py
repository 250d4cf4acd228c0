"""Truncated Toeplitz and Hankel operators between two model spaces.

A symbol Phi acts by A_Phi f = P_{Theta2}(Phi f) (Toeplitz) or
B_Phi f = P_{Theta2} J (I - P_+)(Phi f) (Hankel, with the flip
(J f)(z) = conj(z) f(conj(z))). Everything downstream is matrix algebra
in the fixed orthonormal bases of the two spaces: membership in the
operator classes via displacement equations, the equivalent
shift-invariance predicates, symbol recovery, symbol-kernel tests, and a
registry of conjugation/transform identities checked as exact matrix
equalities up to tolerance.

Antilinear maps are carried as matrices L with action c -> L conj(c);
composing two of them therefore yields the linear matrix L2 conj(L1),
which is how every registry left-hand side below becomes plain matmul.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import crofoot_theta
from .conjugations import (CTheta, Conjugation, CrofootData, crofoot_map, jstar,
                           jsymmetry_defect, sandwich_pointwise, sandwich_reflected, tau)
from .jsonio import matrix_to_json
from .laurent import MatrixLaurent, VectorLaurent, evaluate_many, refit_on_circle
from .modelspace import ModelSpace

__all__ = [
    "ModelOperator", "MembershipReport", "build_matto", "build_matho",
    "displacement_check", "shift_invariance_check", "recover_symbol",
    "kernel_test", "TransformInputs", "verify_transform", "REGISTRY_NAMES",
]

_JSYM_TOL = 1e-8


@dataclass(frozen=True)
class MembershipReport:
    kind: str
    displacement_norm: float
    residual: float
    threshold: float
    verdict: str

    def accepted(self):
        return self.verdict == "accept"

    def to_json(self):
        return {"kind": self.kind,
                "displacement_norm": self.displacement_norm,
                "residual": self.residual,
                "threshold": self.threshold,
                "verdict": self.verdict}


def _report(kind, disp, resid, threshold):
    verdict = "accept" if resid <= threshold * (1.0 + disp) else "reject"
    return MembershipReport(kind, float(disp), float(resid), float(threshold), verdict)


class ModelOperator:
    """A matrix over (basis of K_Theta1) -> (basis of K_Theta2)."""

    def __init__(self, domain, codomain, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (codomain.dim_K, domain.dim_K):
            raise ValueError("operator matrix shape does not match the two spaces")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    def to_json(self):
        out = {"matrix": matrix_to_json(self.matrix)}
        if self.domain.theta is not None:
            out["theta1"] = self.domain.theta.to_json()
        if self.codomain.theta is not None:
            out["theta2"] = self.codomain.theta.to_json()
        return out


def _check_symbol(symbol, space1, space2):
    if symbol.dim != space1.dim or symbol.dim != space2.dim:
        raise ValueError("symbol dimension does not match the spaces")


def build_matto(space1, space2, symbol):
    """Matrix of f -> P_{Theta2}(Phi f) on K_{Theta1}."""
    _check_symbol(symbol, space1, space2)
    cols = [space2.coords(symbol.mul(b)) for b in space1.basis]
    return ModelOperator(space1, space2, np.stack(cols, axis=1))


def build_matho(space1, space2, symbol):
    """Matrix of f -> P_{Theta2} J (I - P_+)(Phi f) on K_{Theta1}."""
    _check_symbol(symbol, space1, space2)
    cols = []
    for b in space1.basis:
        minus = symbol.mul(b).riesz_split()[1]
        cols.append(space2.coords(minus.flip()))
    return ModelOperator(space1, space2, np.stack(cols, axis=1))


# -- membership characterizations -------------------------------------------

_MODIFIED_BASE = {"MT": "T1", "MH-a": "H1", "MH-b": "H2", "MH-c": "H3", "MH-d": "H4"}

# kind -> (displacement, right defect projection on space1, left on space2)
_DISPLACEMENTS = {
    "T1": (lambda a, s1, s1s, s2, s2s: a - s2 @ a @ s1s, "P_D", "P_D"),
    "T2": (lambda a, s1, s1s, s2, s2s: a - s2s @ a @ s1, "P_Dt", "P_Dt"),
    "T3": (lambda a, s1, s1s, s2, s2s: s2s @ a - a @ s1s, "P_D", "P_Dt"),
    "T4": (lambda a, s1, s1s, s2, s2s: s2 @ a - a @ s1, "P_Dt", "P_D"),
    "H1": (lambda a, s1, s1s, s2, s2s: a - s2 @ a @ s1, "P_Dt", "P_D"),
    "H2": (lambda a, s1, s1s, s2, s2s: s2s @ a - a @ s1, "P_Dt", "P_Dt"),
    "H3": (lambda a, s1, s1s, s2, s2s: a - s2s @ a @ s1s, "P_D", "P_Dt"),
    "H4": (lambda a, s1, s1s, s2, s2s: s2 @ a - a @ s1s, "P_D", "P_D"),
}


def displacement_check(op, kind, threshold=1e-8, modifier1=None, modifier2=None):
    """Membership via the residual of a displacement equation.

    The displacement of an in-class operator is supported on the kind's
    defect pair; the report's residual is the Frobenius mass outside it.
    Modified-shift kinds (MT, MH-a..d) replace both compressed shifts by
    S_{Theta,X} and need the two modifier maps.
    """
    base = _MODIFIED_BASE.get(kind, kind)
    if base not in _DISPLACEMENTS:
        raise ValueError(f"unknown displacement kind {kind!r}")
    if kind in _MODIFIED_BASE:
        if modifier1 is None or modifier2 is None:
            raise ValueError(f"kind {kind} needs modifier maps for both spaces")
        sh1 = op.domain.modified_shift(modifier1)
        sh2 = op.codomain.modified_shift(modifier2)
    else:
        sh1, sh2 = op.domain.S, op.codomain.S
    expr, right_name, left_name = _DISPLACEMENTS[base]
    x = expr(op.matrix, sh1, sh1.conj().T, sh2, sh2.conj().T)
    q_right = np.eye(op.domain.dim_K) - getattr(op.domain, right_name)
    q_left = np.eye(op.codomain.dim_K) - getattr(op.codomain, left_name)
    resid = np.linalg.norm(q_left @ x @ q_right)
    return _report(kind, np.linalg.norm(x), resid, threshold)


def _complement_basis(proj):
    w, vecs = np.linalg.eigh(proj)
    return vecs[:, w < 0.5]


# family, kind -> (right defect on space1, left defect on space2, lhs, rhs),
# where the predicate is <lhs f, g> = <rhs f, g> over the orthocomplements.
_INVARIANCE = {
    ("toeplitz", "a"): ("P_D", "P_D",
                        lambda a, s1, s2: s2 @ a @ s1.conj().T, lambda a, s1, s2: a),
    ("toeplitz", "b"): ("P_Dt", "P_Dt",
                        lambda a, s1, s2: s2.conj().T @ a @ s1, lambda a, s1, s2: a),
    ("toeplitz", "c"): ("P_D", "P_Dt",
                        lambda a, s1, s2: a @ s1.conj().T, lambda a, s1, s2: s2.conj().T @ a),
    ("toeplitz", "d"): ("P_Dt", "P_D",
                        lambda a, s1, s2: a @ s1, lambda a, s1, s2: s2 @ a),
    ("hankel", "a"): ("P_Dt", "P_D",
                      lambda a, s1, s2: s2 @ a @ s1, lambda a, s1, s2: a),
    ("hankel", "b"): ("P_Dt", "P_Dt",
                      lambda a, s1, s2: a @ s1, lambda a, s1, s2: s2.conj().T @ a),
    ("hankel", "c"): ("P_D", "P_Dt",
                      lambda a, s1, s2: s2.conj().T @ a @ s1.conj().T, lambda a, s1, s2: a),
    ("hankel", "d"): ("P_D", "P_D",
                      lambda a, s1, s2: a @ s1.conj().T, lambda a, s1, s2: s2 @ a),
}


def shift_invariance_check(op, family, kind, threshold=1e-8):
    """Bilinear shift-invariance predicate on the defect orthocomplements.

    Example, hankel kind a: <B z f, conj(z) g> = <B f, g> for all f with
    z f still in K_{Theta1} and g with conj(z) g still in K_{Theta2}; on
    those subspaces multiplication by z agrees with the compressed shift
    matrices, so each pair becomes one scalar identity.
    """
    key = (family, kind)
    if key not in _INVARIANCE:
        raise ValueError(f"unknown shift-invariance check {family}({kind})")
    right_name, left_name, lhs_fn, rhs_fn = _INVARIANCE[key]
    f_basis = _complement_basis(getattr(op.domain, right_name))
    g_basis = _complement_basis(getattr(op.codomain, left_name))
    if f_basis.shape[1] == 0 or g_basis.shape[1] == 0:
        return _report(f"{family}-{kind}", 0.0, 0.0, threshold)
    s1, s2 = op.domain.S, op.codomain.S
    dev = g_basis.conj().T @ (lhs_fn(op.matrix, s1, s2) - rhs_fn(op.matrix, s1, s2)) @ f_basis
    return _report(f"{family}-{kind}", 0.0, np.max(np.abs(dev)), threshold)


# -- symbol recovery ---------------------------------------------------------

def _columns_to_matrix(cols):
    order = max(c.order for c in cols)
    dim = cols[0].coeffs.shape[1]
    coeffs = np.zeros((2 * order + 1, dim, len(cols)), dtype=complex)
    for j, c in enumerate(cols):
        coeffs[:, :, j] = c.with_order(order).coeffs
    tail = float(np.sqrt(sum(c.tail_bound ** 2 for c in cols)))
    return MatrixLaurent(coeffs, order, tail).trim()


def _vec(m):
    return np.asarray(m).ravel(order="F")


def _unvec(v, rows, cols):
    return np.asarray(v).reshape((rows, cols), order="F")


def _recover_toeplitz(op, threshold):
    s1, s2 = op.domain, op.codomain
    n1, n2 = s1.dim_K, s2.dim_K
    a = op.matrix
    x = a - s2.S @ a @ s1.S_star
    # X = B1 D1 + D2 C2 with C2 = B2*, solved at minimal Frobenius norm.
    system = np.hstack([np.kron(s1.D.T, np.eye(n2)), np.kron(np.eye(n1), s2.D)])
    sol = np.linalg.lstsq(system, _vec(x), rcond=None)[0]
    b1 = _unvec(sol[:n1 * n2], n2, n1)
    b2 = _unvec(sol[n1 * n2:], n2, n1).conj().T
    psi = _columns_to_matrix([s2.from_coords(b1 @ s1.k0_cols[:, l]) for l in range(s1.dim)])
    xi = _columns_to_matrix([s1.from_coords(b2 @ s2.k0_cols[:, l]) for l in range(s2.dim)])
    return psi + xi.adjoint_star()


def recover_symbol(op, family, conj1=None, conj2=None, threshold=1e-8):
    """A representative symbol for an accepted operator, plus the rebuild gap.

    Toeplitz: minimal-Frobenius solve of the T1 displacement factorization,
    then Psi(z) x = (B1 k_0 x)(z) and Xi likewise; Phi = Psi + Xi^*.
    Hankel: transfer to a Toeplitz operator through Jstar_2 (.) C_{Theta1}
    (this needs both Thetas J-symmetric), recover there, and map the symbol
    back. Symbols are representatives only, unique modulo the kernel class.
    """
    if family == "toeplitz":
        rep = displacement_check(op, "T1", threshold)
        if not rep.accepted():
            raise ValueError(f"operator rejected by T1 membership (residual {rep.residual:.2e})")
        phi = _recover_toeplitz(op, threshold)
        rebuilt = build_matto(op.domain, op.codomain, phi)
    elif family == "hankel":
        rep = displacement_check(op, "H1", threshold)
        if not rep.accepted():
            raise ValueError(f"operator rejected by H1 membership (residual {rep.residual:.2e})")
        s1, s2 = op.domain, op.codomain
        conj1 = conj1 if conj1 is not None else Conjugation.identity(s1.dim)
        conj2 = conj2 if conj2 is not None else Conjugation.identity(s2.dim)
        for label, space, conj in (("theta1", s1, conj1), ("theta2", s2, conj2)):
            gap = jsymmetry_defect(space.theta_series, conj)
            if gap > _JSYM_TOL:
                raise ValueError(f"hankel recovery needs J-symmetric {label} (defect {gap:.2e})")
        if s2.theta is None:
            raise ValueError("hankel recovery needs a factored theta2 to reach K of its reflection")
        tilde2 = ModelSpace.from_product(s2.theta.tilde(), s2.order)
        c1 = CTheta(s1.theta_series, conj1, True)
        l_c1 = _map_matrix(c1.apply, s1, s1)
        l_j2 = _map_matrix(lambda f: jstar(conj2, f), s2, tilde2)
        transferred = ModelOperator(s1, tilde2, l_j2 @ np.conj(op.matrix @ l_c1))
        sigma = _recover_toeplitz(transferred, threshold)
        phi = sandwich_pointwise(conj2, sigma, conj1).mul(
            s1.theta_series.adjoint_star()).truncate(s1.order)
        rebuilt = build_matho(op.domain, op.codomain, phi)
    else:
        raise ValueError(f"unknown recovery family {family!r}")
    residual = float(np.linalg.norm(rebuilt.matrix - op.matrix))
    return phi, residual


# -- symbol kernel test ------------------------------------------------------

def _effective_reach(series, rel=1e-12):
    """(most negative, most positive) index with non-negligible coefficient."""
    norms = np.linalg.norm(series.coeffs.reshape(series.coeffs.shape[0], -1), axis=1)
    top = norms.max()
    if top == 0.0:
        return 0, 0
    idx = np.nonzero(norms > rel * top)[0]
    return int(idx.min() - series.order), int(idx.max() - series.order)


def _matrix_units(dim):
    eye = np.eye(dim)
    return [np.outer(eye[:, i], eye[:, j]) for i in range(dim) for j in range(dim)]


def kernel_test(symbol, space1, space2, family, conj1=None, conj2=None, threshold=1e-8):
    """Is Phi in the kernel class (symbols building the zero operator)?

    Toeplitz class: Theta2 H^2 + (Theta1 H^2)^*. Hankel class (with the
    conjugations composed as maps): analytic symbols twisted by constant
    unitaries, plus the reflected sandwiches of Theta2~ z^k E Theta1.
    The least-squares distance of Phi to the within-window span of the
    generators decides the verdict, and the verdict is always cross-checked
    against the directly built operator; for the hankel family the class is
    only known to be contained in the kernel, so a zero operator outside the
    span is reported as "class-gap" rather than an error.
    """
    _check_symbol(symbol, space1, space2)
    dim = space1.dim
    order = max(space1.order, space2.order)
    conj1 = conj1 if conj1 is not None else Conjugation.identity(dim)
    conj2 = conj2 if conj2 is not None else Conjugation.identity(dim)
    lo, hi = _effective_reach(symbol)
    if lo < -order or hi > order:
        raise ValueError(f"symbol support [{lo}, {hi}] exceeds the window [{-order}, {order}]")
    t1 = space1.theta_series
    t2 = space2.theta_series
    d1 = _effective_reach(t1)[1]
    d2 = _effective_reach(t2)[1]
    units = _matrix_units(dim)

    gens = []
    if family == "toeplitz":
        for k in range(order - d2 + 1):
            for e in units:
                gens.append(t2.mul(MatrixLaurent.monomial(k, e)).truncate(order))
        for k in range(order - d1 + 1):
            for e in units:
                gens.append(t1.mul(MatrixLaurent.monomial(k, e)).adjoint_star())
    elif family == "hankel":
        if lo < 0 and order < d1 + d2:
            raise ValueError(
                f"window order {order} cannot hold the hankel kernel generators "
                f"(needs at least {d1 + d2})")
        for k in range(order + 1):
            for e in units:
                gens.append(MatrixLaurent.monomial(
                    k, conj2.U @ e.T @ np.conj(conj1.U)))
        tilde2 = t2.tilde()
        for k in range(order - d1 - d2 + 1):
            for e in units:
                inner = tilde2.mul(MatrixLaurent.monomial(k, e)).mul(t1).truncate(order)
                gens.append(sandwich_pointwise(conj2, inner, conj1))
    else:
        raise ValueError(f"unknown kernel family {family!r}")

    stack = np.stack([g.with_order(order).coeffs.ravel() for g in gens], axis=1)
    target = symbol.with_order(order).coeffs.ravel()
    _, resid, rank, _ = np.linalg.lstsq(stack, target, rcond=None)
    if resid.size:
        distance = float(np.sqrt(resid[0]))
    else:
        fit = stack @ np.linalg.lstsq(stack, target, rcond=None)[0]
        distance = float(np.linalg.norm(target - fit))
    in_kernel = distance <= threshold * (1.0 + symbol.norm())

    build = build_matto if family == "toeplitz" else build_matho
    op_norm = float(np.linalg.norm(build(space1, space2, symbol).matrix))
    is_zero = op_norm <= 1e-10 * (1.0 + symbol.norm())
    if in_kernel == is_zero:
        agreement = "confirmed"
    elif in_kernel:
        agreement = "conflict"
    else:
        agreement = "class-gap"
    return {"family": family,
            "verdict": "in-kernel" if in_kernel else "not-in-kernel",
            "distance": distance,
            "matrix_norm": op_norm,
            "agreement": agreement}


# -- transform identity registry ---------------------------------------------

def _map_matrix(fn, src, dst):
    """Matrix whose columns are dst-coordinates of fn(basis of src).

    For a linear fn this is the matrix of the map; for an antilinear fn it
    is the L of the action c -> L conj(c)."""
    return np.stack([dst.coords(fn(b)) for b in src.basis], axis=1)


class TransformInputs:
    """Input bundle for the registry, with lazily cached derived spaces."""

    def __init__(self, theta1, theta2, order=64, symbol=None, conj1=None, conj2=None,
                 crofoot1=None, crofoot2=None, threshold=1e-8):
        self.theta1 = theta1
        self.theta2 = theta2
        self.order = order
        self.symbol = symbol
        self.conj1 = conj1 if conj1 is not None else Conjugation.identity(theta1.dim)
        self.conj2 = conj2 if conj2 is not None else Conjugation.identity(theta2.dim)
        zero = np.zeros((theta1.dim, theta1.dim))
        self.crofoot1 = crofoot1 if crofoot1 is not None else CrofootData(zero)
        self.crofoot2 = crofoot2 if crofoot2 is not None else CrofootData(zero)
        self.threshold = threshold
        self._cache = {}

    def space(self, key):
        if key not in self._cache:
            theta = {"1": self.theta1, "2": self.theta2}[key[0]]
            if key.endswith("t"):
                theta = theta.tilde()
            elif key.endswith("j"):
                conj = self.conj1 if key[0] == "1" else self.conj2
                theta = theta.conjugated(conj)
            self._cache[key] = ModelSpace.from_product(theta, self.order)
        return self._cache[key]

    def crofoot_image(self, which):
        """(image space, matrix of the forward Crofoot map) for theta1 or theta2."""
        key = f"{which}w"
        if key not in self._cache:
            theta = self.theta1 if which == 1 else self.theta2
            cro = self.crofoot1 if which == 1 else self.crofoot2
            src = self.space(str(which))
            target_series = crofoot_theta(theta, cro, self.order)
            mapped = [crofoot_map(src.theta_series, cro, b, "forward") for b in src.basis]
            image = ModelSpace.from_basis(target_series, mapped)
            fwd = np.stack([image.coords(m) for m in mapped], axis=1)
            self._cache[key] = (image, fwd)
        return self._cache[key]

    def need_symbol(self, name):
        if self.symbol is None:
            raise ValueError(f"identity {name!r} needs a symbol")
        return self.symbol

    def jsym_gaps(self):
        return (jsymmetry_defect(self.space("1").theta_series, self.conj1),
                jsymmetry_defect(self.space("2").theta_series, self.conj2))


def _registry_report(name, residual, threshold, scale):
    verdict = "accept" if residual <= threshold * (1.0 + scale) else "reject"
    return {"name": name, "residual": float(residual),
            "threshold": float(threshold), "verdict": verdict}


def _skip(name, threshold, reason):
    return {"name": name, "residual": None, "threshold": float(threshold),
            "verdict": "skipped", "reason": reason}


def _lhs_rhs_report(name, lhs, rhs, threshold):
    return _registry_report(name, np.linalg.norm(lhs - rhs), threshold,
                            np.linalg.norm(lhs))


def _verify_crofoot(inp):
    phi = inp.need_symbol("crofoot")
    k1, k2 = inp.space("1"), inp.space("2")
    b = build_matho(k1, k2, phi).matrix
    k1w, f1 = inp.crofoot_image(1)
    k2w, f2 = inp.crofoot_image(2)
    lhs = f2 @ b @ f1.conj().T
    cro1, cro2 = inp.crofoot1, inp.crofoot2
    d1inv = np.linalg.inv(cro1.D_Wstar)
    d2inv = np.linalg.inv(cro2.D_Wstar)
    # The codomain multiplier rides through the flip J, so it enters the
    # symbol as its inverse adjoint at the reflected argument; that is the
    # polynomial D^{-1}(I - W2 Theta2(zbar)^*). The domain side simplifies
    # by D(I + Theta1^W W1*)^{-1} = (I - Theta1 W1*) D^{-1}, so the whole
    # symbol transform is exact series arithmetic.
    left = (MatrixLaurent.constant(d2inv)
            - k2.theta_series.tilde().left_const(d2inv @ cro2.W))
    right = (MatrixLaurent.constant(np.eye(k1.dim))
             - k1.theta_series.right_const(cro1.W.conj().T)).right_const(d1inv)
    psi = left.mul(phi).mul(right).truncate(inp.order)
    rhs = build_matho(k1w, k2w, psi).matrix
    return _lhs_rhs_report("crofoot", lhs, rhs, inp.threshold)


def _verify_tau(inp):
    phi = inp.need_symbol("tau")
    k1, k2 = inp.space("1"), inp.space("2")
    k1t, k2t = inp.space("1t"), inp.space("2t")
    b = build_matho(k1, k2, phi).matrix
    t1 = _map_matrix(lambda f: tau(k1.theta_series, f), k1, k1t)
    t2 = _map_matrix(lambda f: tau(k2.theta_series, f), k2, k2t)
    lhs = t2 @ b @ t1.conj().T
    psi = k2.theta_series.tilde().mul(phi).mul(k1.theta_series).reflect_z().truncate(inp.order)
    rhs = build_matho(k1t, k2t, psi).matrix
    return _lhs_rhs_report("tau", lhs, rhs, inp.threshold)


def _verify_jstar(inp):
    phi = inp.need_symbol("jstar")
    k1, k2 = inp.space("1"), inp.space("2")
    k1j, k2j = inp.space("1j"), inp.space("2j")
    b = build_matho(k1, k2, phi).matrix
    l1 = _map_matrix(lambda f: jstar(inp.conj1, f), k1j, k1)
    l2 = _map_matrix(lambda f: jstar(inp.conj2, f), k2, k2j)
    lhs = l2 @ np.conj(b @ l1)
    psi = sandwich_reflected(inp.conj2, phi, inp.conj1)
    rhs = build_matho(k1j, k2j, psi).matrix
    return _lhs_rhs_report("jstar", lhs, rhs, inp.threshold)


def _require_jsym(inp, name):
    g1, g2 = inp.jsym_gaps()
    if g1 > _JSYM_TOL or g2 > _JSYM_TOL:
        return _skip(name, inp.threshold,
                     f"needs J-symmetric thetas (defects {g1:.2e}, {g2:.2e})")
    return None


def _ctheta_maps(inp):
    k1, k2 = inp.space("1"), inp.space("2")
    c1 = CTheta(k1.theta_series, inp.conj1, True)
    c2 = CTheta(k2.theta_series, inp.conj2, True)
    return (_map_matrix(c1.apply, k1, k1), _map_matrix(c2.apply, k2, k2))


def _verify_ctheta(inp):
    skip = _require_jsym(inp, "ctheta")
    if skip:
        return skip
    phi = inp.need_symbol("ctheta")
    k1, k2 = inp.space("1"), inp.space("2")
    b = build_matho(k1, k2, phi).matrix
    l_c1, l_c2 = _ctheta_maps(inp)
    lhs = l_c2 @ np.conj(b @ l_c1)
    # composing the tau identity with the coefficient conjugations puts the
    # reflected Theta2 on the left; writing Theta2(z) there instead loses the
    # anti-analytic mass of the symbol and breaks the operator equality
    inner = k2.theta_series.tilde().mul(phi).mul(k1.theta_series).truncate(inp.order)
    psi = sandwich_pointwise(inp.conj2, inner, inp.conj1)
    rhs = build_matho(k1, k2, psi).matrix
    return _lhs_rhs_report("ctheta", lhs, rhs, inp.threshold)


def _verify_prop61a(inp):
    skip = _require_jsym(inp, "prop61a")
    if skip:
        return skip
    phi = inp.need_symbol("prop61a")
    k1, k2 = inp.space("1"), inp.space("2")
    a = build_matto(k1, k2, phi).matrix
    l_c1, l_c2 = _ctheta_maps(inp)
    lhs = l_c2 @ np.conj(a @ l_c1)
    inner = k2.theta_series.adjoint_star().mul(phi).mul(k1.theta_series).truncate(inp.order)
    psi = sandwich_pointwise(inp.conj2, inner, inp.conj1)
    rhs = build_matto(k1, k2, psi).matrix
    return _lhs_rhs_report("prop61a", lhs, rhs, inp.threshold)


def _verify_prop61b(inp):
    skip = _require_jsym(inp, "prop61b")
    if skip:
        return skip
    phi = inp.need_symbol("prop61b")
    k1, k2 = inp.space("1"), inp.space("2")
    b = build_matho(k1, k2, phi).matrix
    l_c1, l_c2 = _ctheta_maps(inp)
    lhs = l_c2 @ np.conj(b @ l_c1)
    inner = k2.theta_series.tilde().mul(phi).mul(k1.theta_series).truncate(inp.order)
    psi = sandwich_pointwise(inp.conj2, inner, inp.conj1)
    rhs = build_matho(k1, k2, psi).matrix
    return _lhs_rhs_report("prop61b", lhs, rhs, inp.threshold)


def _verify_prop61c(inp, hankel=False):
    name = "prop61d" if hankel else "prop61c"
    skip = _require_jsym(inp, name)
    if skip:
        return skip
    phi = inp.need_symbol(name)
    k1, k2 = inp.space("1"), inp.space("2")
    k1t, k2t = inp.space("1t"), inp.space("2t")
    build = build_matho if hankel else build_matto
    mat = build(k1, k2, phi).matrix
    l1 = _map_matrix(lambda f: jstar(inp.conj1, f), k1t, k1)
    l2 = _map_matrix(lambda f: jstar(inp.conj2, f), k2, k2t)
    lhs = l2 @ np.conj(mat @ l1)
    psi = sandwich_reflected(inp.conj2, phi, inp.conj1)
    rhs = build(k1t, k2t, psi).matrix
    return _lhs_rhs_report(name, lhs, rhs, inp.threshold)


def _verify_prop61e(inp):
    skip = _require_jsym(inp, "prop61e")
    if skip:
        return skip
    phi = inp.need_symbol("prop61e")
    k1, k2 = inp.space("1"), inp.space("2")
    k1t = inp.space("1t")
    a = build_matto(k1, k2, phi).matrix
    l1 = _map_matrix(lambda f: jstar(inp.conj1, f), k1t, k1)
    l_c2 = _ctheta_maps(inp)[1]
    lhs = l_c2 @ np.conj(a @ l1)
    inner = k2.theta_series.tilde().mul(phi.reflect_z()).truncate(inp.order)
    psi = sandwich_pointwise(inp.conj2, inner, inp.conj1)
    rhs = build_matho(k1t, k2, psi).matrix
    return _lhs_rhs_report("prop61e", lhs, rhs, inp.threshold)


def _verify_prop61f(inp):
    skip = _require_jsym(inp, "prop61f")
    if skip:
        return skip
    phi = inp.need_symbol("prop61f")
    k1, k2 = inp.space("1"), inp.space("2")
    k2t = inp.space("2t")
    b = build_matho(k1, k2, phi).matrix
    l_c1 = _ctheta_maps(inp)[0]
    l2 = _map_matrix(lambda f: jstar(inp.conj2, f), k2, k2t)
    lhs = l2 @ np.conj(b @ l_c1)
    inner = phi.mul(k1.theta_series).truncate(inp.order)
    psi = sandwich_pointwise(inp.conj2, inner, inp.conj1)
    rhs = build_matto(k1, k2t, psi).matrix
    return _lhs_rhs_report("prop61f", lhs, rhs, inp.threshold)


def _verify_eq_sz(inp):
    k1, k1t = inp.space("1"), inp.space("1t")
    t = _map_matrix(lambda f: tau(k1.theta_series, f), k1, k1t)
    lhs = t @ k1.S @ t.conj().T
    rhs = k1t.S_star
    return _lhs_rhs_report("eq_sz", lhs, rhs, inp.threshold)


def _verify_eq_ddd(inp):
    k1, k1t = inp.space("1"), inp.space("1t")
    t_back = _map_matrix(lambda f: tau(k1t.theta_series, f), k1t, k1)
    lhs = k1.D_tilde
    rhs = t_back @ k1t.D @ t_back.conj().T
    return _lhs_rhs_report("eq_ddd", lhs, rhs, inp.threshold)


def _verify_remark412(inp):
    """C_Theta A_Phi C_Theta = A_{Phi^*}, valid only under extra hypotheses.

    If Phi fails to be J-symmetric or to commute with Theta pointwise, the
    identity is expected to fail; the report is then a skip that still
    carries the measured residual, so the failure can be demonstrated
    without counting as a broken identity.
    """
    phi = inp.need_symbol("remark412")
    k1 = inp.space("1")
    g1 = inp.jsym_gaps()[0]
    phi_sym = jsymmetry_defect(phi, inp.conj1)
    nodes = np.exp(2j * np.pi * np.arange(64) / 64)
    tv = evaluate_many(k1.theta_series, nodes)
    pv = evaluate_many(phi, nodes)
    commute = float(np.linalg.norm(tv @ pv - pv @ tv, axis=(1, 2)).max())
    a = build_matto(k1, k1, phi).matrix
    c1 = CTheta(k1.theta_series, inp.conj1, g1 <= _JSYM_TOL)
    l_c1 = _map_matrix(c1.apply, k1, k1)
    lhs = l_c1 @ np.conj(a @ l_c1)
    rhs = build_matto(k1, k1, phi.adjoint_star().truncate(inp.order)).matrix
    residual = float(np.linalg.norm(lhs - rhs))
    scale = 1.0 + phi.norm()
    if g1 > _JSYM_TOL or phi_sym > _JSYM_TOL * scale or commute > _JSYM_TOL * scale:
        out = _skip("remark412", inp.threshold,
                    f"hypotheses not met (theta defect {g1:.2e}, symbol defect "
                    f"{phi_sym:.2e}, commutator {commute:.2e})")
        out["residual"] = residual
        return out
    return _registry_report("remark412", residual, inp.threshold, np.linalg.norm(lhs))


_REGISTRY = {
    "crofoot": _verify_crofoot,
    "tau": _verify_tau,
    "jstar": _verify_jstar,
    "ctheta": _verify_ctheta,
    "prop61a": _verify_prop61a,
    "prop61b": _verify_prop61b,
    "prop61c": lambda inp: _verify_prop61c(inp, hankel=False),
    "prop61d": lambda inp: _verify_prop61c(inp, hankel=True),
    "prop61e": _verify_prop61e,
    "prop61f": _verify_prop61f,
    "eq_sz": _verify_eq_sz,
    "eq_ddd": _verify_eq_ddd,
    "remark412": _verify_remark412,
}

REGISTRY_NAMES = tuple(_REGISTRY)


def verify_transform(name, inputs):
    """Check one named identity (or every one, name="all") on the inputs.

    Returns a report dict {name, residual, threshold, verdict}; a list of
    them for "all". Entries whose hypotheses the inputs do not satisfy
    come back with verdict "skipped" and a reason instead of failing.
    """
    if name == "all":
        return [_REGISTRY[n](inputs) for n in REGISTRY_NAMES]
    if name not in _REGISTRY:
        raise ValueError(f"unknown transform identity {name!r}")
    return _REGISTRY[name](inputs)
