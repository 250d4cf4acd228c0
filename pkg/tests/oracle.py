"""Circle-quadrature reference path used by the tests.

Everything here works on boundary values sampled at N roots of unity plus
discrete Fourier projections. None of it touches the package's coefficient
arithmetic (series are only unpacked into raw coefficient arrays), so when
the two paths agree the agreement means something.
"""

import numpy as np

N_GRID = 512


def nodes(n=N_GRID):
    return np.exp(2j * np.pi * np.arange(n) / n)


def sample_series(series, n=N_GRID):
    """Boundary values of a coefficient window by a direct power sum."""
    zs = nodes(n)
    ks = np.arange(-series.order, series.order + 1)
    powers = zs[:, None] ** ks[None, :]
    return np.tensordot(powers, series.coeffs, axes=(1, 0))


def inner(f_vals, g_vals):
    """L2 inner product <f, g> by the trapezoid rule on the grid."""
    axes = tuple(range(1, f_vals.ndim))
    return complex(np.mean(np.sum(f_vals * np.conj(g_vals), axis=axes)))


def fourier_coeffs(vals, order):
    n = vals.shape[0]
    c = np.fft.fft(vals, axis=0) / n
    out = np.zeros((2 * order + 1,) + vals.shape[1:], dtype=complex)
    for m in range(-order, order + 1):
        out[m + order] = c[m % n]
    return out


def analytic_part(vals):
    """Riesz projection onto nonnegative frequencies, on the value grid."""
    n = vals.shape[0]
    c = np.fft.fft(vals, axis=0)
    c[n // 2:] = 0.0
    return np.fft.ifft(c, axis=0)


def co_analytic_part(vals):
    return vals - analytic_part(vals)


def theta_values(product, zs):
    """Closed-form product values: no series expansion involved."""
    d = product.dim
    out = np.broadcast_to(np.asarray(product.left_unitary, dtype=complex),
                          (len(zs), d, d)).copy()
    eye = np.eye(d)
    for factor in product.factors:
        b = (zs - factor.a) / (1.0 - np.conj(factor.a) * zs)
        p = factor.frame @ factor.frame.conj().T
        core = eye - p + b[:, None, None] * p
        out = out @ (core @ factor.post_unitary)
    return out


def multiply(mat_vals, vec_vals):
    return np.einsum("nab,nb->na", mat_vals, vec_vals)


def model_project(theta_vals, f_vals):
    """P_K f = P+ f - Theta P+ (Theta^* f) at the sample values."""
    adj = np.conj(np.transpose(theta_vals, (0, 2, 1)))
    lifted = analytic_part(multiply(adj, f_vals))
    return analytic_part(f_vals) - multiply(theta_vals, lifted)


def flip_values(f_vals, zs):
    """(J f)(z) = conj(z) f(conj(z)); on the grid conj(z_j) = z_{(n-j) mod n}."""
    n = len(zs)
    idx = (-np.arange(n)) % n
    return np.conj(zs)[:, None] * f_vals[idx]
