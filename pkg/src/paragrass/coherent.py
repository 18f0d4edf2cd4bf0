"""Coherent-state calculus: measure weight, matrix elements and Toeplitz operators.

Coherent states ``|theta)`` are never built as module vectors. Only their
projections ``<n|theta) = theta^n / sqrt([n]_q!)`` enter, and every integrand
is assembled with the anti-normal ordered product.
"""
from __future__ import annotations

import math

import numpy as np

from . import algebra as pg
from .algebra import PGElement
from .berezin import integrate_full
from .fock import FockOp, fock_dim, occupations
from .qnum import QContext, q_factorial

__all__ = [
    "coherent_coeff",
    "measure_weight",
    "coherent_matrix_element",
    "toeplitz",
    "toeplitz_by_integrals",
    "sesquilinear",
    "hol_basis",
    "antihol_basis",
]


def coherent_coeff(ctx: QContext, n: int) -> float:
    """``<n|theta)`` coefficient ``1/sqrt([n]_q!)``."""
    return 1.0 / math.sqrt(q_factorial(ctx, n))


def _inv_sqrt_factorials(ctx: QContext) -> np.ndarray:
    """Array over the per-mode occupations (shape ``(k,)*m``) of ``1/sqrt(prod_i [n_i]!)``."""
    single = np.array([coherent_coeff(ctx, n) for n in range(ctx.k)])
    out = np.ones(())
    for _ in range(ctx.m):
        out = np.multiply.outer(out, single)
    return out


def measure_weight(ctx: QContext) -> PGElement:
    """``mu = :prod_i e_q^{theta_i thetabar_i}:`` expanded in anti-Wick form."""
    single = QContext(k=ctx.k, m=1, alpha=ctx.alpha, tol=ctx.tol)
    coeffs = [1.0 / q_factorial(single, p) for p in range(ctx.k)]
    mu = pg.constant(ctx, 1.0)
    for i in range(1, ctx.m + 1):
        factor = pg.zero(ctx)
        for p, c in enumerate(coeffs):
            n = tuple(p if j == i else 0 for j in range(1, ctx.m + 1))
            factor = factor + pg.monomial(ctx, n, n, c)
        mu = pg.antiwick_mul(mu, factor)
    return mu


def _matrix_as_tensor(a: FockOp) -> np.ndarray:
    """Reshape ``A[row, col]`` into ``T[n_1..n_m, n'_1..n'_m]`` (row occupations first)."""
    k, m = a.ctx.k, a.ctx.m
    t = a.matrix.reshape((k,) * (2 * m))
    # C-order reshape puts mode m first; reverse each half to get mode 1 first
    perm = tuple(range(m - 1, -1, -1)) + tuple(range(2 * m - 1, m - 1, -1))
    return t.transpose(perm)


def _tensor_as_matrix(ctx: QContext, t: np.ndarray) -> np.ndarray:
    k, m = ctx.k, ctx.m
    perm = tuple(range(m - 1, -1, -1)) + tuple(range(2 * m - 1, m - 1, -1))
    dim = k ** m
    return np.ascontiguousarray(t.transpose(perm)).reshape(dim, dim)


def coherent_matrix_element(a: FockOp) -> PGElement:
    """``(theta|A|theta)`` under the anti-normal prescription.

    The coefficient of ``theta^{n'} thetabar^{n}`` is ``<n|A|n'> / sqrt([n]! [n']!)``.
    """
    ctx = a.ctx
    t = _matrix_as_tensor(a)  # t[n, n'] = <n|A|n'>
    w = _inv_sqrt_factorials(ctx)
    m = ctx.m
    t = t * w.reshape(w.shape + (1,) * m) * w.reshape((1,) * m + w.shape)
    # holomorphic degrees come from the ket (n'), antiholomorphic from the bra (n)
    perm = tuple(range(m, 2 * m)) + tuple(range(m))
    return PGElement(ctx, t.transpose(perm))


def hol_basis(ctx: QContext, n) -> PGElement:
    """``<n|theta) = prod_i theta_i^{n_i} / sqrt([n_i]!)``."""
    c = math.prod(coherent_coeff(ctx, j) for j in n)
    return pg.monomial(ctx, n, (0,) * ctx.m, c)


def antihol_basis(ctx: QContext, n) -> PGElement:
    """``(theta|n> = prod_i thetabar_i^{n_i} / sqrt([n_i]!)``."""
    c = math.prod(coherent_coeff(ctx, j) for j in n)
    return pg.monomial(ctx, (0,) * ctx.m, n, c)


def toeplitz(phi: PGElement, weight_first: bool = True) -> FockOp:
    """Anti-Wick (Toeplitz) quantization ``T_phi``.

    ``<n|T_phi|n'> = int :<n|theta) mu phi (theta|n>: ``. Multiplying the fixed
    integrand ``:mu phi:`` by ``theta^n thetabar^n'`` and taking the top
    coefficient reads the entry at the complementary degree, so the whole
    matrix comes from one product. ``weight_first=False`` places ``phi``
    before ``mu`` inside the prescription.
    """
    ctx = phi.ctx
    fock_dim(ctx)
    mu = measure_weight(ctx)
    kernel = pg.antiwick_mul(mu, phi) if weight_first else pg.antiwick_mul(phi, mu)
    top = ctx.k - 1
    flipped = kernel.array[(slice(None, None, -1),) * (2 * ctx.m)]
    # flipped[n, n'] = kernel[k-1-n, k-1-n']
    w = _inv_sqrt_factorials(ctx)
    m = ctx.m
    scale = q_factorial(ctx, top) ** m
    t = scale * flipped * w.reshape(w.shape + (1,) * m) * w.reshape((1,) * m + w.shape)
    return FockOp(ctx, _tensor_as_matrix(ctx, t))


def toeplitz_by_integrals(phi: PGElement) -> FockOp:
    """Entry-by-entry evaluation of ``T_phi``; slow, used to cross-check :func:`toeplitz`."""
    ctx = phi.ctx
    mu = measure_weight(ctx)
    occ = occupations(ctx)
    dim = len(occ)
    right = [pg.antiwick_mul(mu, pg.antiwick_mul(phi, antihol_basis(ctx, tuple(n)))) for n in occ]
    mat = np.zeros((dim, dim), dtype=complex)
    for r, n in enumerate(occ):
        left = hol_basis(ctx, tuple(n))
        for c in range(dim):
            mat[r, c] = integrate_full(pg.antiwick_mul(left, right[c]))
    return FockOp(ctx, mat)


def sesquilinear(f: PGElement, g: PGElement) -> complex:
    """``(f, g) = int :f* mu g:``."""
    if f.ctx != g.ctx:
        raise ValueError("elements belong to different contexts")
    mu = measure_weight(f.ctx)
    return integrate_full(pg.antiwick_mul(pg.conjugate(f), pg.antiwick_mul(mu, g)))
