"""Dense matrix representation of m independent k-nilpotent q-boson modes.

Basis ordering
--------------
A basis index encodes the occupation tuple ``(n_1, ..., n_m)`` in mixed radix
``k`` with mode 1 varying fastest::

    index = n_1 + n_2 * k + ... + n_m * k**(m-1)

With numpy's Kronecker product this means the single-mode factor for mode
``m`` is the left-most one. :mod:`paragrass.coherent` relies on exactly this
convention when it reshapes matrices into para-Grassmann coefficient arrays.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .qnum import QContext, q_int

__all__ = [
    "MAX_DIM",
    "FockOp",
    "occupations",
    "annihilation",
    "creation",
    "number_op",
    "identity",
    "zero",
    "compose",
    "add",
    "scale",
    "adjoint",
    "func_of_diagonal",
    "matrix_trace",
    "q_power_of_number",
]

MAX_DIM = 4096


class FockOp:
    """Linear operator on the ``k**m`` dimensional Fock space.

    The matrix is copied on construction and flagged read-only so that
    instances behave as values.
    """

    __slots__ = ("ctx", "matrix")

    def __init__(self, ctx: QContext, matrix):
        dim = fock_dim(ctx)
        mat = np.array(matrix, dtype=complex)
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for k={ctx.k}, m={ctx.m}, got shape {mat.shape}")
        mat.flags.writeable = False
        self.ctx = ctx
        self.matrix = mat

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"FockOp(k={self.ctx.k}, m={self.ctx.m}, dim={self.dim})"

    def __add__(self, other):
        if isinstance(other, FockOp):
            return add(self, other)
        return add(self, scale(identity(self.ctx), other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FockOp):
            return compose(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __matmul__(self, other):
        return compose(self, other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator powers are not defined")
        return FockOp(self.ctx, np.linalg.matrix_power(self.matrix, n))

    def allclose(self, other, atol=None) -> bool:
        _check_same(self, other)
        atol = self.ctx.tol if atol is None else atol
        return bool(np.max(np.abs(self.matrix - other.matrix), initial=0.0) <= atol)


def fock_dim(ctx: QContext) -> int:
    dim = ctx.k ** ctx.m
    if dim > MAX_DIM:
        raise ValueError(f"Fock dimension k**m = {dim} exceeds the limit {MAX_DIM}")
    return dim


def occupations(ctx: QContext) -> np.ndarray:
    """Occupation tuples for every basis index, shape ``(k**m, m)``; column ``i`` is mode ``i+1``."""
    dim = fock_dim(ctx)
    idx = np.arange(dim)
    return np.stack([(idx // ctx.k ** i) % ctx.k for i in range(ctx.m)], axis=1)


def _check_mode(ctx: QContext, i: int):
    if isinstance(i, bool) or int(i) != i or not 1 <= i <= ctx.m:
        raise ValueError(f"mode index must be in 1..{ctx.m}, got {i!r}")


def _check_same(a: FockOp, b: FockOp):
    if a.ctx != b.ctx:
        raise ValueError(f"operators belong to different contexts: {a.ctx} vs {b.ctx}")


def _embed(ctx: QContext, single: np.ndarray, i: int) -> np.ndarray:
    k = ctx.k
    left = np.eye(k ** (ctx.m - i))
    right = np.eye(k ** (i - 1))
    return np.kron(left, np.kron(single, right))


def annihilation(ctx: QContext, i: int = 1) -> FockOp:
    """``a_i |n> = sqrt([n]_q) |n-1>`` on mode ``i``, identity elsewhere."""
    _check_mode(ctx, i)
    fock_dim(ctx)
    k = ctx.k
    single = np.zeros((k, k))
    for n in range(1, k):
        single[n - 1, n] = math.sqrt(q_int(ctx, n))
    return FockOp(ctx, _embed(ctx, single, i))


def creation(ctx: QContext, i: int = 1) -> FockOp:
    return adjoint(annihilation(ctx, i))


def number_op(ctx: QContext, i: int = 1) -> FockOp:
    _check_mode(ctx, i)
    return FockOp(ctx, np.diag(occupations(ctx)[:, i - 1].astype(complex)))


def q_power_of_number(ctx: QContext, i: int, sign: int = 1) -> FockOp:
    """Diagonal operator ``q**(sign * N_i)``."""
    _check_mode(ctx, i)
    n = occupations(ctx)[:, i - 1]
    return FockOp(ctx, np.diag(ctx.q ** (sign * n)))


def identity(ctx: QContext) -> FockOp:
    return FockOp(ctx, np.eye(fock_dim(ctx)))


def zero(ctx: QContext) -> FockOp:
    dim = fock_dim(ctx)
    return FockOp(ctx, np.zeros((dim, dim)))


def compose(a: FockOp, b: FockOp) -> FockOp:
    _check_same(a, b)
    return FockOp(a.ctx, a.matrix @ b.matrix)


def add(a: FockOp, b: FockOp) -> FockOp:
    _check_same(a, b)
    return FockOp(a.ctx, a.matrix + b.matrix)


def scale(a: FockOp, c: complex) -> FockOp:
    return FockOp(a.ctx, c * a.matrix)


def adjoint(a: FockOp) -> FockOp:
    return FockOp(a.ctx, a.matrix.conj().T)


def func_of_diagonal(a: FockOp, f: Callable[[complex], complex]) -> FockOp:
    """Apply ``f`` to the eigenvalues of a diagonal operator.

    Raises ``ValueError`` when an off-diagonal entry exceeds the context tolerance.
    """
    diag = np.diag(a.matrix)
    off = a.matrix - np.diag(diag)
    if np.max(np.abs(off), initial=0.0) > a.ctx.tol:
        raise ValueError("func_of_diagonal needs a diagonal operator")
    if not np.any(diag.imag):
        diag = diag.real
    return FockOp(a.ctx, np.diag([f(x) for x in diag]))


def matrix_trace(a: FockOp) -> complex:
    return complex(np.trace(a.matrix))
