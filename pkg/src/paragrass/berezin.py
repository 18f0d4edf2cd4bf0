"""Berezin-type integration over para-Grassmann variables.

For one mode, ``int dtheta theta^n thetabar^n' dthetabar = N**2 delta_{n,k-1} delta_{n',k-1}``
with normalization ``N = sqrt([k-1]_q!)``. Integration acts on anti-Wick
normal forms only, which :class:`~paragrass.algebra.PGElement` guarantees, so no
reordering (and no alpha factor) ever happens inside an integral.
"""
from __future__ import annotations

import math

import numpy as np

from .algebra import PGElement
from .qnum import QContext, q_factorial

__all__ = ["norm_const", "integrate_theta", "integrate_thetabar", "integrate_pair", "integrate_full"]


def norm_const(ctx: QContext) -> float:
    return math.sqrt(q_factorial(ctx, ctx.k - 1))


def _reduced(ctx: QContext, i: int) -> QContext:
    if isinstance(i, bool) or int(i) != i or not 1 <= i <= ctx.m:
        raise ValueError(f"mode index must be in 1..{ctx.m}, got {i!r}")
    return ctx.replace(m=ctx.m - 1) if ctx.m > 1 else ctx


def _take_top(f: PGElement, axes) -> np.ndarray:
    top = f.ctx.k - 1
    index = [slice(None)] * (2 * f.ctx.m)
    for ax in axes:
        index[ax] = top
    return f.array[tuple(index)]


def integrate_theta(f: PGElement, i: int) -> PGElement:
    """Single-sided integral over ``theta_i``.

    The result keeps ``thetabar_i`` but has no ``theta_i`` dependence; it is
    returned in the same context with the mode-``i`` holomorphic degree set to 0.
    """
    _reduced(f.ctx, i)
    out = np.zeros_like(f.array)
    index = [slice(None)] * (2 * f.ctx.m)
    index[i - 1] = 0
    out[tuple(index)] = norm_const(f.ctx) * _take_top(f, [i - 1])
    return PGElement(f.ctx, out)


def integrate_thetabar(f: PGElement, i: int) -> PGElement:
    """Single-sided integral over ``thetabar_i`` (see :func:`integrate_theta`)."""
    _reduced(f.ctx, i)
    m = f.ctx.m
    out = np.zeros_like(f.array)
    index = [slice(None)] * (2 * m)
    index[m + i - 1] = 0
    out[tuple(index)] = norm_const(f.ctx) * _take_top(f, [m + i - 1])
    return PGElement(f.ctx, out)


def integrate_pair(f: PGElement, i: int):
    """Integrate out mode ``i`` (both ``theta_i`` and ``thetabar_i``).

    Returns an element over the remaining ``m - 1`` modes (relabelled so that
    modes above ``i`` shift down by one), or a complex number when ``m == 1``.
    """
    ctx = f.ctx
    reduced = _reduced(ctx, i)
    value = q_factorial(ctx, ctx.k - 1) * _take_top(f, [i - 1, ctx.m + i - 1])
    if ctx.m == 1:
        return complex(value)
    return PGElement(reduced, value)


def integrate_full(f: PGElement) -> complex:
    """Integral over all modes: top coefficient times ``N**(2m)``."""
    ctx = f.ctx
    top = (ctx.k - 1,) * (2 * ctx.m)
    return complex(f.array[top] * q_factorial(ctx, ctx.k - 1) ** ctx.m)
