"""q-deformed integers for q = exp(i*pi/k).

For a root-of-unity deformation the q-integer ``[n]_q = (q^n - q^-n)/(q - q^-1)``
is real and equals ``sin(n*pi/k)/sin(pi/k)``. Everything in the package is built
on top of these numbers and on the :class:`QContext` that carries the
deformation parameters.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

__all__ = ["QContext", "q_int", "q_factorial", "q_exp_scalar"]


@dataclass(frozen=True)
class QContext:
    """Immutable parameter bundle shared by every object of a computation.

    Parameters
    ----------
    k : int
        nilpotency order, ``k >= 2``; each mode holds at most ``k - 1`` quanta.
    m : int
        number of independent modes.
    alpha : float
        real coefficient in ``theta * thetabar = alpha * thetabar * theta``.
    tol : float
        tolerance used for scalar and element comparisons.
    """

    k: int
    m: int = 1
    alpha: float = 1.0
    tol: float = 1e-10
    q: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m!r}")
        if isinstance(self.alpha, complex) or not math.isfinite(self.alpha) or self.alpha == 0:
            raise ValueError(f"alpha must be real, finite and nonzero, got {self.alpha!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "q", cmath.exp(1j * math.pi / self.k))

    def replace(self, **changes) -> "QContext":
        params = dict(k=self.k, m=self.m, alpha=self.alpha, tol=self.tol)
        params.update(changes)
        return QContext(**params)


def q_int(ctx: QContext, n: int) -> float:
    """Return ``[n]_q = sin(n pi / k) / sin(pi / k)``.

    Multiples of ``k`` return an exact ``0.0`` so that nilpotency survives in
    floating point.
    """
    if n < 0:
        raise ValueError(f"q-integer needs n >= 0, got {n}")
    k = ctx.k
    if n % k == 0:
        return 0.0
    # reduce modulo 2k and use the symmetry [n] = [k-n] to keep the argument small
    r = n % (2 * k)
    sign = 1.0
    if r > k:
        r -= k
        sign = -1.0
    r = min(r, k - r)
    return sign * math.sin(r * math.pi / k) / math.sin(math.pi / k)


def q_factorial(ctx: QContext, n: int) -> float:
    """``[n]_q! = [n]_q [n-1]_q ... [1]_q`` for ``0 <= n <= k-1``."""
    if n < 0 or n > ctx.k - 1:
        raise ValueError(f"q-factorial defined for 0 <= n <= {ctx.k - 1}, got {n}")
    return math.prod(q_int(ctx, j) for j in range(1, n + 1))


def q_exp_scalar(ctx: QContext, x: complex) -> complex:
    """Truncated q-exponential ``sum_{p<k} x^p / [p]_q!``."""
    total = 0j
    term = 1 + 0j
    for p in range(ctx.k):
        total += term / q_factorial(ctx, p)
        term *= x
    return total
