"""Thermodynamics of non-interacting k-nilpotent q-bosons.

Closed forms for one oscillator ``H = eps N`` (partition function, mean
energy, specific heat), the variant ``H' = eps a^dagger a`` with spectrum
``[n]_q eps``, and the grand canonical ensemble of independent levels. The
removable singularities at ``beta*eps -> 0`` and ``eps_j -> mu`` switch to
second order series below ``SERIES_THRESHOLD``; the specific heat, whose
closed form loses digits much earlier, uses a full Taylor series whenever
``|k beta eps| < 1``. Bose limits (``k -> inf``)
are separate closed forms.

Energies are in arbitrary units with ``k_B = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import fock
from .qnum import QContext, q_int

__all__ = [
    "SERIES_THRESHOLD",
    "ThermoPoint",
    "partition_single",
    "log_partition_single",
    "mean_energy_single",
    "specific_heat_single",
    "partition_single_prime",
    "grand_partition",
    "mean_occupation",
    "bose_occupation",
    "bose_mean_energy",
    "bose_specific_heat",
    "fermi_occupation",
    "boltzmann_operator",
    "grand_boltzmann_operator",
    "emit_curve",
]

SERIES_THRESHOLD = 1e-6
_EXP_MAX = 700.0


@dataclass(frozen=True)
class ThermoPoint:
    """One sample of a thermodynamic curve.

    ``k`` is ``None`` for the Bose reference curve. ``eps`` is set for
    occupation curves, whose abscissa is the level energy.
    """

    beta: float
    value: float
    k: int | None = None
    eps: float | None = None

    @property
    def T(self) -> float:
        return 1.0 / self.beta


def _inv_expm1(x: float) -> float:
    """``1/(e^x - 1)`` without overflow."""
    if x > _EXP_MAX:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def _inv_sinh2(y: float) -> float:
    """``1/sinh(y)**2`` without overflow."""
    y = abs(y)
    if y > _EXP_MAX / 2:
        return 4.0 * math.exp(-2.0 * y)
    return 1.0 / math.sinh(y) ** 2


def _geometric(k: int, x: float) -> float:
    """``sum_{n<k} e^{-x n}``."""
    if abs(x) < SERIES_THRESHOLD:
        s1 = k * (k - 1) / 2
        s2 = (k - 1) * k * (2 * k - 1) / 6
        return k - x * s1 + 0.5 * x * x * s2
    if x < -_EXP_MAX / k:
        # dominated by the top level; factor it out to avoid overflow in the ratio
        return math.exp(-x * (k - 1)) * (-math.expm1(x * k)) / (-math.expm1(x))
    return math.expm1(-k * x) / math.expm1(-x)


def _occupation(k: int, x: float) -> float:
    """``1/(e^x-1) - k/(e^{kx}-1)``, the mean of ``n`` under weights ``e^{-x n}``."""
    if abs(x) < SERIES_THRESHOLD:
        return (k - 1) / 2 - (k * k - 1) * x / 12
    if x < 0:
        # n(x) = (k-1) - n(-x) by the reflection n -> k-1-n
        return (k - 1) - _occupation(k, -x)
    return _inv_expm1(x) - k * _inv_expm1(k * x)


@lru_cache(maxsize=None)
def _heat_series_coeffs(terms: int = 14) -> tuple[float, ...]:
    """Taylor coefficients of ``u^2/(4 sinh^2(u/2)) = sum_n (1-2n) B_2n u^2n / (2n)!``."""
    # Bernoulli numbers B_0..B_2terms from the standard recurrence
    b = [Fraction(1)]
    for n in range(1, 2 * terms + 1):
        b.append(-sum(math.comb(n + 1, j) * b[j] for j in range(n)) / (n + 1))
    return tuple(float((1 - 2 * n) * b[2 * n] / math.factorial(2 * n)) for n in range(terms))


def _heat_kernel(u: float) -> float:
    """``u^2 / (4 sinh^2(u/2))``, the specific heat of an unbounded ladder."""
    if u == 0:
        return 1.0
    return 0.25 * u * u * _inv_sinh2(u / 2)


def partition_single(ctx: QContext, eps: float, beta: float) -> float:
    """``Z_1 = sum_{n<k} e^{-beta eps n} = (1 - e^{-k beta eps})/(1 - e^{-beta eps})``."""
    return _geometric(ctx.k, beta * eps)


def log_partition_single(ctx: QContext, eps: float, beta: float) -> float:
    x = beta * eps
    k = ctx.k
    if x < -_EXP_MAX / k:
        return -x * (k - 1) + math.log(-math.expm1(x * k)) - math.log(-math.expm1(x))
    return math.log(_geometric(k, x))


def mean_energy_single(ctx: QContext, eps: float, beta: float) -> float:
    """``(1/(e^{beta eps}-1) - k/(e^{k beta eps}-1)) eps``; ``(k-1) eps/2`` as ``beta -> 0``."""
    return _occupation(ctx.k, beta * eps) * eps


def specific_heat_single(ctx: QContext, eps: float, beta: float) -> float:
    """``C = (beta eps)^2/4 (1/sinh^2(beta eps/2) - k^2/sinh^2(k beta eps/2))``."""
    k = ctx.k
    x = beta * eps
    if abs(k * x) < 1.0:
        # C = f(x) - f(kx) cancels badly for small x; sum the series of the difference
        x2 = x * x
        return math.fsum(c * (1 - k ** (2 * n)) * x2 ** n for n, c in enumerate(_heat_series_coeffs()))
    return _heat_kernel(x) - _heat_kernel(k * x)


def partition_single_prime(ctx: QContext, eps: float, beta: float) -> float:
    """Partition function of ``H' = eps a^dagger a``, spectrum ``[n]_q eps``."""
    return math.fsum(math.exp(-beta * eps * q_int(ctx, n)) for n in range(ctx.k))


def grand_partition(ctx: QContext, eps_list: Iterable[float], mu: float, beta: float) -> float:
    """``prod_j (1 - e^{-k beta (eps_j - mu)})/(1 - e^{-beta (eps_j - mu)})``."""
    return math.prod(_geometric(ctx.k, beta * (e - mu)) for e in eps_list)


def mean_occupation(ctx: QContext, eps_j: float, mu: float, beta: float) -> float:
    """``1/(e^{x}-1) - k/(e^{kx}-1)`` with ``x = beta (eps_j - mu)``; ``(k-1)/2`` at ``eps_j = mu``."""
    return _occupation(ctx.k, beta * (eps_j - mu))


def bose_occupation(x: float) -> float:
    if x <= 0:
        raise ValueError("Bose occupation needs eps > mu")
    return _inv_expm1(x)


def fermi_occupation(x: float) -> float:
    if x > 0:
        return math.exp(-x) / (1.0 + math.exp(-x))
    return 1.0 / (math.exp(x) + 1.0)


def bose_mean_energy(eps: float, beta: float) -> float:
    return eps * _inv_expm1(beta * eps)


def bose_specific_heat(eps: float, beta: float) -> float:
    return _heat_kernel(beta * eps)


def boltzmann_operator(ctx: QContext, eps: float, beta: float, i: int = 1) -> fock.FockOp:
    """``exp(-beta eps N_i)`` as a Fock matrix."""
    return fock.func_of_diagonal(fock.number_op(ctx, i), lambda n: math.exp(-beta * eps * n))


def grand_boltzmann_operator(ctx: QContext, eps_list: Sequence[float], mu: float, beta: float) -> fock.FockOp:
    """``exp(-beta (H - mu N))`` for ``H = sum_j eps_j N_j``; one level per mode."""
    if len(eps_list) != ctx.m:
        raise ValueError(f"need one level per mode ({ctx.m}), got {len(eps_list)}")
    h = fock.zero(ctx)
    for j, e in enumerate(eps_list, start=1):
        h = h + (e - mu) * fock.number_op(ctx, j)
    return fock.func_of_diagonal(h, lambda x: math.exp(-beta * x))


def emit_curve(kind: str, ks: Sequence[int | None], grid: Sequence[float], eps: float = 1.0,
               mu: float = 0.0, beta: float | None = None) -> list[ThermoPoint]:
    """Sample a curve for each ``k`` in ``ks`` (``None`` is the Bose limit).

    For ``mean_energy`` and ``specific_heat`` the grid holds temperatures
    ``T = 1/beta`` at fixed level spacing ``eps``. For ``occupation`` the grid
    holds level energies at fixed ``beta`` and chemical potential ``mu``; the
    Bose curve is only sampled for ``eps > mu``.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    if grid.size > 1 and not (np.all(np.diff(grid) > 0) or np.all(np.diff(grid) < 0)):
        raise ValueError("grid must be strictly monotone")
    points = []
    if kind in ("mean_energy", "specific_heat"):
        if np.any(grid <= 0):
            raise ValueError("temperatures must be positive")
        for k in ks:
            ctx = QContext(k) if k is not None else None
            for T in grid:
                b = 1.0 / T
                if kind == "mean_energy":
                    v = bose_mean_energy(eps, b) if k is None else mean_energy_single(ctx, eps, b)
                else:
                    v = bose_specific_heat(eps, b) if k is None else specific_heat_single(ctx, eps, b)
                points.append(ThermoPoint(beta=b, value=v, k=k))
    elif kind == "occupation":
        if beta is None or beta <= 0:
            raise ValueError("occupation curves need beta > 0")
        for k in ks:
            ctx = QContext(k) if k is not None else None
            for e in grid:
                x = beta * (e - mu)
                if k is None:
                    if x <= 0:
                        continue
                    v = bose_occupation(x)
                else:
                    v = mean_occupation(ctx, e, mu, beta)
                points.append(ThermoPoint(beta=beta, value=v, k=k, eps=float(e)))
    else:
        raise ValueError(f"unknown curve kind {kind!r}")
    return points
