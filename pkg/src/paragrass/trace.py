"""Operator traces as Berezin integrals over coherent states.

``Tr A = int :mu (theta|A|theta): `` computed through the measure weight,
the coherent matrix element and the full integral; it is never shortcut to
the diagonal sum, which :func:`paragrass.fock.matrix_trace` provides as the
independent reference.
"""
from __future__ import annotations

from .algebra import antiwick_mul
from .berezin import integrate_full
from .coherent import coherent_matrix_element, measure_weight
from .fock import FockOp

__all__ = ["symbolic_trace", "trace_integrand"]


def trace_integrand(a: FockOp):
    return antiwick_mul(measure_weight(a.ctx), coherent_matrix_element(a))


def symbolic_trace(a: FockOp) -> complex:
    return integrate_full(trace_integrand(a))
