"""Verification suites shared by the command line and the test-suite.

Each suite returns a list of :class:`Check` results. The operator identities
are checked on the Fock matrices; the para-Grassmann identities on seeded
random elements; the coherent-state identities through Berezin integrals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import algebra as pg
from . import fock
from .berezin import integrate_full
from .coherent import antihol_basis, hol_basis, measure_weight, toeplitz
from .opexpr import evaluate, parse_op, random_op_expr
from .qnum import QContext
from .trace import symbolic_trace

__all__ = ["Check", "algebra_suite", "identity_suite", "trace_suite", "orthonormality_matrix"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _maxdiff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def _check(name, err, tol) -> Check:
    return Check(name, err <= tol, f"max error {err:.3g}, tol {tol:.0e}")


def operator_checks(ctx: QContext, tol: float = 1e-10) -> list[Check]:
    """q-commutators, number relation, ordinary commutators, nilpotency, cross-mode commutativity."""
    q = ctx.q
    out = []
    errs = {"q-commutator": 0.0, "conjugate q-commutator": 0.0, "number relation": 0.0,
            "[N,a] = -a": 0.0, "[N,ad] = ad": 0.0}
    nil_ok = True
    for i in range(1, ctx.m + 1):
        a, ad, n = fock.annihilation(ctx, i), fock.creation(ctx, i), fock.number_op(ctx, i)
        A, Ad, N = a.matrix, ad.matrix, n.matrix
        qn = fock.q_power_of_number(ctx, i, 1).matrix
        qmn = fock.q_power_of_number(ctx, i, -1).matrix
        errs["q-commutator"] = max(errs["q-commutator"], _maxdiff(A @ Ad - q * Ad @ A, qmn))
        errs["conjugate q-commutator"] = max(errs["conjugate q-commutator"], _maxdiff(A @ Ad - Ad @ A / q, qn))
        errs["number relation"] = max(errs["number relation"], _maxdiff(Ad @ A, (qn - qmn) / (q - 1 / q)))
        errs["[N,a] = -a"] = max(errs["[N,a] = -a"], _maxdiff(N @ A - A @ N, -A))
        errs["[N,ad] = ad"] = max(errs["[N,ad] = ad"], _maxdiff(N @ Ad - Ad @ N, Ad))
        nil_ok &= not np.any((a ** ctx.k).matrix) and not np.any((ad ** ctx.k).matrix)
    for name, err in errs.items():
        out.append(_check(name, err, tol))
    out.append(Check("nilpotency a^k = ad^k = 0 (exact)", bool(nil_ok)))
    cross = 0.0
    for i, j in itertools.permutations(range(1, ctx.m + 1), 2):
        ai, adi = fock.annihilation(ctx, i).matrix, fock.creation(ctx, i).matrix
        aj, adj = fock.annihilation(ctx, j).matrix, fock.creation(ctx, j).matrix
        for x, y in ((ai, aj), (adi, adj), (ai, adj)):
            cross = max(cross, _maxdiff(x @ y, y @ x))
    out.append(_check("cross-mode commutativity", cross, tol))
    return out


def _elem_diff(f, g) -> float:
    return _maxdiff(f.array, g.array)


def pg_checks(ctx: QContext, rng: np.random.Generator, samples: int = 20, tol: float = 1e-12) -> list[Check]:
    out = []
    assoc = aw_assoc = star = invol = 0.0
    reduce_err = 0.0
    for _ in range(samples):
        f, g, h = (pg.random_element(ctx, rng) for _ in range(3))
        scale = 1 + max(np.abs(x.array).max(initial=0) for x in (f, g, h)) ** 3
        assoc = max(assoc, _elem_diff(pg.mul(pg.mul(f, g), h), pg.mul(f, pg.mul(g, h))) / scale)
        aw_assoc = max(aw_assoc, _elem_diff(pg.antiwick_mul(pg.antiwick_mul(f, g), h),
                                            pg.antiwick_mul(f, pg.antiwick_mul(g, h))) / scale)
        star = max(star, _elem_diff(pg.conjugate(pg.mul(f, g)), pg.mul(pg.conjugate(g), pg.conjugate(f))))
        invol = max(invol, _elem_diff(pg.conjugate(pg.conjugate(f)), f))
        one = ctx.replace(alpha=1.0)
        f1, g1 = pg.PGElement(one, f.array), pg.PGElement(one, g.array)
        reduce_err = max(reduce_err, _elem_diff(pg.mul(f1, g1), pg.antiwick_mul(f1, g1)))
    out.append(_check("associativity of mul", assoc, 1e-10))
    out.append(_check("associativity of antiwick_mul", aw_assoc, 1e-10))
    out.append(_check("(fg)* = g* f*", star, tol))
    out.append(Check("conjugation is an involution (exact)", invol == 0.0))
    out.append(Check("mul = antiwick_mul at alpha = 1 (exact)", reduce_err == 0.0))
    comm = 0.0
    for i, j in itertools.permutations(range(1, ctx.m + 1), 2):
        ti, tj, tbj = pg.theta(ctx, i), pg.theta(ctx, j), pg.thetabar(ctx, j)
        comm = max(comm, _elem_diff(pg.mul(ti, tj), pg.mul(tj, ti)), _elem_diff(pg.mul(ti, tbj), pg.mul(tbj, ti)))
    out.append(Check("cross-mode commutativity of generators (exact)", comm == 0.0))
    t, tb = pg.theta(ctx, 1), pg.thetabar(ctx, 1)
    expect = pg.monomial(ctx, (1,) + (0,) * (ctx.m - 1), (1,) + (0,) * (ctx.m - 1), 1 / ctx.alpha)
    out.append(_check("thetabar theta = alpha^-1 theta thetabar", _elem_diff(pg.mul(tb, t), expect), tol))
    out.append(Check("theta^k = 0", (t ** ctx.k).is_zero(0.0)))
    out.append(Check(f"dimension k^(2m) = {ctx.k ** (2 * ctx.m)}",
                     sum(1 for _ in pg.basis_keys(ctx)) == ctx.k ** (2 * ctx.m)))
    return out


def algebra_suite(k: int, m: int, alpha: float = 1.0, seed: int = 0) -> list[Check]:
    ctx = QContext(k=k, m=m, alpha=alpha)
    rng = np.random.default_rng(seed)
    return operator_checks(ctx) + pg_checks(ctx, rng)


def orthonormality_matrix(ctx: QContext) -> np.ndarray:
    """``int :<n|theta) mu (theta|n'>:`` for all occupation vectors, as a ``k**m`` square matrix."""
    mu = measure_weight(ctx)
    occ = [tuple(int(x) for x in n) for n in fock.occupations(ctx)]
    right = [pg.antiwick_mul(mu, antihol_basis(ctx, n)) for n in occ]
    out = np.zeros((len(occ), len(occ)), dtype=complex)
    for r, n in enumerate(occ):
        left = hol_basis(ctx, n)
        for c in range(len(occ)):
            out[r, c] = integrate_full(pg.antiwick_mul(left, right[c]))
    return out


def identity_suite(k: int, m: int, alpha: float = 1.0, tol: float = 1e-10) -> list[Check]:
    ctx = QContext(k=k, m=m, alpha=alpha)
    eye = fock.identity(ctx).matrix
    out = [
        _check("resolution of unity T_1 = I", _maxdiff(toeplitz(pg.constant(ctx, 1)).matrix, eye), tol),
        _check("orthonormality deltas", _maxdiff(orthonormality_matrix(ctx), eye), tol),
    ]
    sym = 0.0
    for i in range(1, m + 1):
        sym = max(sym, _maxdiff(toeplitz(pg.theta(ctx, i)).matrix, fock.annihilation(ctx, i).matrix),
                  _maxdiff(toeplitz(pg.thetabar(ctx, i)).matrix, fock.creation(ctx, i).matrix))
    out.append(_check("symbol calculus T_theta = a, T_thetabar = ad", sym, tol))
    return out


def trace_values(k: int, m: int, trials: int, seed: int = 0, alpha: float = 1.0, op: str | None = None):
    """Pairs ``(symbolic_trace, matrix_trace)`` for seeded random operators or one parsed expression."""
    ctx = QContext(k=k, m=m, alpha=alpha)
    if op is not None:
        exprs = [parse_op(op)]
    else:
        rng = np.random.default_rng(seed)
        exprs = [random_op_expr(rng, m) for _ in range(trials)]
    pairs = []
    for e in exprs:
        a = evaluate(e, ctx)
        pairs.append((symbolic_trace(a), fock.matrix_trace(a)))
    return pairs


def trace_suite(k: int, m: int, trials: int = 200, seed: int = 0, alpha: float = 1.0,
                op: str | None = None, rtol: float = 1e-8) -> list[Check]:
    pairs = trace_values(k, m, trials, seed=seed, alpha=alpha, op=op)
    worst = max(abs(s - t) / (1 + abs(t)) for s, t in pairs)
    label = f"symbolic vs matrix trace, {len(pairs)} operator(s), k={k}, m={m}"
    return [Check(label, worst < rtol, f"max scaled error {worst:.3g}, tol {rtol:.0e}")]
