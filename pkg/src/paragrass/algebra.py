"""The m-mode para-Grassmann algebra with real commutation coefficient alpha.

Generators ``theta_i`` and ``thetabar_i`` (``i = 1..m``) satisfy

* ``theta_i**k = thetabar_i**k = 0``,
* ``theta_i thetabar_i = alpha thetabar_i theta_i`` for the same mode,
* full commutativity between different modes.

Every element has a unique expansion in anti-Wick ordered monomials
``theta_m^{n_m} ... theta_1^{n_1} thetabar_m^{n'_m} ... thetabar_1^{n'_1}``,
so an element is stored as the coefficient array ``c[n_1, ..., n_m, n'_1, ..., n'_m]``
of shape ``(k,) * 2m``. Unstored exponents ``>= k`` are identically zero.
The sparse view :attr:`PGElement.coeffs` maps ``((n_1..n_m), (n'_1..n'_m))``
keys to the nonzero coefficients.

Two products are provided. :func:`mul` is the algebra product, which moves
``thetabar`` factors to the right of ``theta`` factors with the commutation
rule ``thetabar^b theta^c = alpha**(-b c) theta^c thetabar^b``. :func:`antiwick_mul`
is the anti-normal ordered product ``:f g:``, which concatenates exponents
without any commutation factor and is what integrands are assembled with.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Mapping

import numpy as np

from .qnum import QContext

__all__ = [
    "PGElement",
    "monomial",
    "constant",
    "theta",
    "thetabar",
    "zero",
    "mul",
    "antiwick_mul",
    "antiwick_prod",
    "conjugate",
    "add",
    "scale",
    "equal_within_tol",
    "random_element",
]

MAX_ENTRIES = 1 << 24


class PGElement:
    """Element of the m-mode para-Grassmann algebra, in anti-Wick normal form."""

    __slots__ = ("ctx", "_c", "_nz")

    def __init__(self, ctx: QContext, array=None):
        shape = (ctx.k,) * (2 * ctx.m)
        if ctx.k ** (2 * ctx.m) > MAX_ENTRIES:
            raise ValueError(f"algebra of dimension k**(2m) = {ctx.k ** (2 * ctx.m)} is too large")
        if array is None:
            c = np.zeros(shape, dtype=complex)
        else:
            c = np.array(array, dtype=complex)
            if c.shape != shape:
                raise ValueError(f"coefficient array must have shape {shape}, got {c.shape}")
        c.flags.writeable = False
        self.ctx = ctx
        self._c = c
        self._nz = None

    @classmethod
    def _wrap(cls, ctx: QContext, c: np.ndarray) -> "PGElement":
        # takes ownership of a freshly computed complex array of the right shape
        obj = cls.__new__(cls)
        c.flags.writeable = False
        obj.ctx = ctx
        obj._c = c
        obj._nz = None
        return obj

    def _nonzero(self) -> list:
        """Cached list of index tuples of the nonzero coefficients."""
        if self._nz is None:
            self._nz = list(zip(*np.nonzero(self._c)))
        return self._nz

    @classmethod
    def from_dict(cls, ctx: QContext, coeffs: Mapping) -> "PGElement":
        c = np.zeros((ctx.k,) * (2 * ctx.m), dtype=complex)
        for key, value in coeffs.items():
            hol, anti = key
            c[_index(ctx, hol, anti)] += value
        return cls(ctx, c)

    @property
    def array(self) -> np.ndarray:
        """Read-only coefficient array, axes ``(n_1..n_m, n'_1..n'_m)``."""
        return self._c

    @property
    def coeffs(self) -> dict:
        m = self.ctx.m
        out = {}
        for idx in self._nonzero():
            idx = tuple(int(j) for j in idx)
            out[(idx[:m], idx[m:])] = complex(self._c[idx])
        return out

    def coefficient(self, hol, anti) -> complex:
        return complex(self._c[_index(self.ctx, hol, anti)])

    def is_zero(self, tol=None) -> bool:
        tol = self.ctx.tol if tol is None else tol
        return bool(np.max(np.abs(self._c), initial=0.0) <= tol)

    def __len__(self):
        return len(self._nonzero())

    def __repr__(self):
        return f"PGElement({render(self)})"

    def __str__(self):
        return render(self)

    def __add__(self, other):
        if isinstance(other, PGElement):
            return add(self, other)
        return add(self, constant(self.ctx, other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PGElement):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = constant(self.ctx, 1)
        for _ in range(n):
            out = mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, PGElement):
            return NotImplemented
        return self.ctx == other.ctx and equal_within_tol(self, other)

    __hash__ = None

    def to_json(self) -> str:
        """Serialize the sparse coefficient map together with its context."""
        terms = [
            {"hol": list(hol), "anti": list(anti), "re": c.real, "im": c.imag}
            for (hol, anti), c in sorted(self.coeffs.items())
        ]
        ctx = self.ctx
        return json.dumps({"k": ctx.k, "m": ctx.m, "alpha": ctx.alpha, "tol": ctx.tol, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "PGElement":
        data = json.loads(text)
        ctx = QContext(k=data["k"], m=data["m"], alpha=data["alpha"], tol=data.get("tol", 1e-10))
        coeffs = {
            (tuple(t["hol"]), tuple(t["anti"])): complex(t["re"], t["im"]) for t in data["terms"]
        }
        return cls.from_dict(ctx, coeffs)


def _index(ctx: QContext, hol: Iterable[int], anti: Iterable[int]) -> tuple:
    hol, anti = tuple(hol), tuple(anti)
    if len(hol) != ctx.m or len(anti) != ctx.m:
        raise ValueError(f"exponent tuples must have length m={ctx.m}")
    for n in hol + anti:
        if isinstance(n, bool) or int(n) != n or not 0 <= n <= ctx.k - 1:
            raise ValueError(f"exponents must lie in 0..{ctx.k - 1}, got {hol}, {anti}")
    return tuple(int(n) for n in hol + anti)


def _check_same(f: PGElement, g: PGElement):
    if f.ctx != g.ctx:
        raise ValueError(f"elements belong to different contexts: {f.ctx} vs {g.ctx}")


def monomial(ctx: QContext, hol, anti, c: complex = 1.0) -> PGElement:
    """``c * theta^hol thetabar^anti`` with per-mode exponent tuples."""
    arr = np.zeros((ctx.k,) * (2 * ctx.m), dtype=complex)
    arr[_index(ctx, hol, anti)] = c
    return PGElement(ctx, arr)


def constant(ctx: QContext, c: complex) -> PGElement:
    zeros = (0,) * ctx.m
    return monomial(ctx, zeros, zeros, c)


def zero(ctx: QContext) -> PGElement:
    return PGElement(ctx)


def _unit(ctx: QContext, i: int) -> tuple:
    if isinstance(i, bool) or int(i) != i or not 1 <= i <= ctx.m:
        raise ValueError(f"mode index must be in 1..{ctx.m}, got {i!r}")
    return tuple(1 if j == i else 0 for j in range(1, ctx.m + 1))


def theta(ctx: QContext, i: int = 1) -> PGElement:
    return monomial(ctx, _unit(ctx, i), (0,) * ctx.m)


def thetabar(ctx: QContext, i: int = 1) -> PGElement:
    return monomial(ctx, (0,) * ctx.m, _unit(ctx, i))


def add(f: PGElement, g: PGElement) -> PGElement:
    _check_same(f, g)
    return PGElement(f.ctx, f._c + g._c)


def scale(f: PGElement, c: complex) -> PGElement:
    return PGElement(f.ctx, c * f._c)


def equal_within_tol(f: PGElement, g: PGElement, tol=None) -> bool:
    _check_same(f, g)
    tol = f.ctx.tol if tol is None else tol
    return bool(np.max(np.abs(f._c - g._c), initial=0.0) <= tol)


def _shift_slices(k: int, shift) -> tuple[tuple, tuple]:
    dst = tuple(slice(s, k) for s in shift)
    src = tuple(slice(0, k - s) for s in shift)
    return dst, src


def _alpha_weights(ctx: QContext, exps) -> np.ndarray:
    """Outer product over modes of ``alpha**(-e_i * j)``, ``j = 0..k-1``."""
    j = np.arange(ctx.k)
    w = np.ones((1,) * 0)
    for e in exps:
        w = np.multiply.outer(w, ctx.alpha ** (-(e * j).astype(float)))
    return w


def _product(f: PGElement, g: PGElement, commute: bool) -> PGElement:
    _check_same(f, g)
    ctx = f.ctx
    k, m = ctx.k, ctx.m
    F, G = f._c, g._c
    nzf, nzg = f._nonzero(), g._nonzero()
    nf, ng = len(nzf), len(nzg)
    out = np.zeros(F.shape, dtype=complex)
    if nf == 0 or ng == 0:
        return PGElement._wrap(ctx, out)
    use_alpha = commute and ctx.alpha != 1.0
    if nf <= ng:
        # shift g by every term (a, b) of f; thetabar^b passes theta^c of g
        for idx in nzf:
            anti = idx[m:]
            dst, src = _shift_slices(k, idx)
            block = G
            if use_alpha:
                block = G * _alpha_weights(ctx, anti).reshape((k,) * m + (1,) * m)
            out[dst] += F[idx] * block[src]
    else:
        for idx in nzg:
            hol = idx[:m]
            dst, src = _shift_slices(k, idx)
            block = F
            if use_alpha:
                block = F * _alpha_weights(ctx, hol).reshape((1,) * m + (k,) * m)
            out[dst] += G[idx] * block[src]
    return PGElement._wrap(ctx, out)


def mul(f: PGElement, g: PGElement) -> PGElement:
    """Algebra product ``f g`` reduced to anti-Wick normal form.

    Per mode, ``thetabar^b theta^c = alpha**(-b*c) theta^c thetabar^b`` (this
    follows from applying the defining relation ``b*c`` times); different
    modes commute and exponent sums ``>= k`` vanish.
    """
    return _product(f, g, commute=True)


def antiwick_mul(f: PGElement, g: PGElement) -> PGElement:
    """Anti-normal ordered product ``:f g:``; exponents add, no alpha factors."""
    return _product(f, g, commute=False)


def antiwick_prod(*factors: PGElement) -> PGElement:
    if not factors:
        raise ValueError("antiwick_prod needs at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = antiwick_mul(out, f)
    return out


def conjugate(f: PGElement) -> PGElement:
    """Star conjugation: complex-conjugate coefficients, swap theta and thetabar degrees."""
    m = f.ctx.m
    perm = tuple(range(m, 2 * m)) + tuple(range(m))
    return PGElement(f.ctx, np.conj(f._c).transpose(perm))


def render(f: PGElement, precision: int = 12) -> str:
    """Human-readable rendering, e.g. ``(-0.5+0i)·t2^1 t1^2 tb2^0 tb1^1``."""
    m = f.ctx.m
    terms = []
    for (hol, anti), c in sorted(f.coeffs.items()):
        coeff = f"({c.real:.{precision}g}{c.imag:+.{precision}g}i)"
        vars_ = [f"t{i}^{hol[i - 1]}" for i in range(m, 0, -1)]
        vars_ += [f"tb{i}^{anti[i - 1]}" for i in range(m, 0, -1)]
        terms.append(coeff + "·" + " ".join(vars_))
    return " + ".join(terms) if terms else "0"


def random_element(ctx: QContext, rng: np.random.Generator, terms: int | None = 12) -> PGElement:
    """Random element with ``terms`` distinct monomials (all ``k**(2m)`` if ``None``).

    Coefficients have real and imaginary parts uniform in ``[-1, 1)``.
    """
    size = ctx.k ** (2 * ctx.m)
    n = size if terms is None else min(terms, size)
    flat = np.zeros(size, dtype=complex)
    where = rng.choice(size, size=n, replace=False)
    flat[where] = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    return PGElement._wrap(ctx, flat.reshape((ctx.k,) * (2 * ctx.m)))


def basis_keys(ctx: QContext):
    """All ``k**(2m)`` anti-Wick basis keys."""
    rng = range(ctx.k)
    for idx in itertools.product(rng, repeat=2 * ctx.m):
        yield idx[: ctx.m], idx[ctx.m :]
