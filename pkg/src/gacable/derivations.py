"""Derivations of polynomial rings and the constructions built on them."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Union

from .exact_poly import (
    Bigrading,
    PolyError,
    Polynomial,
    VarSet,
    VarSetMismatch,
    _clean,
    format_poly,
    monomial_basis,
    try_divide,
)
from .linalg_graded import VectorSpaceBasis, _kernel_sparse, _solve_sparse

DEFAULT_BOUND = 512


class DerivationError(PolyError):
    pass


class InhomogeneousDerivation(DerivationError):
    pass


class NotALocalSlice(DerivationError):
    pass


class NilpotencyBoundExceeded(DerivationError):
    pass


class Derivation:
    """A derivation determined by the images of the variables.

    Variables missing from ``images`` are sent to zero.
    """

    __slots__ = ("varset", "_images", "_active")

    def __init__(self, varset: VarSet, images: Mapping[str, Polynomial]):
        self.varset = varset
        imgs: List[Polynomial] = []
        for name in images:
            varset.index(name)
        for name in varset.names:
            p = images.get(name)
            if p is None:
                p = varset.zero()
            elif not isinstance(p, Polynomial):
                p = Polynomial.constant(varset, p)
            elif p.varset != varset:
                raise VarSetMismatch(f"image of {name!r} lives in {p.varset}")
            imgs.append(p)
        self._images = tuple(imgs)
        self._active = tuple(i for i, p in enumerate(imgs) if not p.is_zero())

    @classmethod
    def partial(cls, varset: VarSet, name: str) -> "Derivation":
        return cls(varset, {name: varset.one()})

    @property
    def images(self) -> Dict[str, Polynomial]:
        return dict(zip(self.varset.names, self._images))

    def image(self, name: str) -> Polynomial:
        return self._images[self.varset.index(name)]

    def __repr__(self) -> str:
        parts = [f"{n} -> {format_poly(p)}" for n, p in zip(self.varset.names, self._images) if p]
        return "Derivation(" + ", ".join(parts) + ")"

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.varset == other.varset and self._images == other._images

    def __hash__(self) -> int:
        return hash((self.varset, self._images))

    def apply(self, p: Polynomial) -> Polynomial:
        if p.varset != self.varset:
            raise VarSetMismatch(f"derivation over {self.varset}, polynomial over {p.varset}")
        acc: Dict[tuple, object] = {}
        get = acc.get
        images = self._images
        for m, c in p.items():
            for i in self._active:
                e = m[i]
                if not e:
                    continue
                base = m[:i] + (e - 1,) + m[i + 1:]
                ce = c * e
                for im, ic in images[i].items():
                    t = tuple(x + y for x, y in zip(base, im))
                    acc[t] = get(t, 0) + ce * ic
        return Polynomial._raw(self.varset, {m: _clean(c) for m, c in acc.items() if c})

    __call__ = apply

    def power(self, p: Polynomial, k: int) -> Polynomial:
        for _ in range(k):
            if p.is_zero():
                break
            p = self.apply(p)
        return p

    def orbit(self, p: Polynomial, bound: int = DEFAULT_BOUND) -> List[Polynomial]:
        """[p, Dp, D^2 p, ...] up to the last nonzero iterate."""
        out = []
        while not p.is_zero():
            if len(out) >= bound:
                raise NilpotencyBoundExceeded(f"D^{bound} p is still nonzero")
            out.append(p)
            p = self.apply(p)
        return out

    def nilpotency_order(self, p: Polynomial, bound: int = DEFAULT_BOUND) -> Optional[int]:
        """Least ``n`` with ``D^n p = 0``; ``None`` when not reached within ``bound`` steps."""
        n = 0
        while not p.is_zero():
            if n >= bound:
                return None
            p = self.apply(p)
            n += 1
        return n

    def commutator_on(self, other: "Derivation", name: str) -> Polynomial:
        x = self.varset.var(name)
        return self.apply(other.apply(x)) - other.apply(self.apply(x))

    def commutes(self, other: "Derivation") -> bool:
        if other.varset != self.varset:
            raise VarSetMismatch("derivations over different varsets")
        return all(self.commutator_on(other, n).is_zero() for n in self.varset.names)

    def degree_shift(self, g: Bigrading):
        """The common degree shift ``deg D(x) - deg x``; raises if there is none."""
        if g.varset != self.varset:
            raise VarSetMismatch("grading and derivation use different varsets")
        shift = None
        for name, img in zip(self.varset.names, self._images):
            if img.is_zero():
                continue
            d = g.bigrade(img)
            if d is None:
                raise InhomogeneousDerivation(f"D({name}) = {format_poly(img)} is not homogeneous")
            s = tuple(a - b for a, b in zip(d, g.weight(name)))
            if shift is None:
                shift = s
            elif s != shift:
                raise InhomogeneousDerivation(f"degree shifts {shift} and {s} disagree")
        if shift is None:
            shift = (0,) * g.rank
        return type(g.weight(self.varset.names[0]))(*shift) if g.rank == 2 else shift

    def is_homogeneous(self, g: Bigrading) -> bool:
        try:
            self.degree_shift(g)
        except InhomogeneousDerivation:
            return False
        return True

    def apply_localized(self, q: "LocalizedElement") -> "LocalizedElement":
        """D(n / b^k) = (D(n) b - k n D(b)) / b^(k+1)."""
        n, b, k = q.numerator, q.denom_base, q.denom_power
        if k == 0:
            return LocalizedElement(self.apply(n), b, 0)
        num = self.apply(n) * b - n * self.apply(b) * k
        return LocalizedElement(num, b, k + 1)


# -- graded kernels and preimages --------------------------------------------


def _graded_columns(vs: VarSet, g: Bigrading, d, restrict):
    # canonical column order is ascending graded-lex, so free columns are the larger monomials
    monos = monomial_basis(vs, g, d, restrict)
    monos.reverse()
    return monos


def _derivation_matrix(D: Derivation, cols):
    images = [D.apply(Polynomial._raw(D.varset, {m: 1})) for m in cols]
    row_index: Dict[tuple, int] = {}
    for img in images:
        for m, _ in img.items():
            if m not in row_index:
                row_index[m] = len(row_index)
    rows: List[Dict[int, Fraction]] = [dict() for _ in row_index]
    for j, img in enumerate(images):
        for m, c in img.items():
            rows[row_index[m]][j] = Fraction(c)
    return rows, row_index


def kernel_graded(D: Derivation, g: Bigrading, d, restrict=None) -> VectorSpaceBasis:
    """Reduced basis of ker D in the degree-``d`` piece (optionally in a subset of variables)."""
    D.degree_shift(g)
    cols = _graded_columns(D.varset, g, d, restrict)
    rows, _ = _derivation_matrix(D, cols)
    vecs = []
    for v in _kernel_sparse(rows, len(cols)):
        vecs.append(Polynomial._raw(D.varset, {cols[j]: _clean(c) for j, c in enumerate(v) if c}))
    full = monomial_basis(D.varset, g, d, restrict)
    return VectorSpaceBasis(D.varset, vecs, g, d, full)


def preimage_graded(D: Derivation, target: Polynomial, g: Bigrading, d, restrict=None) -> Optional[Polynomial]:
    """Canonical ``p`` of degree ``d`` with ``D(p) = target``, or ``None``."""
    shift = D.degree_shift(g)
    if target.varset != D.varset:
        raise VarSetMismatch("target lives in another varset")
    if not target.is_zero():
        want = tuple(a + b for a, b in zip(d, shift))
        if not g.is_homogeneous(target, want):
            raise DerivationError(f"target is not homogeneous of degree {want}")
    cols = _graded_columns(D.varset, g, d, restrict)
    if target.is_zero():
        return D.varset.zero()
    rows, row_index = _derivation_matrix(D, cols)
    b = [0] * len(rows)
    for m, c in target.items():
        if m not in row_index:
            return None
        b[row_index[m]] = c
    x = _solve_sparse(rows, len(cols), b)
    if x is None:
        return None
    return Polynomial._raw(D.varset, {cols[j]: _clean(c) for j, c in enumerate(x) if c})


# -- localized elements -------------------------------------------------------


class LocalizedElement:
    """``numerator / denom_base ** denom_power``, kept with as small a power as possible."""

    __slots__ = ("numerator", "denom_base", "denom_power")

    def __init__(self, numerator: Polynomial, denom_base: Polynomial, denom_power: int = 0):
        if denom_base.is_zero():
            raise ZeroDivisionError("localization at zero")
        if numerator.varset != denom_base.varset:
            raise VarSetMismatch("numerator and denominator in different varsets")
        if denom_power < 0:
            raise ValueError("negative denominator power")
        while denom_power > 0:
            if numerator.is_zero():
                denom_power = 0
                break
            q = try_divide(numerator, denom_base)
            if q is None:
                break
            numerator, denom_power = q, denom_power - 1
        self.numerator = numerator
        self.denom_base = denom_base
        self.denom_power = denom_power

    @classmethod
    def of(cls, p: Polynomial, base: Polynomial) -> "LocalizedElement":
        return cls(p, base, 0)

    def is_polynomial(self) -> bool:
        return self.denom_power == 0

    def to_polynomial(self) -> Polynomial:
        if self.denom_power:
            raise DerivationError(f"not a polynomial: denominator ({format_poly(self.denom_base)})^{self.denom_power}")
        return self.numerator

    def _align(self, other: "LocalizedElement"):
        if isinstance(other, Polynomial):
            other = LocalizedElement(other, self.denom_base, 0)
        if other.denom_base != self.denom_base:
            raise DerivationError("cannot combine elements localized at different bases")
        k = max(self.denom_power, other.denom_power)
        a = self.numerator * (self.denom_base ** (k - self.denom_power))
        b = other.numerator * (self.denom_base ** (k - other.denom_power))
        return a, b, k

    def __add__(self, other):
        a, b, k = self._align(other)
        return LocalizedElement(a + b, self.denom_base, k)

    def __sub__(self, other):
        a, b, k = self._align(other)
        return LocalizedElement(a - b, self.denom_base, k)

    def __neg__(self):
        return LocalizedElement(-self.numerator, self.denom_base, self.denom_power)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return LocalizedElement(self.numerator * other, self.denom_base, self.denom_power)
        if isinstance(other, LocalizedElement):
            if other.denom_base != self.denom_base:
                raise DerivationError("cannot combine elements localized at different bases")
            return LocalizedElement(self.numerator * other.numerator, self.denom_base, self.denom_power + other.denom_power)
        return LocalizedElement(self.numerator * other, self.denom_base, self.denom_power)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.denom_power == 0 and self.numerator == other
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        if other.denom_base != self.denom_base:
            return (self.numerator * other.denom_base ** other.denom_power
                    == other.numerator * self.denom_base ** self.denom_power)
        a, b, _ = self._align(other)
        return a == b

    def __repr__(self) -> str:
        if self.denom_power == 0:
            return f"LocalizedElement({format_poly(self.numerator)!r})"
        return f"LocalizedElement(({format_poly(self.numerator)}) / ({format_poly(self.denom_base)})^{self.denom_power})"


SliceLike = Union[str, Polynomial]


def _as_poly(D: Derivation, s: SliceLike) -> Polynomial:
    return D.varset.var(s) if isinstance(s, str) else s


def dixmier(D: Derivation, s: SliceLike, f: Polynomial, bound: int = DEFAULT_BOUND) -> LocalizedElement:
    """pi_s(f) = sum_i (-1)^i / i! * D^i f * (s / Ds)^i for a local slice ``s``."""
    s = _as_poly(D, s)
    ds = D.apply(s)
    if ds.is_zero() or not D.apply(ds).is_zero():
        raise NotALocalSlice(f"{format_poly(s)} is not a local slice")
    try:
        terms = D.orbit(f, bound)
    except NilpotencyBoundExceeded:
        raise
    k = len(terms) - 1
    if k < 0:
        return LocalizedElement(f, ds, 0)
    num = D.varset.zero()
    s_pow = D.varset.one()
    ds_pows = [D.varset.one()]
    for _ in range(k):
        ds_pows.append(ds_pows[-1] * ds)
    for i, t in enumerate(terms):
        coeff = Fraction((-1) ** i, factorial(i))
        num = num + (t * s_pow * ds_pows[k - i]).scale(coeff)
        s_pow = s_pow * s
    return LocalizedElement(num, ds, k)


def exp_map(D: Derivation, f: Polynomial, p: Polynomial, bound: int = DEFAULT_BOUND) -> Polynomial:
    """exp(fD)(p) = sum_i f^i / i! * D^i p, for ``f`` in ker D."""
    if not D.apply(f).is_zero():
        raise DerivationError(f"{format_poly(f)} is not in the kernel")
    out = D.varset.zero()
    fpow = D.varset.one()
    for i, t in enumerate(D.orbit(p, bound)):
        out = out + (fpow * t).scale(Fraction(1, factorial(i)))
        fpow = fpow * f
    return out


def _det(m: List[List[Polynomial]]) -> Polynomial:
    n = len(m)
    memo: Dict[tuple, Polynomial] = {}

    def minor(row: int, cols: tuple) -> Polynomial:
        if row == n:
            return m[0][0].varset.one()
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = m[0][0].varset.zero()
        for k, c in enumerate(cols):
            entry = m[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = entry * sub
            acc = acc - term if k % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def wronskian(D: Derivation, fs: Sequence[Polynomial]) -> Polynomial:
    """det(D^i f_j), rows i = 0..n-1, columns j."""
    if not fs:
        raise DerivationError("wronskian of an empty list")
    n = len(fs)
    rows = [list(fs)]
    for _ in range(n - 1):
        rows.append([D.apply(p) for p in rows[-1]])
    return _det(rows)


def determinant(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    return _det([list(r) for r in m])
