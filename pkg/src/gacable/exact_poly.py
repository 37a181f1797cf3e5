"""Sparse multivariate polynomials over the rationals.

A :class:`Polynomial` is a map from exponent tuples (aligned to a
:class:`VarSet`) to nonzero rational coefficients.  Coefficients are stored as
``int`` when integral and :class:`fractions.Fraction` otherwise, so integer
polynomials never pay for rational arithmetic.

All values are treated as immutable.  Terms are kept in a plain dict; the
canonical order (descending graded-lex over the variable order) is only
materialized for printing, serialization and linear algebra.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class PolyError(ValueError):
    """Base class for polynomial errors."""


class VarSetMismatch(PolyError):
    pass


class InexactDivision(PolyError):
    pass


class ParseError(PolyError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _clean(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _clean(Fraction(c))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class VarSet:
    """Ordered, immutable list of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise PolyError("a VarSet needs at least one variable")
        for n in names:
            if not isinstance(n, str) or not n:
                raise PolyError(f"bad variable name {n!r}")
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}; varset is {self.names}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)})"

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def gens(self) -> List["Polynomial"]:
        return [self.var(n) for n in self.names]


def glex_key(m: Monomial) -> Tuple[int, Monomial]:
    """Sort key for graded-lex; larger key means larger monomial."""
    return (sum(m), m)


class Polynomial:
    __slots__ = ("varset", "_terms", "_hash")

    def __init__(self, varset: VarSet, terms: Optional[Mapping[Monomial, object]] = None):
        self.varset = varset
        self._hash = None
        clean: Dict[Monomial, object] = {}
        if terms:
            n = len(varset)
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != n or any(e < 0 for e in mono):
                    raise PolyError(f"bad exponent vector {mono} for {varset}")
                c = _clean(c)
                if c:
                    clean[mono] = _clean(clean.get(mono, 0) + c)
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean

    @classmethod
    def _raw(cls, varset: VarSet, terms: Dict[Monomial, object]) -> "Polynomial":
        # trusted constructor: terms already canonical (no zeros, clean coefficients)
        p = cls.__new__(cls)
        p.varset = varset
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, varset: VarSet, c) -> "Polynomial":
        c = _clean(c)
        return cls._raw(varset, {(0,) * len(varset): c} if c else {})

    @classmethod
    def variable(cls, varset: VarSet, name: str) -> "Polynomial":
        e = [0] * len(varset)
        e[varset.index(name)] = 1
        return cls._raw(varset, {tuple(e): 1})

    @classmethod
    def monomial(cls, varset: VarSet, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(varset, {tuple(exps): c})

    # -- basic access -----------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms, key=glex_key, reverse=True)

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        return [(m, self._terms[m]) for m in self.monomials()]

    def coefficient(self, mono: Sequence[int]):
        return self._terms.get(tuple(mono), 0)

    def coeff_of(self, **exps: int):
        """Coefficient of the monomial given by keyword exponents, e.g. ``p.coeff_of(x1=1, x5=1)``."""
        e = [0] * len(self.varset)
        for name, k in exps.items():
            e[self.varset.index(name)] = k
        return self._terms.get(tuple(e), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, name: str) -> int:
        i = self.varset.index(name)
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def leading_term(self) -> Tuple[Monomial, object]:
        if not self._terms:
            raise PolyError("zero polynomial has no leading term")
        m = max(self._terms, key=glex_key)
        return m, self._terms[m]

    def variables(self) -> List[str]:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.varset.names[i] for i in sorted(used)]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.varset != self.varset:
                raise VarSetMismatch(f"{self.varset} vs {other.varset}; embed first")
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.varset, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = _clean(v + c)
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.varset, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.varset, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        c = _clean(c)
        if not c:
            return Polynomial._raw(self.varset, {})
        if c == 1:
            return self
        return Polynomial._raw(self.varset, {m: _clean(v * c) for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw(self.varset, {})
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, object] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw(self.varset, {m: _clean(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self.scale(Fraction(1) / as_fraction(other))
        if isinstance(other, Polynomial):
            return divide_exact(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.varset, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.varset == other.varset and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- calculus & substitution -----------------------------------------

    def partial(self, name: str) -> "Polynomial":
        return partial_derivative(self, name)

    def subs(self, bindings: Mapping[str, object], target: Optional[VarSet] = None) -> "Polynomial":
        return substitute(self, bindings, target)

    def embed(self, target: VarSet) -> "Polynomial":
        return embed(self, target)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.varset, {m: fn(c) for m, c in self._terms.items()})

    def content_denominator(self) -> int:
        """LCM of the coefficient denominators."""
        from math import lcm
        d = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        return d


def arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown op {op!r}")


def partial_derivative(p: Polynomial, name: str) -> Polynomial:
    i = p.varset.index(name)
    out = {}
    for m, c in p.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return Polynomial._raw(p.varset, out)


def embed(p: Polynomial, target: VarSet) -> Polynomial:
    """Re-express ``p`` over a larger (or reordered) varset containing all of its used variables."""
    if p.varset == target:
        return p
    src = p.varset
    idx = []
    for name in src.names:
        idx.append(target.index(name) if name in target else None)
    out = {}
    n = len(target)
    for m, c in p.items():
        e = [0] * n
        for i, k in enumerate(m):
            if k:
                j = idx[i]
                if j is None:
                    raise VarSetMismatch(f"variable {src.names[i]!r} missing from target {target}")
                e[j] = k
        out[tuple(e)] = c
    return Polynomial._raw(target, out)


def substitute(p: Polynomial, bindings: Mapping[str, object], target: Optional[VarSet] = None) -> Polynomial:
    """Simultaneous substitution ``var -> polynomial``.

    Unbound variables map to the same-named variable of the target varset
    (an error if the target has no such variable).  The target varset is
    taken from the bindings when not given explicitly.
    """
    if target is None:
        vs = {b.varset for b in bindings.values() if isinstance(b, Polynomial)}
        if len(vs) > 1:
            raise VarSetMismatch("bindings live in different varsets")
        target = vs.pop() if vs else p.varset
    images: List[Polynomial] = []
    for name in p.varset.names:
        if name in bindings:
            b = bindings[name]
            if isinstance(b, Polynomial):
                if b.varset != target:
                    raise VarSetMismatch(f"binding for {name!r} lives in {b.varset}, expected {target}")
            else:
                b = Polynomial.constant(target, b)
            images.append(b)
        else:
            images.append(None)
    unknown = set(bindings) - set(p.varset.names)
    if unknown:
        raise PolyError(f"bindings for unknown variables {sorted(unknown)}")

    # power cache per variable; unbound ones resolved lazily
    cache: List[Dict[int, Polynomial]] = [dict() for _ in p.varset.names]

    def power(i: int, k: int) -> Polynomial:
        c = cache[i]
        if k in c:
            return c[k]
        if images[i] is None:
            images[i] = Polynomial.variable(target, p.varset.names[i])
        if k == 1:
            r = images[i]
        else:
            r = power(i, k - 1) * images[i]
        c[k] = r
        return r

    out = Polynomial._raw(target, {})
    acc: Dict[Monomial, object] = {}
    for m, c in p.items():
        term = None
        for i, k in enumerate(m):
            if k:
                f = power(i, k)
                term = f if term is None else term * f
        if term is None:
            z = (0,) * len(target)
            acc[z] = acc.get(z, 0) + c
        else:
            for tm, tc in term.items():
                acc[tm] = acc.get(tm, 0) + c * tc
    out = Polynomial._raw(target, {m: _clean(c) for m, c in acc.items() if c})
    return out


# -- division -------------------------------------------------------------


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def try_divide(p: Polynomial, q: Polynomial) -> Optional[Polynomial]:
    """Exact quotient ``p / q`` or ``None`` when ``q`` does not divide ``p``."""
    if p.varset != q.varset:
        raise VarSetMismatch(f"{p.varset} vs {q.varset}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    if len(q) == 1:
        (qm, qc), = q.items()
        inv = Fraction(1) / as_fraction(qc)
        out = {}
        for m, c in p.items():
            if not _mono_divides(qm, m):
                return None
            out[tuple(x - y for x, y in zip(m, qm))] = _clean(c * inv)
        return Polynomial._raw(p.varset, out)

    lm, lc = q.leading_term()
    inv = Fraction(1) / as_fraction(lc)
    rest = [(m, c) for m, c in q.items() if m != lm]
    rem = dict(p.items())
    heap = [(-sum(m), tuple(-e for e in m)) for m in rem]
    heapq.heapify(heap)
    quot: Dict[Monomial, object] = {}
    while rem:
        while True:
            negdeg, negm = heapq.heappop(heap)
            m = tuple(-e for e in negm)
            if m in rem:
                break
        c = rem.pop(m)
        if not _mono_divides(lm, m):
            return None
        qmono = tuple(x - y for x, y in zip(m, lm))
        qc = _clean(c * inv)
        quot[qmono] = qc
        for rm, rc in rest:
            t = tuple(x + y for x, y in zip(qmono, rm))
            v = rem.get(t)
            if v is None:
                rem[t] = _clean(-qc * rc)
                heapq.heappush(heap, (-sum(t), tuple(-e for e in t)))
            else:
                v = _clean(v - qc * rc)
                if v:
                    rem[t] = v
                else:
                    del rem[t]
    return Polynomial._raw(p.varset, quot)


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    r = try_divide(p, q)
    if r is None:
        raise InexactDivision(f"{format_poly(q)} does not divide {format_poly(p)}")
    return r


# -- gradings -------------------------------------------------------------


class Bigrade(NamedTuple):
    r: int
    s: int

    def __add__(self, other):  # type: ignore[override]
        return Bigrade(self.r + other[0], self.s + other[1])

    def __sub__(self, other):
        return Bigrade(self.r - other[0], self.s - other[1])


class Bigrading:
    """Assignment of an integer weight vector to each variable of a varset.

    Weights are usually pairs (the ``(r, s)`` bigrading); longer vectors are
    accepted for finer multigradings.  Pair-valued degrees are returned as
    :class:`Bigrade`.
    """

    __slots__ = ("varset", "_weights", "rank")

    def __init__(self, varset: VarSet, degrees: Mapping[str, Sequence[int]]):
        missing = [n for n in varset.names if n not in degrees]
        if missing:
            raise PolyError(f"grading is not total: missing {missing}")
        extra = set(degrees) - set(varset.names)
        if extra:
            raise PolyError(f"grading names unknown variables {sorted(extra)}")
        ws = [tuple(int(c) for c in degrees[n]) for n in varset.names]
        ranks = {len(w) for w in ws}
        if len(ranks) != 1 or 0 in ranks:
            raise PolyError("all weight vectors must have the same positive length")
        self.varset = varset
        self.rank = ranks.pop()
        self._weights = tuple(self._wrap(w) for w in ws)

    def _wrap(self, w):
        return Bigrade(*w) if self.rank == 2 else tuple(w)

    @property
    def degrees(self) -> Dict[str, Tuple[int, ...]]:
        return dict(zip(self.varset.names, self._weights))

    def weight(self, name: str):
        return self._weights[self.varset.index(name)]

    def of_monomial(self, m: Monomial):
        acc = [0] * self.rank
        for e, w in zip(m, self._weights):
            if e:
                for k in range(self.rank):
                    acc[k] += e * w[k]
        return self._wrap(acc)

    def bigrade(self, p: Polynomial):
        """Degree of a nonzero homogeneous polynomial, else ``None``."""
        self._check(p)
        grades = {self.of_monomial(m) for m in p._terms}
        if len(grades) == 1:
            return grades.pop()
        return None

    degree = bigrade

    def is_homogeneous(self, p: Polynomial, d: Optional[Sequence[int]] = None) -> bool:
        self._check(p)
        if p.is_zero():
            return True
        g = self.bigrade(p)
        return g is not None and (d is None or tuple(g) == tuple(d))

    def _check(self, p: Polynomial):
        if p.varset != self.varset:
            raise VarSetMismatch(f"grading is over {self.varset}, polynomial over {p.varset}")

    def decompose(self, p: Polynomial):
        self._check(p)
        parts: Dict[tuple, Dict[Monomial, object]] = {}
        for m, c in p.items():
            parts.setdefault(self.of_monomial(m), {})[m] = c
        return [(g, Polynomial._raw(p.varset, parts[g])) for g in sorted(parts)]

    def restricted(self, varset: VarSet) -> "Bigrading":
        return Bigrading(varset, {n: self.weight(n) for n in varset.names})


def bigrade_decompose(p: Polynomial, g: Bigrading) -> List[Tuple[Bigrade, Polynomial]]:
    return g.decompose(p)


def monomial_basis(
    vs: VarSet,
    g: Bigrading,
    d: Sequence[int],
    restrict: Optional[Iterable[str]] = None,
) -> List[Monomial]:
    """All monomials of degree exactly ``d``, descending graded-lex.

    Variables outside ``restrict`` (when given) get exponent zero.  Weights
    must be non-negative and no variable may have the zero weight, otherwise
    the piece could be infinite.
    """
    if g.varset != vs:
        raise VarSetMismatch(f"grading is over {g.varset}, not {vs}")
    target = tuple(d)
    if len(target) != g.rank:
        raise PolyError(f"degree {target} has the wrong length for a rank-{g.rank} grading")
    if any(c < 0 for c in target):
        return []
    allowed = set(vs.names if restrict is None else restrict)
    for name in allowed:
        vs.index(name)
    weights = [tuple(g.weight(n)) if n in allowed else None for n in vs.names]
    for n, w in zip(vs.names, weights):
        if w is not None and (min(w) < 0 or not any(w)):
            raise PolyError(f"cannot enumerate monomials: variable {n} has weight {w}")
    n = len(vs)
    rk = g.rank
    # reach[i][k]: some variable at position >= i has positive k-th weight
    reach = [[False] * rk for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        w = weights[i]
        for k in range(rk):
            reach[i][k] = reach[i + 1][k] or (w is not None and w[k] > 0)

    out: List[Monomial] = []
    exps = [0] * n

    def rec(i: int, rem: List[int]):
        if not any(rem):
            out.append(tuple(exps))
            return
        if i == n:
            return
        ri = reach[i]
        for k in range(rk):
            if rem[k] and not ri[k]:
                return
        w = weights[i]
        if w is None:
            rec(i + 1, rem)
            return
        e = 0
        cur = list(rem)
        while all(c >= 0 for c in cur):
            exps[i] = e
            rec(i + 1, cur)
            e += 1
            cur = [c - wk for c, wk in zip(cur, w)]
        exps[i] = 0

    rec(0, list(target))
    out.sort(key=glex_key, reverse=True)
    return out


# -- text & JSON ------------------------------------------------------------


def _format_coeff(c) -> str:
    c = as_fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    names = p.varset.names
    pieces = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(a) + "*" + "*".join(factors)
        if k == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_poly(text: str, varset: Optional[VarSet] = None) -> Polynomial:
    """Parse ``coeff*var^e*... +/- ...``; coefficients are integers or ``p/q``.

    When ``varset`` is omitted the variables are taken in order of first
    appearance.
    """
    toks = _tokenize(text)
    if varset is None:
        seen: List[str] = []
        for kind, val, _ in toks:
            if kind == "name" and val not in seen:
                seen.append(val)
        varset = VarSet(seen or ["x"])
    k = 0
    terms: Dict[Monomial, object] = {}
    n = len(varset)

    def peek():
        return toks[k]

    def expect_num() -> int:
        nonlocal k
        kind, val, pos = toks[k]
        if kind != "num":
            raise ParseError("expected integer", pos)
        k += 1
        return int(val)

    first = True
    while True:
        kind, val, pos = peek()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            k += 1
        elif not first:
            if kind == "end":
                break
            raise ParseError(f"expected '+' or '-', got {val!r}", pos)
        elif kind == "end":
            raise ParseError("empty expression", pos)
        first = False
        coeff = Fraction(sign)
        exps = [0] * n
        need_factor = True
        while need_factor:
            kind, val, pos = peek()
            if kind == "num":
                num = expect_num()
                den = 1
                if peek()[0] == "op" and peek()[1] == "/":
                    k += 1
                    den = expect_num()
                    if den == 0:
                        raise ParseError("zero denominator", toks[k - 1][2])
                coeff *= Fraction(num, den)
            elif kind == "name":
                k += 1
                if val not in varset:
                    raise ParseError(f"unknown variable {val!r}", pos)
                e = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    k += 1
                    e = expect_num()
                exps[varset.index(val)] += e
            else:
                raise ParseError(f"expected coefficient or variable, got {val!r}", pos)
            if peek()[0] == "op" and peek()[1] == "*":
                k += 1
            else:
                need_factor = False
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + coeff
        if peek()[0] == "end":
            break
    return Polynomial(varset, terms)


def to_json_obj(p: Polynomial) -> dict:
    return {
        "vars": list(p.varset.names),
        "terms": [{"c": _format_coeff(c), "e": list(m)} for m, c in p.sorted_terms()],
    }


def from_json_obj(obj: Mapping) -> Polynomial:
    vs = VarSet(obj["vars"])
    terms = {}
    for t in obj["terms"]:
        e = tuple(int(x) for x in t["e"])
        if e in terms:
            raise PolyError(f"duplicate monomial {e} in JSON")
        terms[e] = Fraction(t["c"])
    return Polynomial(vs, terms)


def to_json(p: Polynomial) -> str:
    return json.dumps(to_json_obj(p), separators=(",", ":"))


def from_json(text: str) -> Polynomial:
    return from_json_obj(json.loads(text))


def format_as(p: Polynomial, fmt: str = "text") -> str:
    if fmt == "text":
        return format_poly(p)
    if fmt == "json":
        return to_json(p)
    raise PolyError(f"unknown format {fmt!r}")


def parse_as(text: str, fmt: str = "text", varset: Optional[VarSet] = None) -> Polynomial:
    if fmt == "text":
        return parse_poly(text, varset)
    if fmt == "json":
        p = from_json(text)
        return p if varset is None else embed(p, varset)
    raise PolyError(f"unknown format {fmt!r}")
