"""Finite prefixes of D-cables and the operations that combine them.

A D-cable is a sequence ``(s_0, s_1, ...)`` with ``s_0 != 0``, ``D s_0 = 0``
and ``D s_j = s_{j-1}``.  Only finite prefixes are ever stored.  When the
cable lives inside the kernel of another derivation (for instance the
partial derivative restricted to an invariant ring), that ambient derivation
is recorded as ``kernel_of`` and membership is checked too.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence

from .derivations import Derivation, exp_map
from .exact_poly import (
    PolyError,
    Polynomial,
    VarSet,
    format_poly,
    from_json_obj,
    substitute,
    to_json_obj,
)


class CableError(PolyError):
    pass


@dataclass(frozen=True)
class CableReport:
    ok: bool
    index: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"violation at j={self.index}: {self.reason}"


def check_elements(
    derivation: Derivation,
    elements: Sequence[Polynomial],
    kernel_of: Optional[Derivation] = None,
) -> CableReport:
    """Check the cable laws on a raw sequence and report the first failure."""
    if not elements:
        return CableReport(False, 0, "empty prefix")
    if elements[0].is_zero():
        return CableReport(False, 0, "zero root")
    for j, s in enumerate(elements):
        if s.varset != derivation.varset:
            return CableReport(False, j, "element lives in another varset")
        if kernel_of is not None and not kernel_of.apply(s).is_zero():
            return CableReport(False, j, "element is not in the ambient kernel")
        ds = derivation.apply(s)
        if j == 0:
            if not ds.is_zero():
                return CableReport(False, 0, f"D(s_0) = {format_poly(ds)} != 0")
        elif ds != elements[j - 1]:
            return CableReport(False, j, f"D(s_{j}) = {format_poly(ds)} != s_{j-1}")
    return CableReport(True)


class CablePrefix:
    """A validated prefix ``(s_0, ..., s_N)`` of a D-cable."""

    __slots__ = ("derivation", "elements", "kernel_of", "extender")

    def __init__(
        self,
        derivation: Derivation,
        elements: Sequence[Polynomial],
        kernel_of: Optional[Derivation] = None,
        extender: Optional[Callable[[int], Polynomial]] = None,
        check: bool = True,
    ):
        self.derivation = derivation
        self.elements = tuple(elements)
        self.kernel_of = kernel_of
        self.extender = extender
        if check:
            rep = check_elements(derivation, self.elements, kernel_of)
            if not rep.ok:
                raise CableError(str(rep))

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, j):
        return self.elements[j]

    def __iter__(self):
        return iter(self.elements)

    @property
    def root(self) -> Polynomial:
        return self.elements[0]

    @property
    def varset(self) -> VarSet:
        return self.derivation.varset

    def __eq__(self, other) -> bool:
        return (isinstance(other, CablePrefix) and self.derivation == other.derivation
                and self.elements == other.elements)

    def __repr__(self) -> str:
        return f"CablePrefix(len={len(self)}, root={format_poly(self.root)!r})"

    def truncate(self, n: int) -> "CablePrefix":
        if n < 1:
            raise CableError("a prefix keeps at least its root")
        return self._like(self.elements[:n])

    def extended(self, n: int) -> "CablePrefix":
        """Grow to length ``n`` using the extender callback."""
        if n <= len(self):
            return self.truncate(n)
        if self.extender is None:
            raise CableError(f"prefix has length {len(self)} and no extender")
        els = list(self.elements) + [self.extender(j) for j in range(len(self), n)]
        return CablePrefix(self.derivation, els, self.kernel_of, self.extender)

    def _like(self, elements, check: bool = True) -> "CablePrefix":
        return CablePrefix(self.derivation, elements, self.kernel_of, None, check)

    def to_json_obj(self) -> dict:
        obj = {
            "derivation": _derivation_json(self.derivation),
            "elements": [to_json_obj(p) for p in self.elements],
        }
        if self.kernel_of is not None:
            obj["kernel_of"] = _derivation_json(self.kernel_of)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "CablePrefix":
        d = _derivation_from_json(obj["derivation"])
        k = _derivation_from_json(obj["kernel_of"]) if "kernel_of" in obj else None
        els = [from_json_obj(e) for e in obj["elements"]]
        return cls(d, els, k)

    @classmethod
    def from_json(cls, text: str) -> "CablePrefix":
        return cls.from_json_obj(json.loads(text))


def _derivation_json(D: Derivation) -> dict:
    return {
        "vars": list(D.varset.names),
        "images": {n: to_json_obj(p) for n, p in D.images.items() if not p.is_zero()},
    }


def _derivation_from_json(obj: Mapping) -> Derivation:
    vs = VarSet(obj["vars"])
    imgs = {}
    for n, pj in obj["images"].items():
        p = from_json_obj(pj)
        imgs[n] = p if p.varset == vs else p.embed(vs)
    return Derivation(vs, imgs)


def verify(c: CablePrefix) -> CableReport:
    return check_elements(c.derivation, c.elements, c.kernel_of)


def _same_owner(c1: CablePrefix, c2: CablePrefix):
    if c1.derivation != c2.derivation:
        raise CableError("cables belong to different derivations")


def _in_kernels(c: CablePrefix, f: Polynomial) -> bool:
    if not c.derivation.apply(f).is_zero():
        return False
    return c.kernel_of is None or c.kernel_of.apply(f).is_zero()


def scale(f, c: CablePrefix) -> CablePrefix:
    """(f s_n) for a nonzero kernel element ``f``."""
    if not isinstance(f, Polynomial):
        f = Polynomial.constant(c.varset, f)
    if f.is_zero():
        raise CableError("scaling by zero gives no cable")
    if not _in_kernels(c, f):
        raise CableError(f"{format_poly(f)} is not in the kernel")
    return c._like([f * s for s in c.elements])


def add(c1: CablePrefix, c2: CablePrefix) -> CablePrefix:
    _same_owner(c1, c2)
    n = min(len(c1), len(c2))
    els = [c1[j] + c2[j] for j in range(n)]
    if els[0].is_zero():
        raise CableError("the sum has zero root")
    return c1._like(els)


def shifted_sum(c1: CablePrefix, c2: CablePrefix, m: int) -> CablePrefix:
    """u_n = s_n for n < m and s_n + t_{n-m} for n >= m."""
    _same_owner(c1, c2)
    if m < 1:
        raise CableError("shift must be positive")
    if len(c1) < m:
        raise CableError(f"first cable has length {len(c1)} < shift {m}")
    n = min(len(c1), m + len(c2))
    els = [c1[j] + c2[j - m] if j >= m else c1[j] for j in range(n)]
    return c1._like(els)


def limit_combine(
    cables: Sequence[CablePrefix],
    shifts: Sequence[int],
    coeffs: Sequence,
    out_len: int,
) -> CablePrefix:
    """First ``out_len`` terms of lim(cables, shifts, coeffs).

    ``cables[0]`` is the base; ``shifts`` and ``coeffs`` pair with
    ``cables[1:]``, i.e. u = cables[0] +_{m1} c1 cables[1] +_{m2} c2 cables[2] ...
    Shifts must be strictly increasing.  Terms whose shift is at least
    ``out_len`` cannot affect the prefix and are skipped.
    """
    if not cables:
        raise CableError("no cables given")
    if len(shifts) != len(cables) - 1 or len(coeffs) != len(cables) - 1:
        raise CableError("shifts and coeffs must pair with cables[1:]")
    if any(b <= a for a, b in zip(shifts, shifts[1:])) or any(m < 1 for m in shifts):
        raise CableError("shifts must be strictly increasing positive integers")
    base = cables[0]
    if len(base) < out_len:
        raise CableError(f"base cable has length {len(base)} < {out_len}")
    els = list(base.elements[:out_len])
    for c, m, k in zip(cables[1:], shifts, coeffs):
        _same_owner(base, c)
        if m >= out_len:
            break
        if len(c) < out_len - m:
            raise CableError(f"cable shifted by {m} needs length {out_len - m}, has {len(c)}")
        if not isinstance(k, Polynomial):
            k = Polynomial.constant(base.varset, k)
        if k.is_zero() or not _in_kernels(base, k):
            raise CableError("coefficients must be nonzero kernel elements")
        for j in range(m, out_len):
            els[j] = els[j] + k * c[j - m]
    return base._like(els)


_OMEGA_NAME = re.compile(r"^x(\d+)$")


def omega_index(name: str) -> Optional[int]:
    m = _OMEGA_NAME.match(name)
    return int(m.group(1)) if m else None


def phi_map(c: CablePrefix, P: Polynomial, extra: Optional[Mapping[str, Polynomial]] = None) -> Polynomial:
    """P(s_0, ..., s_M): substitute x_i -> s_i (and any ``extra`` bindings)."""
    bindings: Dict[str, Polynomial] = {}
    extra = dict(extra or {})
    used = set(P.variables())
    for name in P.varset.names:
        if name in extra:
            bindings[name] = extra[name]
            continue
        i = omega_index(name)
        if i is None:
            if name in used:
                raise CableError(f"no binding for variable {name!r}")
            bindings[name] = c.varset.zero()
            continue
        if i >= len(c):
            if name in used:
                raise CableError(f"prefix too short: need s_{i}, have {len(c)} terms")
            bindings[name] = c.varset.zero()
            continue
        bindings[name] = c[i]
    return substitute(P, bindings, c.varset)


def exp_transport(c: CablePrefix, f: Polynomial) -> CablePrefix:
    """(exp(fD) s_n)."""
    if not c.derivation.apply(f).is_zero():
        raise CableError(f"{format_poly(f)} is not in the kernel")
    return c._like([exp_map(c.derivation, f, s) for s in c.elements])
