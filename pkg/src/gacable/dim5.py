"""The five-dimensional example B = k[a, x, y, z, v].

D sends z -> y -> x -> a^3, v -> a^2 and a -> 0.  Its kernel A is graded by
deg(a, x, y, z, v) = ((1,0), (3,1), (3,2), (3,3), (2,1)) and the partial
derivative in v restricts to A.  The sigma-cable is the homogeneous cable of
that restriction rooted at ``a``; its first six terms are fixed by the
dimensions of the graded pieces, the rest follow from quadratic relations
that allow solving for ``a * sigma_n``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence

from .cables import CablePrefix, phi_map
from .derivations import Derivation, dixmier, kernel_graded, preimage_graded
from .exact_poly import (
    Bigrading,
    InexactDivision,
    PolyError,
    Polynomial,
    VarSet,
    divide_exact,
    format_poly,
    parse_poly,
    substitute,
    try_divide,
)
from .linalg_graded import VectorSpaceBasis

VARS = ("a", "x", "y", "z", "v")
R_VARS = ("a", "x", "y", "z")
DEGREES = {"a": (1, 0), "x": (3, 1), "y": (3, 2), "z": (3, 3), "v": (2, 1)}

# n! * sigma_n for n <= 5
SIGMA_SCALED = (
    "a",
    "a*v - x",
    "a*v^2 - 2*x*v + 2*a^2*y",
    "a*v^3 - 3*x*v^2 + 6*a^2*y*v - 6*a^4*z",
    "a*v^4 - 4*x*v^3 + 12*a^2*y*v^2 - 24*a^4*z*v + 24*a^3*x*z - 12*a^3*y^2",
    "a*v^5 - 5*x*v^4 + 20*a^2*y*v^3 - 60*a^4*z*v^2 + 120*a^3*x*z*v - 60*a^3*y^2*v"
    " - 72*x^2*a^2*z + 36*x*a^2*y^2 + 24*a^5*y*z",
)


class Dim5Error(PolyError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def residue_case(n: int) -> str:
    r = n % 6
    return {0: "0", 1: "1", 2: "2,4", 4: "2,4", 3: "3,5", 5: "3,5"}[r]


class Dim5Context:
    def __init__(self):
        vs = VarSet(VARS)
        self.varset = vs
        a, x, y, z, v = vs.gens()
        self.a, self.x, self.y, self.z, self.v = a, x, y, z, v
        self.grading = Bigrading(vs, DEGREES)
        self.D = Derivation(vs, {"z": y, "y": x, "x": a ** 3, "v": a ** 2})
        self.partial_v = Derivation.partial(vs, "v")
        self.F = 2 * a ** 3 * y - x ** 2
        self.G = 3 * a ** 6 * z - 3 * a ** 3 * x * y + x ** 3
        self.h = (9 * a ** 6 * z ** 2 - 18 * a ** 3 * x * y * z + 8 * a ** 3 * y ** 3
                  + 6 * x ** 3 * z - 3 * x ** 2 * y ** 2)
        self._lock = threading.RLock()
        self._sigma: List[Polynomial] = [
            parse_poly(s, vs).scale(Fraction(1, factorial(n))) for n, s in enumerate(SIGMA_SCALED)
        ]
        self._dim_cache: Dict[tuple, int] = {}

    # -- sigma ---------------------------------------------------------------

    def sigma(self, n: int) -> Polynomial:
        if n < 0:
            raise Dim5Error("sigma is indexed by n >= 0")
        with self._lock:
            while len(self._sigma) <= n:
                k = len(self._sigma)
                self._sigma.append(self._recurse(k, self._sigma))
            return self._sigma[n]

    def sigmas(self, n: int) -> List[Polynomial]:
        """[sigma_0, ..., sigma_n]."""
        self.sigma(n)
        with self._lock:
            return list(self._sigma[: n + 1])

    def _recurse(self, n: int, s: Sequence[Polynomial]) -> Polynomial:
        num, den = self.recursion_rhs(n, s)
        try:
            return divide_exact(num, self.a).scale(Fraction(1, den))
        except InexactDivision as exc:
            raise Dim5Error(f"sigma_{n}: the recursion does not divide by a") from exc

    def recursion_rhs(self, n: int, s: Optional[Sequence[Polynomial]] = None, case: Optional[str] = None):
        """(N, d) with a * sigma_n = N / d in the residue case of ``n`` (or the given ``case``)."""
        if s is None:
            s = self.sigmas(n - 1)
        case = case or residue_case(n)
        acc = self.varset.zero()
        if case == "2,4":
            for i in range(1, n):
                acc = acc + (s[i] * s[n - i]).scale((-1) ** i)
            return -acc, 2
        if case == "3,5":
            for i in range(1, n):
                acc = acc + (s[i] * s[n - i]).scale((-1) ** (i + 1) * i)
            return -acc, n
        if case == "0":
            for i in range(1, n):
                acc = acc + (s[i] * s[n - i]).scale((-1) ** i * (3 * i * (i - 1) - n * (n - 2)))
            return -acc, n * (n + 1)
        if case == "1":
            for i in range(1, n):
                acc = acc + (s[i] * s[n - i]).scale(
                    (-1) ** (i + 1) * ((i - 1) * (i - 2) - (n - 1) * (n - 3)) * i)
            return -acc, n * (n - 1)
        raise Dim5Error(f"unknown case {case!r}")

    def sigma_from_rhs(self, n: int, case: Optional[str] = None) -> Optional[Polynomial]:
        """sigma_n recomputed from the relation of the given case, or None if a does not divide."""
        num, den = self.recursion_rhs(n, self.sigmas(n - 1), case)
        q = try_divide(num, self.a)
        return None if q is None else q.scale(Fraction(1, den))

    def intro_relation(self, kind: str, n: int) -> Polynomial:
        """The four quadratic sums in sigma used to define the cable implicitly.

        kind 'i':   sum_{i=0}^{n} (-1)^i s_i s_{n-i}
        kind 'ii':  sum_{i=1}^{n} (-1)^i i s_i s_{n-i}
        kind 'iii': sum_{i=0}^{n+2} (-1)^i (3i(i-1) - n(n+2)) s_i s_{n+2-i}
        kind 'iv':  sum_{i=1}^{n+3} (-1)^(i+1) ((i-1)(i-2) - n(n+2)) i s_i s_{n+3-i}
        """
        k = n * (n + 2)
        if kind == "i":
            terms = [((-1) ** i, i, n - i) for i in range(n + 1)]
        elif kind == "ii":
            terms = [((-1) ** i * i, i, n - i) for i in range(1, n + 1)]
        elif kind == "iii":
            terms = [((-1) ** i * (3 * i * (i - 1) - k), i, n + 2 - i) for i in range(n + 3)]
        elif kind == "iv":
            terms = [((-1) ** (i + 1) * ((i - 1) * (i - 2) - k) * i, i, n + 3 - i) for i in range(1, n + 4)]
        else:
            raise Dim5Error(f"unknown relation {kind!r}")
        top = max(max(i, j) for _, i, j in terms)
        s = self.sigmas(top)
        acc = self.varset.zero()
        for c, i, j in terms:
            if c:
                acc = acc + (s[i] * s[j]).scale(c)
        return acc

    def sigma_cable(self, n: int) -> CablePrefix:
        """Validated prefix (sigma_0, ..., sigma_n) of the partial-v cable inside ker D."""
        return CablePrefix(self.partial_v, self.sigmas(n), kernel_of=self.D, extender=self.sigma)

    # -- independent route through the Dixmier map ----------------------------

    def w_sequence(self, k: int) -> List[Polynomial]:
        """w_0..w_k in Q = k[t, x, y, z] by canonical graded preimage solves."""
        qv = VarSet(["t", "x", "y", "z"])
        t, x, y, z = qv.gens()
        d = Derivation(qv, {"z": y, "y": x, "x": t})
        g = Bigrading(qv, {"t": (1, 0), "x": (1, 1), "y": (1, 2), "z": (1, 3)})
        ws = [qv.one()]
        for n in range(1, k + 1):
            m, r = divmod(n - 1, 3)
            if r == 0:
                target, deg = t * ws[-1], (2 * m + 1, 3 * m + 1)
            elif r == 1:
                target, deg = ws[-1], (2 * m + 1, 3 * m + 2)
            else:
                target, deg = t * ws[-1], (2 * m + 2, 3 * m + 3)
            w = preimage_graded(d, target, g, deg)
            if w is None:
                raise Dim5Error(f"no preimage for w_{n} in degree {deg}")
            ws.append(w)
        return ws

    def sigma_via_dixmier(self, n: int) -> Polynomial:
        if n < 0:
            raise Dim5Error("n must be non-negative")
        m = -(-n // 3)
        w = self.w_sequence(3 * m)[3 * m]
        wb = substitute(w, {"t": self.a ** 3, "x": self.x, "y": self.y, "z": self.z}, self.varset)
        s = dixmier(self.D, "v", self.a * wb).to_polynomial()
        if (3 * m) % 2:
            s = -s
        for _ in range(3 * m - n):
            s = self.partial_v.apply(s)
        return s

    # -- graded kernels --------------------------------------------------------

    def kernel(self, r: int, s: int, restrict=None) -> VectorSpaceBasis:
        return kernel_graded(self.D, self.grading, (r, s), restrict)

    def dim_A(self, r: int, s: int) -> int:
        if r < 0 or s < 0:
            return 0
        key = (r, s)
        with self._lock:
            if key in self._dim_cache:
                return self._dim_cache[key]
        d = self.kernel(r, s).dim
        with self._lock:
            self._dim_cache[key] = d
        return d

    def rcap_A_slice(self, n: int, part: str = "a") -> VectorSpaceBasis:
        """R cap A in degree (2n+1, n) (part 'a') or (2n+2, n) (part 'b'), R = k[a, x, y, z]."""
        r = 2 * n + 1 if part == "a" else 2 * n + 2
        return self.kernel(r, n, R_VARS)

    def rcap_prediction(self, n: int, part: str = "a") -> List[Polynomial]:
        e, ell = divmod(n, 6)
        he = self.h ** e
        if part == "a":
            return [self.a * he] if ell == 0 else []
        if ell == 0:
            return [self.a ** 2 * he]
        if ell == 2:
            return [self.F * he]
        return []

    # -- congruence and evaluation ---------------------------------------------

    def check_congruence(self, n: int) -> CheckResult:
        """n! sigma_n + n x v^(n-1) must lie in aB."""
        if n < 1:
            raise Dim5Error("congruence is stated for n >= 1")
        p = self.sigma(n).scale(factorial(n)) + (self.x * self.v ** (n - 1)).scale(n)
        ok = try_divide(p, self.a) is not None
        return CheckResult(f"congruence n={n}", ok, "" if ok else format_poly(p))

    def phi_sigma(self, p: Polynomial) -> Polynomial:
        """x_i -> sigma_i and t -> h."""
        top = -1
        for name in p.variables():
            if name.startswith("x"):
                top = max(top, int(name[1:]))
        c = CablePrefix(self.partial_v, self.sigmas(max(top, 0)), check=False)
        extra = {"t": self.h} if "t" in p.varset else None
        return phi_map(c, p, extra)

    def bigrade(self, p: Polynomial):
        return self.grading.bigrade(p)


_DEFAULT: Optional[Dim5Context] = None
_DEFAULT_LOCK = threading.Lock()


def make(check: bool = True) -> Dim5Context:
    """Build a context and assert its defining identities."""
    ctx = Dim5Context()
    if check:
        D = ctx.D
        for name, p in (("F", ctx.F), ("G", ctx.G), ("h", ctx.h)):
            if not D.apply(p).is_zero():
                raise Dim5Error(f"D({name}) != 0")
        if ctx.a ** 6 * ctx.h != ctx.F ** 3 + ctx.G ** 2:
            raise Dim5Error("a^6 h != F^3 + G^2")
        if tuple(D.degree_shift(ctx.grading)) != (0, -1):
            raise Dim5Error("D is not homogeneous of degree (0, -1)")
        if not D.commutes(ctx.partial_v):
            raise Dim5Error("D does not commute with the partial derivative in v")
    return ctx


def default() -> Dim5Context:
    """Process-wide shared context (its sigma cache is lock-protected)."""
    global _DEFAULT
    with _DEFAULT_LOCK:
        if _DEFAULT is None:
            _DEFAULT = make()
        return _DEFAULT
