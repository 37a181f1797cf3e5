"""Roberts' seven-dimensional example.

On k[X, Y, Z, S, T, U, V] the derivation D_m sends S -> X^(m+1),
T -> Y^(m+1), U -> Z^(m+1), V -> (XYZ)^m.  It commutes with the cyclic
permutation alpha: (X, Y, Z, S, T, U, V) -> (Z, X, Y, U, S, T, V) and with the
partial derivative in V.  For m = 2 the kernel carries a cable of d/dV
rooted at X, built here term by term.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, List, Tuple

from .cables import CablePrefix
from .derivations import Derivation, preimage_graded, wronskian
from .exact_poly import (
    Bigrading,
    PolyError,
    Polynomial,
    VarSet,
    divide_exact,
    substitute,
)

VARS = ("X", "Y", "Z", "S", "T", "U", "V")
ALPHA = {"X": "Z", "Y": "X", "Z": "Y", "S": "U", "T": "S", "U": "T", "V": "V"}
E_VARS = ("x", "y", "s", "t", "u", "v")


class RobertsError(PolyError):
    pass


class RobertsContext:
    def __init__(self, m: int = 2):
        if m < 2:
            raise RobertsError("m must be at least 2")
        self.m = m
        vs = VarSet(VARS)
        self.varset = vs
        X, Y, Z, S, T, U, V = vs.gens()
        self.X, self.Y, self.Z, self.S, self.T, self.U, self.V = X, Y, Z, S, T, U, V
        self.D = Derivation(vs, {"S": X ** (m + 1), "T": Y ** (m + 1), "U": Z ** (m + 1), "V": (X * Y * Z) ** m})
        self.partial_V = Derivation.partial(vs, "V")
        self.H = Y ** (m + 1) * S - X ** (m + 1) * T
        # weight grading with D of degree 0
        self.weights = Bigrading(vs, {"X": (1,), "Y": (1,), "Z": (1,), "S": (m + 1,), "T": (m + 1,),
                                      "U": (m + 1,), "V": (3 * m,)})
        # finer Z^3 grading, also preserved by D; used for the correction solves
        self.fine = Bigrading(vs, {"X": (1, 0, 0), "Y": (0, 1, 0), "Z": (0, 0, 1),
                                   "S": (m + 1, 0, 0), "T": (0, m + 1, 0), "U": (0, 0, m + 1),
                                   "V": (m, m, m)})
        self._lock = threading.Lock()
        self._p: List[Polynomial] = [X]
        self._f = None

    def alpha(self, p: Polynomial, times: int = 1) -> Polynomial:
        for _ in range(times % 3):
            p = substitute(p, {k: self.varset.var(v) for k, v in ALPHA.items()}, self.varset)
        return p

    def orbit_H(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return self.H, self.alpha(self.H), self.alpha(self.H, 2)

    def alpha_commutes_with(self, E: Derivation) -> bool:
        return all(self.alpha(E.apply(g)) == E.apply(self.alpha(g)) for g in self.varset.gens())

    # -- the Wronskian subring --------------------------------------------------

    def _require_two(self):
        if self.m != 2:
            raise RobertsError("this construction is only available for m = 2")

    def f_generators(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        """F1 = S, F2 = W(S, TU) / 2, F3 = W(S, TU, STU) / (12 X^3).

        The factor 1/12 is the one for which D(F3) = (YZ)^3 F2; with 1/6 the
        right-hand side doubles (see :meth:`f3_scale_check`).
        """
        self._require_two()
        if self._f is None:
            S, T, U, X, Y, Z = self.S, self.T, self.U, self.X, self.Y, self.Z
            F1 = S
            F2 = wronskian(self.D, [S, T * U]).scale(Fraction(1, 2))
            F3 = self.w3_over_x3().scale(Fraction(1, 12))
            yz3 = (Y * Z) ** 3
            if self.D.apply(F1) != X ** 3:
                raise RobertsError("D(F1) != X^3")
            if self.D.apply(F2) != yz3 * F1:
                raise RobertsError("D(F2) != (YZ)^3 F1")
            if self.D.apply(F3) != yz3 * F2:
                raise RobertsError("D(F3) != (YZ)^3 F2")
            self._f = (F1, F2, F3)
        return self._f

    def w3_over_x3(self) -> Polynomial:
        S, T, U = self.S, self.T, self.U
        return divide_exact(wronskian(self.D, [S, T * U, S * T * U]), self.X ** 3)

    def f3_scale_check(self) -> Fraction:
        """The constant c with D(W(S,TU,STU)/X^3) = c (YZ)^3 F2."""
        F2 = self.f_generators()[1]
        rhs = (self.Y * self.Z) ** 3 * F2
        lhs = self.D.apply(self.w3_over_x3())
        m, c = rhs.leading_term()
        k = Fraction(lhs.coefficient(m)) / Fraction(c)
        if lhs != rhs.scale(k):
            raise RobertsError("D(W/X^3) is not proportional to (YZ)^3 F2")
        return k

    def e_varset(self) -> VarSet:
        return VarSet(E_VARS)

    def restricted_E(self) -> Derivation:
        """v -> x^2 y^2, u -> y^3 t, t -> y^3 s, s -> x^3."""
        ev = self.e_varset()
        x, y, s, t, u, v = ev.gens()
        return Derivation(ev, {"v": x ** 2 * y ** 2, "u": y ** 3 * t, "t": y ** 3 * s, "s": x ** 3})

    def e_embedding(self) -> Dict[str, Polynomial]:
        F1, F2, F3 = self.f_generators()
        return {"x": self.X, "y": self.Y * self.Z, "s": F1, "t": F2, "u": F3, "v": self.V}

    def embed_e(self, p: Polynomial) -> Polynomial:
        return substitute(p, self.e_embedding(), self.varset)

    def e_intertwining(self) -> Dict[str, bool]:
        """For each generator g of the six-variable ring: D(iota(g)) == iota(E(g))."""
        E = self.restricted_E()
        out = {}
        for name in E.varset.names:
            g = E.varset.var(name)
            out[name] = self.D.apply(self.embed_e(g)) == self.embed_e(E.apply(g))
        return out

    # -- the cable rooted at X ----------------------------------------------------

    def p_element(self, i: int) -> Polynomial:
        self._require_two()
        if i < 0:
            raise RobertsError("index must be non-negative")
        with self._lock:
            while len(self._p) <= i:
                self._p.append(self._next_p(len(self._p)))
            return self._p[i]

    def _next_p(self, i: int) -> Polynomial:
        prev = self._p[-1]
        q = self._integrate_V(prev)
        target = -self.D.apply(q)
        deg = self.fine.bigrade(q)
        # D preserves the fine grading, so the correction lives in the same degree
        c = preimage_graded(self.D, target, self.fine, deg, restrict=[n for n in VARS if n != "V"])
        if c is None:
            raise RobertsError(f"no V-free correction for P_{i}")
        return q + c

    def _integrate_V(self, p: Polynomial) -> Polynomial:
        k = self.varset.index("V")
        out = {}
        for mono, c in p.items():
            e = mono[k]
            out[mono[:k] + (e + 1,) + mono[k + 1:]] = Fraction(c) / (e + 1)
        return Polynomial(self.varset, out)

    def p_cable(self, n: int) -> CablePrefix:
        """(P_0, ..., P_n) as a validated cable of d/dV inside ker D."""
        els = [self.p_element(i) for i in range(n + 1)]
        return CablePrefix(self.partial_V, els, kernel_of=self.D, extender=self.p_element)

    def alpha_transport(self, c: CablePrefix, times: int = 1) -> CablePrefix:
        return CablePrefix(c.derivation, [self.alpha(p, times) for p in c.elements], kernel_of=c.kernel_of)

    def leading_V_term(self, p: Polynomial) -> Polynomial:
        """The part of ``p`` of top degree in V."""
        k = self.varset.index("V")
        top = p.degree_in("V")
        return Polynomial(self.varset, {mono: c for mono, c in p.items() if mono[k] == top})


def make(m: int = 2) -> RobertsContext:
    ctx = RobertsContext(m)
    if any(ctx.alpha(g, 3) != g for g in ctx.varset.gens()):
        raise RobertsError("alpha^3 is not the identity")
    if not ctx.alpha_commutes_with(ctx.D):
        raise RobertsError("alpha does not commute with D")
    if not ctx.D.apply(ctx.H).is_zero():
        raise RobertsError("D(H) != 0")
    if tuple(ctx.D.degree_shift(ctx.weights)) != (0,):
        raise RobertsError("D is not of weight degree 0")
    return ctx
