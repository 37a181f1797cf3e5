"""The ring Omega = k[x_0, x_1, ...] with its down operator.

The ring is truncated at ``x_N`` (``N = max_index``); asking for a variable
past the bound raises :class:`OmegaBoundError` instead of silently dropping
terms.  ``deg x_i = (1, i)`` and, when present, ``deg t = (0, 6)``.

Quadratic Delta-cables rooted at the forms ``theta_n^(0)`` come in three
flavours here: the balanced basis ``beta``, the small basis ``eta`` and
arbitrary user-supplied cables.  The reduction procedure corrects the
balanced basis so that the ``x_1 x_{n+j-1}`` coefficient vanishes whenever
``n + j = 1 (mod 6)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .cables import CablePrefix, omega_index, shifted_sum
from .derivations import Derivation
from .exact_poly import (
    Bigrading,
    PolyError,
    Polynomial,
    VarSet,
    embed,
    monomial_basis,
    substitute,
)
from .linalg_graded import VectorSpaceBasis, _solve_sparse, coordinates_in

DEFAULT_MAX_INDEX = 64


class OmegaBoundError(PolyError):
    pass


class OmegaError(PolyError):
    pass


@dataclass(frozen=True)
class DeltaBasisId:
    """Which Delta-basis to use: ``balanced``, ``small`` or ``custom``.

    A custom basis maps each even ``n`` to a cable prefix rooted at
    ``theta_n^(0)``; even ``n`` without an entry fall back to the balanced one.
    """

    kind: str = "balanced"
    cables: Mapping[int, CablePrefix] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("balanced", "small", "custom"):
            raise OmegaError(f"unknown basis kind {self.kind!r}")


BALANCED = DeltaBasisId("balanced")
SMALL = DeltaBasisId("small")


def _require_even(n: int):
    if n < 0 or n % 2:
        raise OmegaError(f"n must be a non-negative even integer, got {n}")


class OmegaContext:
    def __init__(self, max_index: int = DEFAULT_MAX_INDEX, with_t: bool = False):
        if max_index < 0:
            raise OmegaError("max_index must be non-negative")
        self.max_index = max_index
        self.with_t = with_t
        names = [f"x{i}" for i in range(max_index + 1)] + (["t"] if with_t else [])
        self.varset = VarSet(names)
        degs = {f"x{i}": (1, i) for i in range(max_index + 1)}
        if with_t:
            degs["t"] = (0, 6)
        self.grading = Bigrading(self.varset, degs)
        imgs = {f"x{i}": self.varset.var(f"x{i-1}") for i in range(1, max_index + 1)}
        self.delta = Derivation(self.varset, imgs)
        self._lock = threading.Lock()
        self._eta: Dict[Tuple[int, int], Polynomial] = {}

    def __repr__(self) -> str:
        return f"OmegaContext(max_index={self.max_index}, with_t={self.with_t})"

    # -- variables -----------------------------------------------------------

    def x(self, i: int) -> Polynomial:
        if i < 0:
            raise OmegaError(f"negative index {i}")
        if i > self.max_index:
            raise OmegaBoundError(f"x{i} is past the truncation bound x{self.max_index}")
        return self.varset.var(f"x{i}")

    def t(self) -> Polynomial:
        if not self.with_t:
            raise OmegaError("this context has no variable t")
        return self.varset.var("t")

    def xx(self, i: int, j: int, c=1) -> Polynomial:
        """c * x_i * x_j as a single term."""
        if max(i, j) > self.max_index:
            raise OmegaBoundError(f"x{max(i, j)} is past the truncation bound x{self.max_index}")
        e = [0] * len(self.varset)
        e[i] += 1
        e[j] += 1
        return Polynomial(self.varset, {tuple(e): c})

    def lift(self, p: Polynomial) -> Polynomial:
        """Re-express a polynomial over a sub-varset of this context."""
        return embed(p, self.varset)

    # -- the down operator ---------------------------------------------------

    def down(self, p: Polynomial) -> Polynomial:
        if p.varset != self.varset:
            p = self.lift(p)
        return self.delta.apply(p)

    down_t = down

    def down_power(self, p: Polynomial, k: int) -> Polynomial:
        return self.delta.power(self.lift(p), k)

    # -- quadratic forms -----------------------------------------------------

    def _quad(self, coeffs: Mapping[int, object], s: int) -> Polynomial:
        # sum c_i x_i x_{s-i}, folding i and s-i together
        acc: Dict[int, Fraction] = {}
        for i, c in coeffs.items():
            k = min(i, s - i)
            acc[k] = acc.get(k, 0) + c
        out = self.varset.zero()
        for i, c in acc.items():
            if c:
                out = out + self.xx(i, s - i, c)
        return out

    def theta0(self, n: int) -> Polynomial:
        _require_even(n)
        return self._quad({i: (-1) ** i for i in range(n + 1)}, n)

    def theta1(self, n: int) -> Polynomial:
        _require_even(n)
        return self._quad({i: (-1) ** (i + 1) * i for i in range(1, n + 2)}, n + 1)

    def beta(self, n: int, j: int) -> Polynomial:
        _require_even(n)
        if j < 0:
            raise OmegaError("j must be non-negative")
        return self._quad({i: (-1) ** (j + i) * comb(i, j) for i in range(j, n + j + 1)}, n + j)

    def eta(self, n: int, j: int) -> Polynomial:
        _require_even(n)
        if j < 0:
            raise OmegaError("j must be non-negative")
        with self._lock:
            return self._eta_locked(n, j)

    def _eta_locked(self, n: int, j: int) -> Polynomial:
        key = (n, j)
        if key in self._eta:
            return self._eta[key]
        if j == 0:
            val = self.theta0(n)
        else:
            prev = self._eta_locked(n, j - 1)
            s = n + j
            cols = [self.xx(i, s - i) for i in range(n // 2 + 1)]
            imgs = [self.down(c) for c in cols]
            rows_idx: Dict[tuple, int] = {}
            for im in imgs:
                for m, _ in im.items():
                    rows_idx.setdefault(m, len(rows_idx))
            for m, _ in prev.items():
                rows_idx.setdefault(m, len(rows_idx))
            rows = [dict() for _ in rows_idx]
            for k, im in enumerate(imgs):
                for m, c in im.items():
                    rows[rows_idx[m]][k] = Fraction(c)
            b = [0] * len(rows)
            for m, c in prev.items():
                b[rows_idx[m]] = c
            sol = _solve_sparse(rows, len(cols), b)
            if sol is None:
                raise OmegaError(f"no small-basis vertex at n={n}, j={j}")
            val = self.varset.zero()
            for c, v in zip(sol, cols):
                if c:
                    val = val + v.scale(c)
        self._eta[key] = val
        return val

    def vertex(self, basis: DeltaBasisId, n: int, j: int) -> Polynomial:
        """theta_n^(j) in the chosen Delta-basis."""
        if basis.kind == "small":
            return self.eta(n, j)
        if basis.kind == "custom" and n in basis.cables:
            c = basis.cables[n]
            if j >= len(c):
                raise OmegaError(f"custom cable for n={n} has only {len(c)} terms")
            return self.lift(c[j])
        return self.beta(n, j)

    def cable(self, basis: DeltaBasisId, n: int, length: int) -> CablePrefix:
        return CablePrefix(self.delta, [self.vertex(basis, n, j) for j in range(length)])

    def beta_cable(self, n: int, length: int) -> CablePrefix:
        return self.cable(BALANCED, n, length)

    def eta_cable(self, n: int, length: int) -> CablePrefix:
        return self.cable(SMALL, n, length)

    # -- graded pieces ---------------------------------------------------------

    def monomials(self, d) -> List[tuple]:
        r, s = d
        if r >= 1 and s > self.max_index:
            raise OmegaBoundError(f"degree {tuple(d)} needs x{s}, past the bound x{self.max_index}")
        return monomial_basis(self.varset, self.grading, d)

    def dim(self, d) -> int:
        return len(self.monomials(d))

    def delta_basis_coords(self, p: Polynomial, basis: DeltaBasisId = BALANCED) -> Dict[Tuple[int, int], Fraction]:
        """Coordinates of a quadratic form of degree (2, j) over {theta_{2i}^{(j-2i)}}."""
        p = self.lift(p)
        if p.is_zero():
            return {}
        d = self.grading.bigrade(p)
        if d is None or d[0] != 2:
            raise OmegaError("input is not a homogeneous quadratic form")
        j = d[1]
        labels = [(2 * i, j - 2 * i) for i in range(j // 2 + 1)]
        vecs = [self.vertex(basis, n, k) for n, k in labels]
        sol = coordinates_in(vecs, p)
        if sol is None:
            raise OmegaError("quadratic form outside the span of the basis")
        return {lab: c for lab, c in zip(labels, sol) if c}

    def q_ideal_generators(self, n: int, d, basis: DeltaBasisId = BALANCED) -> List[Polynomial]:
        _require_even(n)
        r, s = d
        gens: List[Polynomial] = []
        if r < 2 or s < n:
            return gens
        for m in range(n, s + 1, 2):
            for j in range(0, s - m + 1):
                v = self.vertex(basis, m, j)
                for mono in monomial_basis(self.varset, self.grading, (r - 2, s - m - j)):
                    gens.append(v * Polynomial._raw(self.varset, {mono: 1}))
        return gens

    def q_ideal_slice(self, n: int, d, basis: DeltaBasisId = BALANCED) -> VectorSpaceBasis:
        gens = self.q_ideal_generators(n, d, basis)
        return VectorSpaceBasis(self.varset, gens, self.grading, d, self.monomials(d))

    def quotient_dim(self, n: int, d, basis: DeltaBasisId = BALANCED) -> int:
        return self.dim(d) - self.q_ideal_slice(n, d, basis).dim

    # -- xi, mu and the reduction ------------------------------------------------

    def xi_coeff(self, p: Polynomial) -> Fraction:
        """Coefficient of x_1 x_{m-1} in a quadratic form of degree (2, m)."""
        p = self.lift(p)
        if p.is_zero():
            return Fraction(0)
        d = self.grading.bigrade(p)
        if d is None or d[0] != 2:
            raise OmegaError("xi is defined on homogeneous quadratic forms")
        m = d[1]
        if m < 2:
            return Fraction(0)
        return Fraction(p.coefficient(self.xx(1, m - 1).monomials()[0]))

    @staticmethod
    def j_set(n: int, upto: int) -> List[int]:
        """J_n = {j >= 3 : n + j = 1 (mod 6)} intersected with [0, upto)."""
        return [j for j in range(3, upto) if (n + j) % 6 == 1]

    def cable_index(self, c: CablePrefix) -> int:
        d = self.grading.bigrade(self.lift(c.root))
        if d is None or d[0] != 2:
            raise OmegaError("cable root is not a quadratic form")
        return d[1]

    def mu(self, c: CablePrefix, bound: int) -> Optional[int]:
        """min{j in J_n, j < bound : xi(theta_n^(j)) != 0}; ``None`` means none below the bound."""
        n = self.cable_index(c)
        if len(c) < bound:
            raise OmegaError(f"cable has {len(c)} terms, need {bound}")
        for j in self.j_set(n, bound):
            if self.xi_coeff(c[j]):
                return j
        return None

    def reduce_basis(self, n: int, out_len: int, basis: DeltaBasisId = BALANCED) -> CablePrefix:
        """First ``out_len`` terms of the reduction of the chosen basis cable at ``n``.

        Each step adds ``c * theta_{n+m}`` shifted by ``m = j - 1`` with
        ``c = xi(theta_n^(j)) / (n + j - 2)`` at the current smallest bad
        index ``j``.  Only indices ``j <= out_len`` can influence the prefix.
        """
        return self.reduction(n, out_len, basis)[0]

    def reduction(self, n: int, out_len: int, basis: DeltaBasisId = BALANCED):
        """(reduced prefix, [(shift, coefficient), ...])."""
        _require_even(n)
        if out_len < 1:
            raise OmegaError("out_len must be positive")
        work_len = out_len + 1
        cur = self.cable(basis, n, work_len)
        corrections: List[Tuple[int, Fraction]] = []
        for j in self.j_set(n, work_len):
            xi = self.xi_coeff(cur[j])
            if not xi:
                continue
            c = xi / (n + j - 2)
            m = j - 1
            other = self.cable(basis, n + m, work_len - m)
            scaled = CablePrefix(self.delta, [v.scale(c) for v in other.elements])
            cur = shifted_sum(cur, scaled, m)
            corrections.append((m, c))
            if self.xi_coeff(cur[j]):
                raise OmegaError(f"reduction step failed to clear xi at j={j}")
        return cur.truncate(out_len), corrections

    def psi2(self, n: int) -> Polynomial:
        if n % 6 != 4:
            raise OmegaError("psi2 is defined for n = 4 (mod 6)")
        k = n * (n + 2)
        return self._quad({i: Fraction((-1) ** i * (3 * i * (i - 1) - k), 6) for i in range(n + 3)}, n + 2)

    def psi3(self, n: int) -> Polynomial:
        if n % 6 != 4:
            raise OmegaError("psi3 is defined for n = 4 (mod 6)")
        k = n * (n + 2)
        return self._quad(
            {i: Fraction((-1) ** (i + 1) * ((i - 1) * (i - 2) - k) * i, 6) for i in range(1, n + 4)}, n + 3
        )

    # -- Omega[t] ------------------------------------------------------------

    def vn_basis(self, n: int) -> List[Polynomial]:
        """<theta_n, t theta_{n-6}, ..., t^e theta_{n-6e}> with n - 6e in {0, 2, 4}; empty for odd n."""
        if n < 0 or n % 2:
            return []
        t = self.t()
        out = []
        e = 0
        while n - 6 * e >= 0:
            out.append(t ** e * self.theta0(n - 6 * e))
            e += 1
        return out

    def theta_big_root_data(self, n: int, phi: Callable[[Polynomial], Polynomial]) -> Tuple[Polynomial, Fraction]:
        """(Theta_n^(0), c_n) with Theta = theta_n - c_n t^e theta_l killed by ``phi``."""
        _require_even(n)
        if n < 4:
            raise OmegaError("big roots are defined for even n >= 4")
        e, ell = divmod(n, 6)
        t = self.t()
        top = self.theta0(n)
        low = t ** e * self.theta0(ell)
        a = phi(top)
        b = phi(low)
        if b.is_zero():
            if not a.is_zero():
                raise OmegaError(f"phi(theta_{n}) is nonzero but phi(t^{e} theta_{ell}) vanishes")
            c = Fraction(0)
        else:
            lm, lc = b.leading_term()
            c = Fraction(a.coefficient(lm)) / Fraction(lc)
            if a != b.scale(c):
                raise OmegaError(f"phi(theta_{n}) is not a scalar multiple of phi(t^{e} theta_{ell})")
        root = top - low.scale(c) if c else top
        if not phi(root).is_zero():
            raise OmegaError("big root is not killed by phi")
        return root, c

    def theta_big_root(self, n: int, phi: Callable[[Polynomial], Polynomial]) -> Polynomial:
        return self.theta_big_root_data(n, phi)[0]

    # -- evaluation on the simple cables ----------------------------------------

    def _phi_simple(self, p: Polynomial, with_x: bool) -> Polynomial:
        p = self.lift(p)
        vs = VarSet(["x", "v"]) if with_x else VarSet(["v"])
        v = vs.var("v")
        xv = vs.var("x") if with_x else vs.one()
        bindings = {}
        used = set(p.variables())
        for name in self.varset.names:
            i = omega_index(name)
            if i is None:
                if name in used:
                    raise OmegaError(f"cannot evaluate {name!r} on a simple cable")
                bindings[name] = vs.zero()
            elif name in used:
                bindings[name] = xv * (v ** i).scale(Fraction(1, factorial(i)))
            else:
                bindings[name] = vs.zero()
        return substitute(p, bindings, vs)

    def phi_S(self, p: Polynomial) -> Polynomial:
        """x_i -> x v^i / i! in k[x, v]."""
        return self._phi_simple(p, True)

    def phi_s_plain(self, p: Polynomial) -> Polynomial:
        """x_i -> v^i / i! in k[v]."""
        return self._phi_simple(p, False)


_DEFAULT_CONTEXTS: Dict[Tuple[int, bool], OmegaContext] = {}
_DEFAULT_LOCK = threading.Lock()


def context(max_index: int = DEFAULT_MAX_INDEX, with_t: bool = False) -> OmegaContext:
    """Shared context per (max_index, with_t)."""
    key = (max_index, with_t)
    with _DEFAULT_LOCK:
        ctx = _DEFAULT_CONTEXTS.get(key)
        if ctx is None:
            ctx = _DEFAULT_CONTEXTS[key] = OmegaContext(max_index, with_t)
        return ctx
