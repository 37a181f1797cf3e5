"""Exact linear algebra over the rationals for graded pieces.

Matrices are presented densely (:class:`ExactMatrix`) but eliminated on
sparse row dictionaries, since the matrices of derivations between graded
pieces have very few nonzeros per row.  Every routine is deterministic:
pivots are chosen left to right and rows are ordered by pivot column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact_poly import (
    Bigrading,
    Monomial,
    PolyError,
    Polynomial,
    VarSet,
    _clean,
    glex_key,
)

SparseRow = Dict[int, Fraction]


class ExactMatrix:
    """Rectangular matrix of exact rationals."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = [[Fraction(x) for x in r] for r in rows]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, rows: Sequence[Dict[int, object]], ncols: int) -> "ExactMatrix":
        dense = []
        for r in rows:
            line = [0] * ncols
            for j, v in r.items():
                line[j] = v
            dense.append(line)
        return cls(dense, ncols)

    def sparse_rows(self) -> List[SparseRow]:
        return [{j: v for j, v in enumerate(r) if v} for r in self._rows]

    def row(self, i: int) -> List[Fraction]:
        return list(self._rows[i])

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.ncols == other.ncols and self._rows == other._rows

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"

    def mul_vec(self, v: Sequence) -> List[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._rows]


def _rref_sparse(rows: Iterable[Dict[int, object]]) -> Tuple[List[SparseRow], List[int]]:
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns)."""
    work = []
    for r in rows:
        rr = {j: Fraction(v) for j, v in r.items() if v}
        if rr:
            work.append(rr)
    done: List[SparseRow] = []
    pivots: List[int] = []
    # eliminate column by column, choosing the row with the smallest pivot column
    while work:
        # pick the row whose minimal column is smallest; ties broken by fewest terms, then position
        best = None
        best_key = None
        for idx, r in enumerate(work):
            key = (min(r), len(r), idx)
            if best_key is None or key < best_key:
                best, best_key = idx, key
        prow = work.pop(best)
        pc = best_key[0]
        inv = 1 / prow[pc]
        if inv != 1:
            prow = {j: v * inv for j, v in prow.items()}
        rest = []
        for r in work:
            f = r.get(pc)
            if f:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                rest.append(r)
        work = rest
        for r in done:
            f = r.get(pc)
            if f:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        done.append(prow)
        pivots.append(pc)
    order = sorted(range(len(done)), key=lambda i: pivots[i])
    return [done[i] for i in order], [pivots[i] for i in order]


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, List[int], int]:
    rows, pivots = _rref_sparse(m.sparse_rows())
    out = ExactMatrix.from_sparse(rows + [{}] * (m.nrows - len(rows)), m.ncols)
    return out, pivots, len(pivots)


def rank(m: ExactMatrix) -> int:
    return len(_rref_sparse(m.sparse_rows())[1])


def _solve_sparse(rows: List[SparseRow], ncols: int, b: Sequence) -> Optional[List[Fraction]]:
    aug = []
    for r, bi in zip(rows, b):
        rr = dict(r)
        if bi:
            rr[ncols] = Fraction(bi)
        aug.append(rr)
    red, pivots = _rref_sparse(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r.get(ncols, Fraction(0))
    return x


def solve_particular(m: ExactMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """Canonical solution of ``m x = b`` (free columns zero) or ``None``."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side has the wrong length")
    return _solve_sparse(m.sparse_rows(), m.ncols, b)


def _kernel_sparse(rows: List[SparseRow], ncols: int) -> List[List[Fraction]]:
    red, pivots = _rref_sparse(rows)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(red, pivots):
            c = r.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def kernel_basis(m: ExactMatrix) -> List[List[Fraction]]:
    """Null-space basis: one vector per free column, with a 1 in that column."""
    return _kernel_sparse(m.sparse_rows(), m.ncols)


# -- graded vector spaces ---------------------------------------------------


class VectorSpaceBasis:
    """Subspace of a graded piece, stored as a reduced echelon basis.

    Rows are reduced with columns in descending canonical order, so each
    basis vector has leading coefficient 1 on a monomial absent from all the
    others.  Two spans are equal exactly when their stored vectors are.
    """

    __slots__ = ("varset", "grading", "degree", "monomials", "vectors")

    def __init__(
        self,
        varset: VarSet,
        vectors: Sequence[Polynomial] = (),
        grading: Optional[Bigrading] = None,
        degree=None,
        monomials: Optional[Sequence[Monomial]] = None,
    ):
        self.varset = varset
        self.grading = grading
        self.degree = None if degree is None else tuple(degree)
        self.monomials = None if monomials is None else list(monomials)
        self.vectors = _echelon_polys(varset, vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def ambient_dim(self) -> Optional[int]:
        return None if self.monomials is None else len(self.monomials)

    def contains(self, p: Polynomial) -> bool:
        if p.varset != self.varset:
            raise PolyError("varset mismatch")
        if p.is_zero():
            return True
        return len(_echelon_polys(self.varset, list(self.vectors) + [p])) == self.dim

    __contains__ = contains

    def is_subspace_of(self, other: "VectorSpaceBasis") -> bool:
        joined = _echelon_polys(self.varset, list(other.vectors) + list(self.vectors))
        return len(joined) == other.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorSpaceBasis):
            return NotImplemented
        return self.varset == other.varset and self.vectors == other.vectors

    def __repr__(self) -> str:
        return f"VectorSpaceBasis(dim={self.dim}, degree={self.degree})"

    def coordinates(self, p: Polynomial) -> Optional[List[Fraction]]:
        """Coordinates of ``p`` in the stored basis, or ``None`` if outside the span."""
        return coordinates_in(self.vectors, p)

    def sum(self, other: "VectorSpaceBasis") -> "VectorSpaceBasis":
        return VectorSpaceBasis(self.varset, list(self.vectors) + list(other.vectors), self.grading, self.degree, self.monomials)


def _column_index(polys: Sequence[Polynomial], descending: bool = True) -> List[Monomial]:
    monos = set()
    for p in polys:
        monos.update(m for m, _ in p.items())
    return sorted(monos, key=glex_key, reverse=descending)


def _echelon_polys(varset: VarSet, polys: Sequence[Polynomial]) -> List[Polynomial]:
    polys = [p for p in polys if not p.is_zero()]
    for p in polys:
        if p.varset != varset:
            raise PolyError("varset mismatch in span")
    if not polys:
        return []
    cols = _column_index(polys)
    idx = {m: i for i, m in enumerate(cols)}
    rows = [{idx[m]: c for m, c in p.items()} for p in polys]
    red, _ = _rref_sparse(rows)
    return [Polynomial._raw(varset, {cols[j]: _clean(v) for j, v in r.items()}) for r in red]


def coordinates_in(vectors: Sequence[Polynomial], p: Polynomial) -> Optional[List[Fraction]]:
    """Solve ``p = sum c_i vectors[i]`` exactly; canonical solution if dependent."""
    if not vectors:
        return [] if p.is_zero() else None
    cols = _column_index(list(vectors) + [p], descending=False)
    idx = {m: i for i, m in enumerate(cols)}
    # rows are monomials, columns are the given vectors
    rows: List[Dict[int, object]] = [dict() for _ in cols]
    for j, v in enumerate(vectors):
        for m, c in v.items():
            rows[idx[m]][j] = c
    b = [0] * len(cols)
    for m, c in p.items():
        b[idx[m]] = c
    return _solve_sparse([{j: Fraction(c) for j, c in r.items()} for r in rows], len(vectors), b)


def span_rank(polys: Sequence[Polynomial]) -> int:
    if not polys:
        return 0
    return len(_echelon_polys(polys[0].varset, polys))
