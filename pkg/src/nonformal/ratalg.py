"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Matrices are dense
and immutable; the elimination kernels work on sparse row dictionaries
internally because the matrices met in practice (differentials of cochain
algebras, incidence systems) are overwhelmingly zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Optional, Sequence

from .errors import ContractViolation

Vector = tuple  # tuple of Fraction

__all__ = [
    "RatMatrix",
    "Subspace",
    "Echelon",
    "as_vector",
    "solve",
    "kernel_basis",
    "coset_reduce",
    "rank",
    "lp_maximize",
]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    return Fraction(x)


def as_vector(values: Iterable) -> Vector:
    return tuple(_q(x) for x in values)


def _sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


def _dense(d: dict, n: int) -> Vector:
    out = [Fraction(0)] * n
    for i, x in d.items():
        out[i] = x
    return tuple(out)


class RatMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        rs = tuple(as_vector(r) for r in rows)
        if ncols is None:
            if not rs:
                raise ContractViolation("ncols is required for a matrix without rows")
            ncols = len(rs[0])
        for r in rs:
            if len(r) != ncols:
                raise ContractViolation("ragged rows")
        self._rows = rs
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "RatMatrix":
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([self.column(j) for j in range(self._ncols)], self.nrows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self._ncols:
            raise ContractViolation(f"vector of length {len(v)} for {self.nrows}x{self._ncols} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), Fraction(0)) for r in self._rows)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if other.nrows != self._ncols:
                raise ContractViolation("shape mismatch")
            cols = [self.apply(other.column(j)) for j in range(other.ncols)]
            return RatMatrix.from_columns(cols, self.nrows)
        return self.apply(other)

    def rank(self) -> int:
        return len(_rref([_sparse(r) for r in self._rows])[1])

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self):
        return hash((self._ncols, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RatMatrix({self.nrows}x{self._ncols}: {body})"


def _rref(rows: list) -> tuple:
    """Reduced row echelon form of sparse rows (dicts), leftmost pivots.

    Returns (reduced rows, pivot columns); row i has pivot pivots[i].
    """
    rows = [dict(r) for r in rows if r]
    pivots: list = []
    out: list = []
    while rows:
        col = min(min(r) for r in rows)
        k = next(i for i, r in enumerate(rows) if col in r)
        prow = rows.pop(k)
        inv = 1 / prow[col]
        prow = {j: x * inv for j, x in prow.items()}
        nxt = []
        for r in rows:
            c = r.get(col)
            if c:
                for j, x in prow.items():
                    y = r.get(j, 0) - c * x
                    if y:
                        r[j] = y
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        rows = nxt
        for r in out:
            c = r.get(col)
            if c:
                for j, x in prow.items():
                    y = r.get(j, 0) - c * x
                    if y:
                        r[j] = y
                    else:
                        r.pop(j, None)
        out.append(prow)
        pivots.append(col)
    order = sorted(range(len(out)), key=pivots.__getitem__)
    return [out[i] for i in order], [pivots[i] for i in order]


def rank(A: RatMatrix) -> int:
    return A.rank()


def solve(A: RatMatrix, b: Sequence) -> Optional[Vector]:
    """Some x with A x = b, or None when the system is inconsistent."""
    if len(b) != A.nrows:
        raise ContractViolation(f"right-hand side has length {len(b)}, matrix has {A.nrows} rows")
    n = A.ncols
    aug = []
    for r, bi in zip(A.rows, b):
        d = _sparse(r)
        bi = _q(bi)
        if bi:
            d[n] = bi
        aug.append(d)
    red, piv = _rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, p in zip(red, piv):
        x[p] = r.get(n, Fraction(0))
    return tuple(x)


class Subspace:
    """Subspace of Q^n given by an independent spanning list."""

    __slots__ = ("ambient_dim", "basis", "_ech")

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence] = ()):
        vecs = tuple(as_vector(v) for v in basis)
        for v in vecs:
            if len(v) != ambient_dim:
                raise ContractViolation("basis vector length differs from ambient dimension")
        ech = Echelon()
        for v in vecs:
            if not ech.add(_sparse(v)):
                raise ContractViolation("basis vectors are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = vecs
        self._ech = ech

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        ech = Echelon()
        keep = []
        for v in vectors:
            v = as_vector(v)
            if len(v) != ambient_dim:
                raise ContractViolation("vector length differs from ambient dimension")
            if ech.add(_sparse(v)):
                keep.append(v)
        return cls(ambient_dim, keep)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return coset_reduce(v, self)[1]

    def same_as(self, other: "Subspace") -> bool:
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and all(v in self for v in other.basis)
        )

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def kernel_basis(A: RatMatrix) -> Subspace:
    red, piv = _rref([_sparse(r) for r in A.rows])
    n = A.ncols
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for r, p in zip(red, piv):
            c = r.get(f)
            if c:
                v[p] = -c
        basis.append(_dense(v, n))
    return Subspace(n, basis)


def coset_reduce(v: Sequence, S: Subspace) -> tuple:
    """Canonical representative of v + S and whether v lies in S.

    The representative is the unique element of the coset vanishing on the
    leading columns of the echelon form of S.
    """
    if len(v) != S.ambient_dim:
        raise ContractViolation(f"vector of length {len(v)} against subspace of R^{S.ambient_dim}")
    res, _ = S._ech.reduce(_sparse(as_vector(v)))
    return _dense(res, S.ambient_dim), not res


class Echelon:
    """Incrementally built echelon basis over sparse rows.

    Rows keep their leading column as pivot (normalised to 1) and remember
    how they were formed from the labelled inputs, so :meth:`reduce` also
    returns the coefficients of a vector on the accepted inputs.
    """

    def __init__(self):
        self._rows: list = []  # (pivot, row dict, combo dict) sorted by pivot
        self._pivots: list = []

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> tuple:
        return tuple(self._pivots)

    def reduce(self, v: dict) -> tuple:
        """(residue, combo) with v = residue + sum(combo[l] * input[l])."""
        v = dict(v)
        combo: dict = {}
        for p, row, rc in self._rows:
            c = v.get(p)
            if not c:
                continue
            for j, x in row.items():
                y = v.get(j, 0) - c * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
            for l, x in rc.items():
                y = combo.get(l, 0) + c * x
                if y:
                    combo[l] = y
                else:
                    combo.pop(l, None)
        return v, combo

    def add(self, v: dict, label: Hashable = None) -> bool:
        """Insert v; False (and no change) when v is already in the span."""
        res, combo = self.reduce(v)
        if not res:
            return False
        p = min(res)
        inv = 1 / Fraction(res[p])
        row = {j: x * inv for j, x in res.items()}
        rc = {l: -x * inv for l, x in combo.items()}
        if label is not None:
            rc[label] = rc.get(label, 0) + inv
        k = 0
        while k < len(self._pivots) and self._pivots[k] < p:
            k += 1
        self._rows.insert(k, (p, row, rc))
        self._pivots.insert(k, p)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]


def lp_maximize(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> Optional[tuple]:
    """Maximise c.x subject to A_eq x = b_eq, x >= 0, exactly.

    Two-phase simplex with Bland's rule.  Returns None when infeasible,
    otherwise (optimal value, x); the value is None for an unbounded problem.
    """
    m = len(A_eq)
    n = len(c)
    A = [[_q(x) for x in row] for row in A_eq]
    b = [_q(x) for x in b_eq]
    for i in range(m):
        if len(A[i]) != n:
            raise ContractViolation("constraint row length differs from objective length")
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau columns: n originals, m artificials, rhs
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    def pivot(r, s):
        inv = 1 / T[r][s]
        T[r] = [x * inv for x in T[r]]
        for i in range(m):
            if i != r and T[i][s]:
                f = T[i][s]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        basis[r] = s

    def run(obj, allowed):
        # obj: coefficients to maximise over all tableau columns
        while True:
            red = [obj[j] - sum(obj[basis[i]] * T[i][j] for i in range(m)) for j in range(n + m)]
            enter = next((j for j in range(n + m) if allowed[j] and red[j] > 0), None)
            if enter is None:
                return True
            best = None
            for i in range(m):
                if T[i][enter] > 0:
                    ratio = T[i][-1] / T[i][enter]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return False
            pivot(best[1], enter)

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    run(phase1, [True] * (n + m))
    if any(T[i][-1] for i in range(m) if basis[i] >= n):
        return None
    # drive remaining zero-level artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            s = next((j for j in range(n) if T[i][j]), None)
            if s is not None:
                pivot(i, s)
    obj = [_q(x) for x in c] + [Fraction(0)] * m
    bounded = run(obj, [True] * n + [False] * m)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    if not bounded:
        return None, tuple(x)
    return sum((ci * xi for ci, xi in zip(obj, x)), Fraction(0)), tuple(x)
