"""Chevalley-Eilenberg cochains of a free dg Lie model, and their cohomology.

Conventions (fixed for the whole package):

* every normal-form Lie basis element ``b`` of degree ``p`` gives a cochain
  generator ``xi_b`` of degree ``p + 1``; generators are ordered by Lie degree,
  then by basis index;
* cochains form the free graded-commutative algebra on these generators,
  monomials written in non-decreasing generator order;
* on generators ``d = d_lin + d_quad`` with
  ``d_lin xi_k = sum_j D[k, j] xi_j`` (that is, ``xi_k o d``), ``D`` the
  matrix of the Lie differential, and
  ``d_quad xi_k = -1/2 sum_{i,j} (-1)^{|b_i|} c^k_{ij} xi_i xi_j``,
  ``c^k_{ij}`` the bracket structure constants; ``d`` is extended by the
  Leibniz rule.

A cochain is a dict ``{monomial: Fraction}``.  An algebra built with
``cutoff = c`` has cochains in degrees ``0..c`` and differentials out of
degrees ``0..c-1``, so cohomology is available in degrees ``0..c-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ContractViolation, CutoffExceeded
from .gradedlie import DgLieModel, format_word
from .ratalg import Echelon, RatMatrix, kernel_basis

__all__ = ["CochainAlgebra", "CohomologyClass", "Cohomology", "chevalley_eilenberg", "cohomology", "cup"]


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.degree != other.degree or len(self.coords) != len(other.coords):
            raise ContractViolation("adding classes of different degrees")
        return CohomologyClass(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, s) -> "CohomologyClass":
        return CohomologyClass(self.degree, tuple(Fraction(s) * a for a in self.coords))

    def __neg__(self):
        return -1 * self


class Cohomology:
    """Basis of H^n with fixed representative cocycles."""

    def __init__(self, degree: int, dim_cochains: int, representatives: list, echelon: Echelon,
                 n_boundaries: int):
        self.degree = degree
        self.dim_cochains = dim_cochains
        self.representatives = representatives  # list of cochain vectors (sparse dicts by index)
        self._ech = echelon
        self.n_boundaries = n_boundaries

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coords(self, vec: dict) -> Optional[tuple]:
        """Coordinates of a cocycle vector, or None if it is not a cocycle."""
        res, combo = self._ech.reduce(vec)
        if res:
            return None
        return tuple(Fraction(combo.get(("h", i), 0)) for i in range(self.dim))


def _add_into(out: dict, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class CochainAlgebra:
    """Truncated Chevalley-Eilenberg algebra of a dg Lie model."""

    def __init__(self, model: DgLieModel, cutoff: int):
        if cutoff < 2:
            raise ContractViolation("cutoff must be at least 2")
        self.cutoff = cutoff
        model = model.regraded(cutoff - 1)
        if not model.generators:
            raise ContractViolation(f"no generator of the model fits under cochain cutoff {cutoff}")
        self.model = model
        L = model.lie
        self.lie = L
        # cochain generators
        self.gen_lie = []  # (lie degree, basis index)
        for p in range(1, cutoff):
            for i in range(L.dim(p)):
                self.gen_lie.append((p, i))
        self.gen_index = {key: k for k, key in enumerate(self.gen_lie)}
        self.gen_degree = [p + 1 for p, _ in self.gen_lie]
        self._odd = [d % 2 == 1 for d in self.gen_degree]
        self._bases = {n: self._enumerate(n) for n in range(cutoff + 1)}
        self._index = {n: {m: i for i, m in enumerate(b)} for n, b in self._bases.items()}
        self._dgen: dict = {}
        self._dmono: dict = {}
        self._dmat: dict = {}
        self._coh: dict = {}

    # monomials

    def _enumerate(self, n: int) -> list:
        out = []
        ng = len(self.gen_degree)

        def rec(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for k in range(start, ng):
                dk = self.gen_degree[k]
                if dk > remaining:
                    break
                acc.append(k)
                rec(k + 1 if self._odd[k] else k, remaining - dk, acc)
                acc.pop()

        rec(0, n, [])
        out.sort(key=lambda m: (len(m), m))
        return out

    def basis(self, n: int) -> list:
        self._check_degree(n, self.cutoff)
        return list(self._bases[n])

    def dim(self, n: int) -> int:
        self._check_degree(n, self.cutoff)
        return len(self._bases[n])

    def degree_of(self, mono: tuple) -> int:
        return sum(self.gen_degree[k] for k in mono)

    def _check_degree(self, n: int, top: int) -> None:
        if n < 0:
            raise ContractViolation(f"negative degree {n}")
        if n > top:
            raise CutoffExceeded(f"degree {n} needs cutoff > {top} (algebra built with cutoff {self.cutoff})")

    def generator_name(self, k: int) -> str:
        p, i = self.gen_lie[k]
        return "xi" + format_word(self.lie.basis(p)[i])

    def monomial_name(self, mono: tuple) -> str:
        return "*".join(self.generator_name(k) for k in mono) or "1"

    # products

    def mono_mul(self, a: tuple, b: tuple) -> tuple:
        """(sign, monomial) for a*b, sign 0 when the product vanishes."""
        odd = self._odd
        sa = {k for k in a if odd[k]}
        if any(k in sa for k in b if odd[k]):
            return 0, ()
        flips = 0
        for y in b:
            if odd[y]:
                flips += sum(1 for x in sa if x > y)
        return (-1 if flips % 2 else 1), tuple(sorted(a + b))

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                s, m = self.mono_mul(a, b)
                if s:
                    _add_into(out, m, s * ca * cb)
        if out:
            self._check_degree(self.degree_of(next(iter(out))), self.cutoff)
        return out

    # differential

    def _d_generator(self, k: int) -> dict:
        hit = self._dgen.get(k)
        if hit is not None:
            return hit
        p, i = self.gen_lie[k]
        L = self.lie
        out: dict = {}
        # linear part: dual of d_L : L_{p+1} -> L_p
        if p + 1 <= L.cutoff:
            D = self.model.d_matrix(p + 1)
            for j in range(L.dim(p + 1)):
                c = D[i, j] if D.nrows else 0
                if c:
                    _add_into(out, (self.gen_index[(p + 1, j)],), c)
        # quadratic part: dual of the bracket L_a x L_b -> L_p
        for a in range(1, p // 2 + 1):
            b = p - a
            for ia in range(L.dim(a)):
                ka = self.gen_index[(a, ia)]
                for ib in range(L.dim(b)):
                    kb = self.gen_index[(b, ib)]
                    if kb < ka:
                        continue
                    c = L.structure_constants(a, ia, b, ib)[i]
                    if not c:
                        continue
                    coef = Fraction(-c) if a % 2 == 0 else Fraction(c)
                    if ka == kb:
                        coef /= 2
                        if self._odd[ka]:
                            continue
                    _add_into(out, (ka, kb), coef)
        self._dgen[k] = out
        return out

    def _d_mono(self, mono: tuple) -> dict:
        hit = self._dmono.get(mono)
        if hit is not None:
            return hit
        if not mono:
            out: dict = {}
        elif len(mono) == 1:
            out = self._d_generator(mono[0])
        else:
            x, rest = mono[0], mono[1:]
            out = self.mul(self._d_generator(x), {rest: 1})
            drest = self._d_mono(rest)
            if drest:
                sx = -1 if self._odd[x] else 1
                for m, c in self.mul({(x,): 1}, drest).items():
                    _add_into(out, m, sx * c)
        self._dmono[mono] = out
        return out

    def d(self, x: dict) -> dict:
        out: dict = {}
        for m, c in x.items():
            self._check_degree(self.degree_of(m), self.cutoff - 1)
            for mm, cc in self._d_mono(m).items():
                _add_into(out, mm, c * cc)
        return out

    def differential(self, n: int) -> RatMatrix:
        """Matrix of d: C^n -> C^{n+1} in monomial coordinates."""
        self._check_degree(n, self.cutoff - 1)
        hit = self._dmat.get(n)
        if hit is None:
            src, tgt = self._bases[n], self._index[n + 1]
            cols = []
            for m in src:
                col = [Fraction(0)] * len(tgt)
                for mm, c in self._d_mono(m).items():
                    col[tgt[mm]] = Fraction(c)
                cols.append(col)
            hit = RatMatrix.from_columns(cols, len(tgt))
            self._dmat[n] = hit
        return hit

    # vectors <-> cochains

    def vector(self, x: dict, n: int) -> dict:
        """Sparse coordinate dict of a degree-n cochain."""
        idx = self._index[n]
        out = {}
        for m, c in x.items():
            j = idx.get(m)
            if j is None:
                raise ContractViolation(f"monomial {m} is not of degree {n}")
            out[j] = Fraction(c)
        return out

    def cochain(self, vec, n: int) -> dict:
        basis = self._bases[n]
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        return {basis[j]: Fraction(c) for j, c in items if c}

    # cohomology

    def cohomology(self, n: int) -> Cohomology:
        self._check_degree(n, self.cutoff - 1)
        hit = self._coh.get(n)
        if hit is not None:
            return hit
        dn = self.differential(n)
        ech = Echelon()
        nb = 0
        if n >= 1:
            dprev = self.differential(n - 1)
            for j in range(dprev.ncols):
                col = {i: x for i, x in enumerate(dprev.column(j)) if x}
                if col and ech.add(col):
                    nb += 1
        Z = kernel_basis(dn) if dn.ncols else None
        zdim = Z.dim if Z is not None else 0
        target = zdim - nb
        reps: list = []
        zero_cols = [j for j in range(dn.ncols) if not any(dn.column(j))] if dn.nrows else list(range(dn.ncols))
        candidates = [{j: Fraction(1)} for j in zero_cols]
        if Z is not None:
            candidates += [{i: x for i, x in enumerate(v) if x} for v in Z.basis]
        for cand in candidates:
            if len(reps) == target:
                break
            if ech.add(cand, label=("h", len(reps))):
                reps.append(cand)
        coh = Cohomology(n, len(self._bases[n]), reps, ech, nb)
        self._coh[n] = coh
        return coh

    def betti(self, upto: Optional[int] = None) -> list:
        top = self.cutoff - 1 if upto is None else upto
        return [self.cohomology(n).dim for n in range(top + 1)]

    def is_cocycle(self, x: dict) -> bool:
        return not self.d(x)

    def class_of(self, x: dict, n: Optional[int] = None) -> CohomologyClass:
        if n is None:
            if not x:
                raise ContractViolation("degree of the zero cochain must be given")
            n = self.degree_of(next(iter(x)))
        H = self.cohomology(n)
        coords = H.coords(self.vector(x, n))
        if coords is None:
            raise ContractViolation("cochain is not a cocycle")
        return CohomologyClass(n, coords)

    def representative(self, u: CohomologyClass) -> dict:
        H = self.cohomology(u.degree)
        if len(u.coords) != H.dim:
            raise ContractViolation(f"class has {len(u.coords)} coordinates, H^{u.degree} has dimension {H.dim}")
        out: dict = {}
        for c, rep in zip(u.coords, H.representatives):
            if c:
                for j, x in rep.items():
                    _add_into(out, j, c * x)
        return self.cochain(out, u.degree)

    def basis_class(self, n: int, i: int) -> CohomologyClass:
        H = self.cohomology(n)
        return CohomologyClass(n, tuple(int(i == j) for j in range(H.dim)))

    def zero_class(self, n: int) -> CohomologyClass:
        return CohomologyClass(n, (0,) * self.cohomology(n).dim)

    def generator_class(self, name: str) -> CohomologyClass:
        """Class of the dual of the Lie generator ``name`` (must be a cocycle)."""
        L = self.lie
        if name not in L.degrees:
            raise ContractViolation(f"no generator {name!r} below the cutoff")
        p = L.degrees[name]
        k = self.gen_index[(p, L.basis(p).index(name))]
        return self.class_of({(k,): Fraction(1)}, p + 1)

    def cup(self, u: CohomologyClass, v: CohomologyClass) -> CohomologyClass:
        n = u.degree + v.degree
        self._check_degree(n, self.cutoff - 1)
        prod = self.mul(self.representative(u), self.representative(v))
        return self.class_of(prod, n)


def chevalley_eilenberg(model: DgLieModel, cutoff: int) -> CochainAlgebra:
    return CochainAlgebra(model, cutoff)


def cohomology(alg: CochainAlgebra, degree: int) -> Cohomology:
    return alg.cohomology(degree)


def cup(alg: CochainAlgebra, u: CohomologyClass, v: CohomologyClass) -> CohomologyClass:
    return alg.cup(u, v)
