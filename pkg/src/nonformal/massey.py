"""Triple Massey products with exact indeterminacy cosets.

Two sign conventions are available.  Let ``a, b, c`` represent ``u, v, w``
with ``u v = 0 = v w``.

``classical`` (default): ``dS = a b``, ``dT = b c``; the product is the class
of ``S c - (-1)^{|a|} a T``.

``bar``: with ``xbar = (-1)^{1+|x|} x``, ``ds = abar b``, ``dt = bbar c``; the
product is the class of ``sbar c + abar t``.  It equals ``(-1)^{|v|+1}`` times
the classical one.

Both have indeterminacy ``u H^{|v|+|w|-1} + H^{|u|+|v|-1} w``, so zero-coset
tests and ranks do not depend on the choice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cdga import CochainAlgebra, CohomologyClass
from .errors import ContractViolation, CutoffExceeded, MasseyUndefined, NonzeroIndeterminacy
from .ratalg import Subspace, coset_reduce, kernel_basis, solve

__all__ = ["MasseyResult", "massey_triple", "massey_rank", "formality_scan", "indeterminacy", "CONVENTIONS"]


@dataclass(frozen=True)
class MasseyResult:
    degree: int
    representative: tuple
    indeterminacy: Subspace
    zero_coset: bool
    canonical: tuple
    triple: tuple = field(default=(), compare=False)  # ((deg, index), ...) when built from basis classes


def _bar(x: dict, deg: int) -> dict:
    if deg % 2 == 0:
        return {m: -c for m, c in x.items()}
    return dict(x)


def _bound(alg: CochainAlgebra, x: dict, deg: int, rng: Optional[random.Random]) -> dict:
    """Some cochain y of degree deg - 1 with dy = x."""
    D = alg.differential(deg - 1)
    rhs = [Fraction(0)] * D.nrows
    for j, c in alg.vector(x, deg).items():
        rhs[j] = c
    y = solve(D, rhs)
    if y is None:
        raise MasseyUndefined(f"degree-{deg} product is not a coboundary")
    y = list(y)
    if rng is not None:
        for z in kernel_basis(D).basis:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            if c:
                for i, zi in enumerate(z):
                    y[i] += c * zi
    return alg.cochain(y, deg - 1)


def indeterminacy(alg: CochainAlgebra, u: CohomologyClass, v: CohomologyClass,
                  w: CohomologyClass) -> Subspace:
    n = u.degree + v.degree + w.degree - 1
    dim = alg.cohomology(n).dim
    vecs = []
    left = v.degree + w.degree - 1
    for i in range(alg.cohomology(left).dim):
        vecs.append(alg.cup(u, alg.basis_class(left, i)).coords)
    right = u.degree + v.degree - 1
    for i in range(alg.cohomology(right).dim):
        vecs.append(alg.cup(alg.basis_class(right, i), w).coords)
    return Subspace.span(dim, vecs)


CONVENTIONS = ("classical", "bar")


def massey_triple(alg: CochainAlgebra, u: CohomologyClass, v: CohomologyClass, w: CohomologyClass,
                  rng: Optional[random.Random] = None, convention: str = "classical") -> MasseyResult:
    """The coset <u, v, w>.

    ``rng`` perturbs the bounding cochains by random cocycles; the returned
    canonical representative must not depend on it.
    """
    if convention not in CONVENTIONS:
        raise ContractViolation(f"unknown Massey sign convention {convention!r}")
    p, q, r = u.degree, v.degree, w.degree
    if min(p, q, r) < 1:
        raise ContractViolation("Massey products need classes of positive degree")
    n = p + q + r - 1
    if n > alg.cutoff - 1:
        raise CutoffExceeded(f"<u,v,w> lives in degree {n}; algebra cutoff {alg.cutoff} is too small")
    if not alg.cup(u, v).is_zero:
        raise MasseyUndefined("u v != 0")
    if not alg.cup(v, w).is_zero:
        raise MasseyUndefined("v w != 0")
    a, b, c = alg.representative(u), alg.representative(v), alg.representative(w)
    if convention == "bar":
        abar = _bar(a, p)
        s = _bound(alg, alg.mul(abar, b), p + q, rng)
        t = _bound(alg, alg.mul(_bar(b, q), c), q + r, rng)
        m = alg.mul(_bar(s, p + q - 1), c)
        tail = alg.mul(abar, t)
    else:
        s = _bound(alg, alg.mul(a, b), p + q, rng)
        t = _bound(alg, alg.mul(b, c), q + r, rng)
        m = alg.mul(s, c)
        tail = alg.mul(a if p % 2 else {k: -x for k, x in a.items()}, t)
    for mono, x in tail.items():
        y = m.get(mono, 0) + x
        if y:
            m[mono] = y
        else:
            m.pop(mono, None)
    rep = alg.class_of(m, n).coords
    indet = indeterminacy(alg, u, v, w)
    canon, zero = coset_reduce(rep, indet)
    return MasseyResult(n, rep, indet, zero, canon)


def massey_rank(alg: CochainAlgebra, triples: Sequence[Sequence[CohomologyClass]]) -> int:
    """Rank of the canonical representatives of zero-indeterminacy products."""
    vecs = []
    degree = None
    for idx, (u, v, w) in enumerate(triples):
        res = massey_triple(alg, u, v, w)
        if res.indeterminacy.dim:
            raise NonzeroIndeterminacy(f"triple #{idx} has indeterminacy of dimension {res.indeterminacy.dim}")
        if degree is None:
            degree = res.degree
        elif res.degree != degree:
            raise ContractViolation("all triples must land in the same degree")
        vecs.append(res.canonical)
    if not vecs:
        return 0
    return Subspace.span(len(vecs[0]), vecs).dim


def formality_scan(alg: CochainAlgebra, max_degree: int) -> list:
    """Nontrivial triple products of basis classes landing in degrees <= max_degree.

    A triple and its reverse give the same coset up to sign, so only the one
    with the smaller outer index is evaluated.  An empty result only says no
    triple-product obstruction was found.
    """
    if max_degree > alg.cutoff - 1:
        raise CutoffExceeded(f"max degree {max_degree} needs cutoff > {max_degree}")
    dims = {d: alg.cohomology(d).dim for d in range(1, max_degree + 1)}
    found = []
    for p in range(1, max_degree + 1):
        for q in range(1, max_degree + 2 - p):
            for r in range(1, max_degree + 2 - p - q):
                if p + q + r - 1 > max_degree or not (dims[p] and dims[q] and dims[r]):
                    continue
                for i in range(dims[p]):
                    for j in range(dims[q]):
                        for l in range(dims[r]):
                            if (p, i) > (r, l):
                                continue
                            u, v, w = (alg.basis_class(p, i), alg.basis_class(q, j), alg.basis_class(r, l))
                            try:
                                res = massey_triple(alg, u, v, w)
                            except MasseyUndefined:
                                continue
                            if not res.zero_coset:
                                found.append(MasseyResult(res.degree, res.representative, res.indeterminacy,
                                                          res.zero_coset, res.canonical,
                                                          ((p, i), (q, j), (r, l))))
    found.sort(key=lambda x: (x.degree, x.triple))
    return found
