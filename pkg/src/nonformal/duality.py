"""Rational cohomology of the boundary of a regular neighbourhood.

``X`` sits in ``R^N`` with regular neighbourhood ``W`` and boundary ``V``.
Over the rationals ``H^i(W) = H^i(X)`` and ``H^i(W, V) = H_{N-i}(X)``, and the
pair sequence

    ... -> H^i(W, V) -> H^i(W) -> H^i(V) -> H^{i+1}(W, V) -> ...

determines ``H^*(V)`` up to the ranks ``r_i`` of ``H^i(W, V) -> H^i(W)``.
Only dimensions are used: ``b^i(V) = b^i(W) - r_i + b^{i+1}(W, V) - r_{i+1}``.
Every admissible rank vector is enumerated and kept if the result satisfies
Poincare duality of the closed ``(N-1)``-manifold ``V``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ContractViolation, FormalityRefusal

__all__ = [
    "Diagnostic",
    "BoundaryReport",
    "boundary_report",
    "excluded_ambient_dims",
    "excluded_ambient_dims_bruteforce",
    "paper_betti_X",
    "REQUIREMENTS",
    "MODES",
    "Recipe",
    "dimension_planner",
    "connectivity_report",
]

REQUIREMENTS = ("indeterminacy_zero", "injective_top", "surjective_k", "iso_top")
MODES = {
    "first": frozenset({"indeterminacy_zero", "injective_top"}),
    "full": frozenset({"indeterminacy_zero", "iso_top", "surjective_k"}),
}


@dataclass(frozen=True)
class Diagnostic:
    holds: Optional[bool]  # None: not decided by dimension counting
    reason: str


@dataclass(frozen=True)
class BoundaryReport:
    ambient: int
    betti: tuple  # per degree 0..N-1: int, or (lo, hi) when undetermined
    relative: tuple  # b^i(W, V), i = 0..N
    absolute: tuple  # b^i(W), i = 0..N
    ranks: tuple  # admissible rank vectors r_0..r_N
    diagnostics: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(isinstance(b, int) for b in self.betti)

    def value(self, i: int):
        return self.betti[i] if 0 <= i < len(self.betti) else 0


def _pad(betti: Sequence[int], n: int) -> list:
    return [betti[i] if 0 <= i < len(betti) else 0 for i in range(n)]


def _boundary_betti(B: list, A: list, r: Sequence[int], N: int) -> tuple:
    return tuple(B[i] - r[i] + A[i + 1] - r[i + 1] for i in range(N))


def _check_betti(bettiX: Sequence[int]) -> list:
    b = [int(x) for x in bettiX]
    if not b or any(x < 0 for x in b):
        raise ContractViolation("Betti numbers must be a non-empty list of non-negative integers")
    if b[0] < 1:
        raise ContractViolation("b_0 must be at least 1")
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    return b


def boundary_report(bettiX: Sequence[int], N: int, k: Optional[int] = None) -> BoundaryReport:
    """Betti numbers of ``V`` from those of ``X``.

    With ``k`` given, also decide the facts used for the Massey classes of
    ``X(k, k, k)``: ``H^{2k-1}(V) = 0``, and injectivity, surjectivity or
    bijectivity of the restrictions ``H^{3k-1}(W) -> H^{3k-1}(V)`` and
    ``H^k(W) -> H^k(V)``.
    """
    b = _check_betti(bettiX)
    top = len(b) - 1
    if N <= top:
        raise ContractViolation(f"ambient dimension {N} must exceed the dimension {top} of X")
    A = [b[N - i] if 0 <= N - i <= top else 0 for i in range(N + 2)]  # H^i(W, V)
    B = _pad(b, N + 2)  # H^i(W)
    free = [i for i in range(N + 1) if A[i] and B[i]]
    feasible = []
    for choice in itertools.product(*(range(min(A[i], B[i]) + 1) for i in free)):
        r = [0] * (N + 2)
        for i, x in zip(free, choice):
            r[i] = x
        bv = _boundary_betti(B, A, r, N)
        if all(bv[i] == bv[N - 1 - i] for i in range(N)):
            feasible.append((tuple(r), bv))
    if not feasible:
        raise ContractViolation(f"no rank assignment is compatible with Poincare duality for N={N}")
    betti = []
    for i in range(N):
        vals = {bv[i] for _, bv in feasible}
        lo, hi = min(vals), max(vals)
        betti.append(lo if lo == hi else (lo, hi))
    ranks = tuple(r for r, _ in feasible)
    diags = _diagnostics(A, B, ranks, k, N) if k is not None else {}
    return BoundaryReport(N, tuple(betti), tuple(A[:N + 1]), tuple(B[:N + 1]), ranks, diags)


def _decide(flags: Iterable[bool]) -> Optional[bool]:
    s = set(flags)
    return s.pop() if len(s) == 1 else None


def _diagnostics(A: list, B: list, ranks: tuple, k: int, N: int) -> dict:
    def at(seq, i):
        return seq[i] if 0 <= i < len(seq) else 0

    out = {}
    i = 2 * k - 1
    vals = [at(B, i) - r[i] + at(A, i + 1) - at(r, i + 1) for r in ranks]
    out["indeterminacy_zero"] = Diagnostic(
        _decide(v == 0 for v in vals),
        f"H^{i}(W)={at(B, i)}, H^{i + 1}(W,V)=b_{N - i - 1}(X)={at(A, i + 1)}, so H^{i}(V) in {sorted(set(vals))}")
    t = 3 * k - 1
    # kernel of H^t(W) -> H^t(V) is the image of H^t(W, V)
    inj = _decide(r[t] == 0 for r in ranks)
    out["injective_top"] = Diagnostic(
        inj, f"H^{t}(W,V)=b_{N - t}(X)={at(A, t)} maps onto the kernel of H^{t}(W) -> H^{t}(V)")
    # cokernel of H^j(W) -> H^j(V) injects into H^{j+1}(W, V) with image ker(H^{j+1}(W,V) -> H^{j+1}(W))
    sur_top = _decide(at(r, t + 1) == at(A, t + 1) for r in ranks)
    out["iso_top"] = Diagnostic(
        None if inj is None or sur_top is None else (inj and sur_top),
        f"injective: {inj}; cokernel sits in H^{t + 1}(W,V)=b_{N - t - 1}(X)={at(A, t + 1)}, surjective: {sur_top}")
    out["surjective_k"] = Diagnostic(
        _decide(at(r, k + 1) == at(A, k + 1) for r in ranks),
        f"cokernel of H^{k}(W) -> H^{k}(V) sits in H^{k + 1}(W,V)=b_{N - k - 1}(X)={at(A, k + 1)}")
    return out


def paper_betti_X(k: int) -> list:
    """Betti numbers of X(k, k, k): 1, 3 and 1 in degrees 0, k and 3k - 1."""
    b = [0] * (3 * k)
    b[0], b[k], b[3 * k - 1] = 1, 3, 1
    return b


def _requirements(requirements) -> frozenset:
    if isinstance(requirements, str):
        requirements = MODES.get(requirements, {requirements})
    req = frozenset(requirements)
    if not req:
        raise ContractViolation("at least one requirement is needed")
    bad = req - set(REQUIREMENTS)
    if bad:
        raise ContractViolation(f"unknown requirement(s) {sorted(bad)}")
    return req


def excluded_ambient_dims(k: int, requirements, upto: Optional[int] = None) -> set:
    """Ambient dimensions ``N`` in ``[4k, upto]`` where a requirement can fail.

    ``upto`` defaults to ``8k``; nothing above ``6k - 1`` is ever excluded.
    """
    if k < 2:
        raise ContractViolation("k must be at least 2")
    req = _requirements(requirements)
    support = {0, k, 3 * k - 1}
    shifts = {
        "indeterminacy_zero": [2 * k],
        "injective_top": [3 * k - 1],
        "surjective_k": [k + 1],
        "iso_top": [3 * k - 1, 3 * k],
    }
    upto = 8 * k if upto is None else upto
    out = set()
    for N in range(4 * k, upto + 1):
        if any(N - s in support for name in req for s in shifts[name]):
            out.add(N)
    return out


def excluded_ambient_dims_bruteforce(k: int, requirements, upto: Optional[int] = None,
                                     bettiX: Optional[Sequence[int]] = None) -> set:
    """Same set, obtained by running :func:`boundary_report` for each ``N``."""
    req = _requirements(requirements)
    b = paper_betti_X(k) if bettiX is None else list(bettiX)
    upto = 8 * k if upto is None else upto
    out = set()
    for N in range(4 * k, upto + 1):
        rep = boundary_report(b, N, k)
        if any(rep.diagnostics[name].holds is not True for name in req):
            out.add(N)
    return out


@dataclass(frozen=True)
class Recipe:
    kind: str  # "boundary", "double" or "product"
    k: int
    dimension: int
    ambient: int
    justification: str
    alternatives: tuple = ()

    def describe(self) -> str:
        return {
            "boundary": f"boundary of a regular neighbourhood of X({self.k},{self.k},{self.k}) in R^{self.ambient}",
            "double": f"double of a regular neighbourhood of X({self.k},{self.k},{self.k}) in R^{self.ambient}",
            "product": f"product of a boundary manifold with a sphere (ambient R^{self.ambient})",
        }[self.kind]


def dimension_planner(k: int, d: int) -> Recipe:
    """A closed (k-1)-connected d-manifold with a nontrivial triple Massey product."""
    if k < 2:
        raise ContractViolation("k must be at least 2")
    if d <= 4 * k - 2:
        raise FormalityRefusal(
            f"every closed {k - 1}-connected manifold of dimension <= {4 * k - 2} is formal (Miller), "
            f"so d={d} admits no nontrivial Massey product")
    bad = excluded_ambient_dims(k, "first", upto=max(8 * k, d + 1))
    alts = _product_alternatives(k, d, bad)
    if d + 1 not in bad:
        return Recipe("boundary", k, d, d + 1,
                      f"N={d + 1} avoids the excluded ambient dimensions {sorted(bad)}: "
                      f"H^{2 * k - 1}(V)=0 and H^{3 * k - 1}(X) -> H^{3 * k - 1}(V) is injective",
                      alts)
    if d >= 4 * k:
        return Recipe("double", k, d, d,
                      f"N={d + 1} is excluded {sorted(bad)}; the double of W in R^{d} retracts onto W by the "
                      f"fold map, so H^*(X) -> H^*(DW) is split injective",
                      alts)
    if alts:
        return alts[0]
    raise FormalityRefusal(f"no recipe for k={k}, d={d}")


def _product_alternatives(k: int, d: int, bad: set) -> tuple:
    """Boundary of dimension d - j times S^j, j >= k; only for k != 2."""
    if k == 2:
        return ()
    out = []
    for j in range(k, d - 4 * k + 2):
        N = d - j + 1
        if N >= 4 * k and N not in bad:
            out.append(Recipe("product", k, d, N,
                              f"boundary V^{d - j} from N={N} (not excluded) times S^{j}; j >= k keeps "
                              f"(k-1)-connectivity"))
    return tuple(out)


def connectivity_report(bettiX: Sequence[int], N: int, k: int) -> bool:
    """Whether the sequence forces ``b_i(V) = 0`` for ``0 < i <= k - 1``."""
    rep = boundary_report(bettiX, N)
    return all(rep.value(i) == 0 for i in range(1, k))
