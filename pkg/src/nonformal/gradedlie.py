"""Free graded Lie algebras over Q and free differential graded Lie models.

A free graded Lie algebra is realised inside the tensor algebra on its
generators, with the graded commutator ``[a, b] = ab - (-1)^{|a||b|} ba``.
Over the rationals this embedding is faithful (odd generators satisfy
``[x, [x, x]] = 0`` automatically), so tensor images are used to decide
linear independence and to compute structure constants.

Dictionary between homotopy and algebra, fixed once for the package: the
sphere ``S^k`` contributes a generator of Lie degree ``k - 1``, a cell ``e^d``
a generator of Lie degree ``d - 1``.  A Whitehead product of classes of Lie
degrees ``p`` and ``q`` corresponds to ``(-1)^p`` times the Lie bracket (the
usual Whitehead/Samelson sign), applied at every node of a bracket word; see
:func:`whitehead`.  :meth:`FreeLieAlgebra.word` reads a word as a plain Lie
bracket with no signs.

The degreewise basis is Hall-style: generators in the given order, then
brackets ``[p, q]`` of earlier basis elements (``deg p <= deg q``, index
order inside a degree) kept greedily when independent in the tensor algebra.
Independence is decided separately for each multiset of letters, which keeps
the eliminations small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import ContractViolation, CutoffExceeded, ParseError
from .ratalg import Echelon, RatMatrix

__all__ = [
    "LieGenerator",
    "LieElement",
    "FreeLieAlgebra",
    "DgLieModel",
    "parse_word",
    "format_word",
    "word_degree",
    "free_basis",
    "bracket",
    "attach_differential",
    "free_model",
    "whitehead",
]

Word = Union[str, tuple]  # name, or (left, right)


@dataclass(frozen=True)
class LieGenerator:
    name: str
    degree: int

    def __post_init__(self):
        if not _is_ident(self.name):
            raise ContractViolation(f"generator name {self.name!r} is not an ASCII identifier")
        if self.degree < 1:
            raise ContractViolation(f"generator {self.name} has degree {self.degree}; models must be simply connected")


def _is_ident(s: str) -> bool:
    return isinstance(s, str) and s.isascii() and s.isidentifier()


# -- bracket words -------------------------------------------------------------

def parse_word(text: str) -> Word:
    """Parse ``word := name | "[" word "," word "]"``; whitespace is ignored."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def fail(msg):
        raise ParseError(msg, 1, pos + 1)

    def word():
        nonlocal pos
        skip()
        if pos >= n:
            fail("unexpected end of bracket word")
        if text[pos] == "[":
            pos += 1
            left = word()
            skip()
            if pos >= n or text[pos] != ",":
                fail("expected ','")
            pos += 1
            right = word()
            skip()
            if pos >= n or text[pos] != "]":
                fail("expected ']'")
            pos += 1
            return (left, right)
        start = pos
        while pos < n and (text[pos].isalnum() or text[pos] == "_") and text[pos].isascii():
            pos += 1
        name = text[start:pos]
        if not _is_ident(name):
            fail("expected a generator name or '['")
        return name

    w = word()
    skip()
    if pos != n:
        fail("trailing characters after bracket word")
    return w


def format_word(w: Word) -> str:
    if isinstance(w, str):
        return w
    return f"[{format_word(w[0])},{format_word(w[1])}]"


def _letters(w: Word):
    if isinstance(w, str):
        yield w
    else:
        yield from _letters(w[0])
        yield from _letters(w[1])


def word_degree(w: Word, degrees: Mapping[str, int]) -> int:
    try:
        return sum(degrees[x] for x in _letters(w))
    except KeyError as e:
        raise ContractViolation(f"unknown generator {e.args[0]!r} in bracket word") from None


# -- tensor algebra helpers ----------------------------------------------------
# A tensor polynomial is a dict {tuple of generator names: coefficient}.

def _tmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def _tadd(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for w, b in q.items():
        c = out.get(w, 0) + scale * b
        if c:
            out[w] = c
        else:
            out.pop(w, None)
    return out


def _tcommutator(p: dict, dp: int, q: dict, dq: int) -> dict:
    sign = -1 if (dp * dq) % 2 == 0 else 1
    return _tadd(_tmul(p, q), _tmul(q, p), sign)


def _tword(w: Word, degrees: Mapping[str, int]) -> dict:
    if isinstance(w, str):
        return {(w,): 1}
    a, b = w
    return _tcommutator(_tword(a, degrees), word_degree(a, degrees), _tword(b, degrees), word_degree(b, degrees))


# -- Lie elements --------------------------------------------------------------

@dataclass(frozen=True)
class LieElement:
    """Rational combination of normal-form basis elements.

    ``parts`` holds ``(degree, coords)`` pairs sorted by degree with zero
    components dropped; ``coords`` are coordinates on the degreewise basis of
    the algebra that produced the element.
    """

    parts: tuple = ()

    @classmethod
    def homogeneous(cls, degree: int, coords: Sequence) -> "LieElement":
        coords = tuple(Fraction(c) for c in coords)
        return cls(((degree, coords),) if any(coords) else ())

    def __bool__(self):
        return bool(self.parts)

    @property
    def degrees(self) -> tuple:
        return tuple(d for d, _ in self.parts)

    def component(self, degree: int) -> Optional[tuple]:
        for d, c in self.parts:
            if d == degree:
                return c
        return None

    def degree(self) -> int:
        if len(self.parts) != 1:
            raise ContractViolation("element is not homogeneous" if self.parts else "zero has no degree")
        return self.parts[0][0]

    def __add__(self, other: "LieElement") -> "LieElement":
        comps = dict(self.parts)
        for d, c in other.parts:
            if d in comps:
                a = comps[d]
                if len(a) != len(c):
                    raise ContractViolation("coordinate length mismatch; elements from different algebras?")
                comps[d] = tuple(x + y for x, y in zip(a, c))
            else:
                comps[d] = c
        return LieElement(tuple((d, c) for d, c in sorted(comps.items()) if any(c)))

    def __rmul__(self, s) -> "LieElement":
        s = Fraction(s)
        if not s:
            return LieElement()
        return LieElement(tuple((d, tuple(s * x for x in c)) for d, c in self.parts))

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-other)


class FreeLieAlgebra:
    """Free graded Lie algebra on ``generators``, truncated at ``cutoff``."""

    def __init__(self, generators: Sequence[LieGenerator], cutoff: int):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ContractViolation("generator names must be unique")
        if gens and cutoff < max(g.degree for g in gens):
            raise ContractViolation(
                f"cutoff {cutoff} below generator degree {max(g.degree for g in gens)}")
        self.generators = gens
        self.cutoff = cutoff
        self.degrees = {g.name: g.degree for g in gens}
        self._names = tuple(names)
        self._basis: dict = {d: [] for d in range(1, cutoff + 1)}
        self._images: dict = {d: [] for d in range(1, cutoff + 1)}
        self._content: dict = {d: [] for d in range(1, cutoff + 1)}
        self._blocks: dict = {}  # content -> (Echelon over word columns, column index)
        self._bracket_cache: dict = {}
        self._build()

    # construction

    def _content_of(self, word: tuple) -> tuple:
        counts = [0] * len(self._names)
        idx = {x: i for i, x in enumerate(self._names)}
        for x in word:
            counts[idx[x]] += 1
        return tuple(counts)

    def _block(self, content):
        blk = self._blocks.get(content)
        if blk is None:
            blk = (Echelon(), {})
            self._blocks[content] = blk
        return blk

    @staticmethod
    def _columns(poly: dict, cols: dict) -> dict:
        out = {}
        for w, c in poly.items():
            j = cols.get(w)
            if j is None:
                j = cols[w] = len(cols)
            out[j] = c
        return out

    def _try_add(self, d: int, word: Word, image: dict) -> None:
        content = self._content_of(next(iter(image)))
        ech, cols = self._block(content)
        idx = len(self._basis[d])
        if ech.add(self._columns(image, cols), label=idx):
            self._basis[d].append(word)
            self._images[d].append(image)
            self._content[d].append(content)

    def _build(self):
        for d in range(1, self.cutoff + 1):
            for g in self.generators:
                if g.degree == d:
                    self._try_add(d, g.name, {(g.name,): 1})
            for a in range(1, d // 2 + 1):
                b = d - a
                for i, wi in enumerate(self._basis[a]):
                    for j, wj in enumerate(self._basis[b]):
                        if a == b and j < i:
                            continue
                        img = _tcommutator(self._images[a][i], a, self._images[b][j], b)
                        if img:
                            self._try_add(d, (wi, wj), img)

    # basis access

    def basis(self, degree: int) -> list:
        """Normal-form basis words in ``degree`` (deterministic order)."""
        if degree < 1:
            return []
        if degree > self.cutoff:
            raise CutoffExceeded(f"degree {degree} above cutoff {self.cutoff}")
        return list(self._basis[degree])

    def dim(self, degree: int) -> int:
        return len(self.basis(degree))

    def tensor_image(self, degree: int, index: int) -> dict:
        return dict(self._images[degree][index])

    def basis_element(self, degree: int, index: int) -> LieElement:
        coords = [0] * self.dim(degree)
        coords[index] = 1
        return LieElement.homogeneous(degree, coords)

    def generator(self, name: str) -> LieElement:
        d = self.degrees.get(name)
        if d is None:
            raise ContractViolation(f"unknown generator {name!r}")
        return self.basis_element(d, self._basis[d].index(name))

    # conversions

    def to_tensor(self, x: LieElement) -> dict:
        out: dict = {}
        for d, coords in x.parts:
            for i, c in enumerate(coords):
                if c:
                    out = _tadd(out, self._images[d][i], c)
        return out

    def from_tensor(self, poly: dict) -> LieElement:
        """Coordinates of a tensor polynomial that lies in the Lie algebra."""
        by_deg: dict = {}
        for w, c in poly.items():
            if not c:
                continue
            d = sum(self.degrees[x] for x in w)
            if d > self.cutoff:
                raise CutoffExceeded(f"degree {d} above cutoff {self.cutoff}")
            by_deg.setdefault(d, {}).setdefault(self._content_of(w), {})[w] = c
        parts = []
        for d in sorted(by_deg):
            coords = [Fraction(0)] * self.dim(d)
            for content, sub in by_deg[d].items():
                blk = self._blocks.get(content)
                if blk is None:
                    raise ContractViolation("tensor polynomial is not a Lie element")
                ech, cols = blk
                vec = {}
                for w, c in sub.items():
                    j = cols.get(w)
                    if j is None:
                        raise ContractViolation("tensor polynomial is not a Lie element")
                    vec[j] = c
                res, combo = ech.reduce(vec)
                if res:
                    raise ContractViolation("tensor polynomial is not a Lie element")
                for idx, c in combo.items():
                    coords[idx] += c
            if any(coords):
                parts.append((d, tuple(coords)))
        return LieElement(tuple(parts))

    def word(self, w: Union[Word, str]) -> LieElement:
        """Normal form of a bracket word (or its text)."""
        if isinstance(w, str) and not _is_ident(w):
            w = parse_word(w)
        for x in _letters(w):
            if x not in self.degrees:
                raise ContractViolation(f"unknown generator {x!r} in bracket word")
        d = word_degree(w, self.degrees)
        if d > self.cutoff:
            raise CutoffExceeded(f"bracket word of degree {d} above cutoff {self.cutoff}")
        return self.from_tensor(_tword(w, self.degrees))

    # bracket

    def structure_constants(self, da: int, i: int, db: int, j: int) -> tuple:
        """Coordinates of [b_i, b_j] (b_i in degree da, b_j in degree db)."""
        key = (da, i, db, j)
        hit = self._bracket_cache.get(key)
        if hit is None:
            if da + db > self.cutoff:
                raise CutoffExceeded(f"bracket lands in degree {da + db} above cutoff {self.cutoff}")
            img = _tcommutator(self._images[da][i], da, self._images[db][j], db)
            el = self.from_tensor(img)
            hit = el.component(da + db) or tuple([Fraction(0)] * self.dim(da + db))
            self._bracket_cache[key] = hit
        return hit

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        out = LieElement()
        for da, ca in a.parts:
            for db, cb in b.parts:
                if da + db > self.cutoff:
                    raise CutoffExceeded(f"bracket lands in degree {da + db} above cutoff {self.cutoff}")
                acc = [Fraction(0)] * self.dim(da + db)
                for i, x in enumerate(ca):
                    if not x:
                        continue
                    for j, y in enumerate(cb):
                        if not y:
                            continue
                        for k, z in enumerate(self.structure_constants(da, i, db, j)):
                            if z:
                                acc[k] += x * y * z
                out = out + LieElement.homogeneous(da + db, acc)
        return out


def whitehead(L: "FreeLieAlgebra", w: Union[Word, str]) -> LieElement:
    """Lie element representing the iterated Whitehead product ``w``."""
    if isinstance(w, str) and not _is_ident(w):
        w = parse_word(w)
    if isinstance(w, str):
        return L.word(w)
    sign = (-1) ** word_degree(w[0], L.degrees)
    return sign * L.bracket(whitehead(L, w[0]), whitehead(L, w[1]))


def free_basis(generators: Sequence[LieGenerator], cutoff: int) -> dict:
    """Per-degree normal-form basis words of the free graded Lie algebra."""
    L = FreeLieAlgebra(generators, cutoff)
    return {d: L.basis(d) for d in range(1, cutoff + 1)}


def bracket(L: FreeLieAlgebra, a: LieElement, b: LieElement) -> LieElement:
    return L.bracket(a, b)


# -- differential graded models -------------------------------------------------

def _tderivation(poly: dict, dgen: Mapping[str, dict], degrees: Mapping[str, int]) -> dict:
    """Extend ``dgen`` to the tensor algebra as a degree -1 derivation."""
    out: dict = {}
    for w, c in poly.items():
        sign = 1
        for pos, x in enumerate(w):
            dx = dgen.get(x)
            if dx:
                left = {w[:pos]: sign * c}
                right = {w[pos + 1:]: 1}
                out = _tadd(out, _tmul(_tmul(left, dx), right))
            if degrees[x] % 2:
                sign = -sign
    return out


class DgLieModel:
    """Free graded Lie algebra with a differential given on generators.

    Differentials are stored as tensor polynomials, so a model can be
    re-truncated at another cutoff without loss.  Construction verifies the
    degree of every ``d(g)`` and ``d(d(g)) = 0``.
    """

    def __init__(self, generators: Sequence[LieGenerator], differential: Mapping[str, dict], cutoff: int):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ContractViolation("generator names must be unique")
        self.generators = gens
        self.cutoff = cutoff
        self.degrees = {g.name: g.degree for g in gens}
        self._dgen = {k: dict(v) for k, v in differential.items() if v}
        for k in self._dgen:
            if k not in self.degrees:
                raise ContractViolation(f"differential given for unknown generator {k!r}")
        kept = [g for g in gens if g.degree <= cutoff]
        self.lie = FreeLieAlgebra(kept, cutoff)
        self._dmat: dict = {}
        for g in kept:
            dg = self._dgen.get(g.name)
            if not dg:
                continue
            for w in dg:
                if any(x not in self.lie.degrees for x in w):
                    raise ContractViolation(f"d({g.name}) involves generators outside the model")
                if sum(self.degrees[x] for x in w) != g.degree - 1:
                    raise ContractViolation(f"d({g.name}) does not have degree {g.degree - 1}")
            self.lie.from_tensor(dg)  # must be a Lie element
            if _tderivation(dg, self._dgen, self.degrees):
                raise ContractViolation(f"d(d({g.name})) != 0")

    def regraded(self, cutoff: int) -> "DgLieModel":
        """Same model with another cutoff; generators above it are dropped."""
        keep = [g for g in self.generators if g.degree <= cutoff]
        names = {g.name for g in keep}
        dgen = {k: v for k, v in self._dgen.items() if k in names}
        return DgLieModel(keep, dgen, cutoff)

    def generator_differential(self, name: str) -> LieElement:
        return self.lie.from_tensor(self._dgen.get(name, {}))

    def differential_polys(self) -> dict:
        return {k: dict(v) for k, v in self._dgen.items()}

    def d(self, x: LieElement) -> LieElement:
        return self.lie.from_tensor(_tderivation(self.lie.to_tensor(x), self._dgen, self.degrees))

    def d_matrix(self, degree: int) -> RatMatrix:
        """Matrix of d: L_degree -> L_{degree-1} on the normal-form bases."""
        hit = self._dmat.get(degree)
        if hit is not None:
            return hit
        L = self.lie
        src = L.dim(degree)
        tgt = L.dim(degree - 1) if degree > 1 else 0
        cols = []
        for i in range(src):
            img = self.d(L.basis_element(degree, i)).component(degree - 1)
            cols.append(img or (Fraction(0),) * tgt)
        hit = self._dmat[degree] = RatMatrix.from_columns(cols, tgt)
        return hit

    def d_squared_vanishes(self) -> bool:
        for deg in range(2, self.cutoff + 1):
            for i in range(self.lie.dim(deg)):
                if self.d(self.d(self.lie.basis_element(deg, i))):
                    return False
        return True

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"DgLieModel([{gens}], cutoff={self.cutoff})"


def free_model(generators: Sequence[LieGenerator], cutoff: Optional[int] = None) -> DgLieModel:
    gens = tuple(generators)
    if cutoff is None:
        cutoff = max((g.degree for g in gens), default=1)
    return DgLieModel(gens, {}, cutoff)


def attach_differential(model: DgLieModel, gen: LieGenerator,
                        value: Union[LieElement, Word, str]) -> DgLieModel:
    """New model with ``gen`` added and ``d(gen) = value``.

    ``value`` is a LieElement of ``model.lie``, a bracket word, or its text.
    """
    if gen.name in model.degrees:
        raise ContractViolation(f"generator {gen.name!r} already present")
    if isinstance(value, LieElement):
        el = value
    else:
        el = model.lie.word(value)
    if el and el.degrees != (gen.degree - 1,):
        raise ContractViolation(
            f"d({gen.name}) must have degree {gen.degree - 1}, got degrees {el.degrees}")
    if model.d(el):
        raise ContractViolation(f"attaching value for {gen.name} is not a cycle")
    dgen = model.differential_polys()
    dgen[gen.name] = model.lie.to_tensor(el)
    return DgLieModel(model.generators + (gen,), dgen, max(model.cutoff, gen.degree))
