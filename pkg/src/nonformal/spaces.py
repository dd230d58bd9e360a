"""Cell models of wedges of spheres with cells attached along bracket words.

A sphere ``S^k`` named ``a`` becomes a Lie generator ``a`` of degree ``k - 1``;
a cell ``e^d`` named ``e`` becomes a generator of degree ``d - 1`` whose
differential is the attaching Whitehead product translated by
:func:`nonformal.gradedlie.whitehead`.

Text form::

    space X {
      sphere a1 : 2
      sphere a2 : 2
      sphere a3 : 2
      cell e5 = [a1,[a2,a3]]
    }

A cell's dimension is given as ``cell c : 5 = ...`` or read off a name of
the form ``e<digits>``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .cdga import CochainAlgebra, CohomologyClass
from .errors import ContractViolation, NotSimplyConnected, ParseError
from .gradedlie import (DgLieModel, LieGenerator, Word, attach_differential, format_word, free_model,
                        whitehead)

__all__ = [
    "SpaceSpec",
    "wedge_of_spheres",
    "paper_space_X",
    "paper_space_Z",
    "paper_space_X4",
    "spec_X",
    "spec_Z",
    "spec_X4",
    "model_from_spec",
    "cochains",
    "default_cutoff",
    "sphere_class",
    "parse_space",
    "format_space",
]


def _word_lie_degree(w: Word, degrees: dict) -> int:
    if isinstance(w, str):
        return degrees[w]
    return _word_lie_degree(w[0], degrees) + _word_lie_degree(w[1], degrees)


def _word_letters(w: Word):
    if isinstance(w, str):
        yield w
    else:
        yield from _word_letters(w[0])
        yield from _word_letters(w[1])


@dataclass(frozen=True)
class SpaceSpec:
    name: str
    spheres: tuple  # ((name, degree), ...)
    cells: tuple = ()  # ((name, dimension, word), ...)

    def __post_init__(self):
        object.__setattr__(self, "spheres", tuple((str(n), int(k)) for n, k in self.spheres))
        object.__setattr__(self, "cells", tuple((str(n), int(d), w) for n, d, w in self.cells))
        seen = set()
        degrees = {}
        for n, k in self.spheres:
            if n in seen:
                raise ContractViolation(f"duplicate name {n!r}")
            seen.add(n)
            if k < 2:
                raise NotSimplyConnected(f"sphere {n} has dimension {k} < 2")
            degrees[n] = k - 1
        for n, d, w in self.cells:
            if n in seen:
                raise ContractViolation(f"duplicate name {n!r}")
            bad = [x for x in _word_letters(w) if x not in degrees]
            if bad:
                raise ContractViolation(f"cell {n} is attached along unknown generator {bad[0]!r}")
            need = _word_lie_degree(w, degrees) + 2
            if d != need:
                raise ContractViolation(f"cell {n} attached along {format_word(w)} must have dimension {need}, not {d}")
            seen.add(n)
            degrees[n] = d - 1

    @property
    def sphere_degrees(self) -> tuple:
        return tuple(k for _, k in self.spheres)

    @property
    def top_dimension(self) -> int:
        return max([k for _, k in self.spheres] + [d for _, d, _ in self.cells])


def _sphere_names(n: int) -> list:
    return [f"a{i}" for i in range(1, n + 1)]


def wedge_of_spheres(degrees: Sequence[int], names: Optional[Sequence[str]] = None) -> DgLieModel:
    degrees = list(degrees)
    for k in degrees:
        if k < 2:
            raise NotSimplyConnected(f"sphere of dimension {k} is not simply connected")
    names = list(names) if names is not None else _sphere_names(len(degrees))
    return model_from_spec(SpaceSpec("wedge", tuple(zip(names, degrees))))


def spec_X(k1: int, k2: int, k3: int) -> SpaceSpec:
    m = k1 + k2 + k3 - 1
    return SpaceSpec("X", tuple(zip(_sphere_names(3), (k1, k2, k3))),
                     ((f"e{m}", m, ("a1", ("a2", "a3"))),))


def spec_Z(k: int) -> SpaceSpec:
    m = 3 * k - 1
    return SpaceSpec("Z", tuple((n, k) for n in _sphere_names(4)), ((f"e{m}", m, ("a1", ("a2", "a3"))),))


def spec_X4(k: int) -> SpaceSpec:
    names = _sphere_names(4)
    cells = []
    for i in range(4):
        # a5 = a1, a6 = a2
        w = (names[i], (names[(i + 1) % 4], names[(i + 2) % 4]))
        cells.append((f"c{i + 1}", 3 * k - 1, w))
    return SpaceSpec("X4", tuple((n, k) for n in names), tuple(cells))


def paper_space_X(k1: int, k2: int, k3: int) -> DgLieModel:
    return model_from_spec(spec_X(k1, k2, k3))


def paper_space_Z(k: int) -> DgLieModel:
    return model_from_spec(spec_Z(k))


def paper_space_X4(k: int) -> DgLieModel:
    return model_from_spec(spec_X4(k))


def model_from_spec(spec: SpaceSpec) -> DgLieModel:
    gens = [LieGenerator(n, k - 1) for n, k in spec.spheres]
    top = max([g.degree for g in gens] + [d - 2 for _, d, _ in spec.cells])
    model = free_model(gens, top)
    for n, d, w in spec.cells:
        model = attach_differential(model, LieGenerator(n, d - 1), whitehead(model.lie, w))
    return model


def default_cutoff(spec: SpaceSpec) -> int:
    """Smallest cutoff giving cohomology up to the top cell."""
    return spec.top_dimension + 1


def cochains(spec: SpaceSpec, cutoff: Optional[int] = None) -> CochainAlgebra:
    return CochainAlgebra(model_from_spec(spec), default_cutoff(spec) if cutoff is None else cutoff)


def sphere_class(alg: CochainAlgebra, spec: SpaceSpec, which) -> CohomologyClass:
    """Class dual to a sphere, given by name or 1-based index."""
    if isinstance(which, int):
        if not 1 <= which <= len(spec.spheres):
            raise ContractViolation(f"no sphere number {which}")
        which = spec.spheres[which - 1][0]
    if which not in dict(spec.spheres):
        raise ContractViolation(f"no sphere named {which!r}")
    return alg.generator_class(which)


# text form

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<sym>[{}:=\[\],])")


def _tokens(text: str) -> list:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind:
            out.append((kind, m.group(), line, col))
        piece = m.group()
        nl = piece.count("\n")
        if nl:
            line += nl
            col = len(piece) - piece.rfind("\n")
        else:
            col += len(piece)
        pos = m.end()
    out.append(("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else kind
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            self.fail(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def word(self):
        tok = self.peek()
        if tok[0] == "id":
            self.i += 1
            return tok[1], [tok]
        self.take("sym", "[")
        a, ta = self.word()
        self.take("sym", ",")
        b, tb = self.word()
        self.take("sym", "]")
        return (a, b), ta + tb

    def space(self) -> SpaceSpec:
        self.take("id", "space")
        name = self.take("id")[1]
        self.take("sym", "{")
        spheres, cells, degrees = [], [], {}
        while not (self.peek()[0] == "sym" and self.peek()[1] == "}"):
            kw = self.take("id")
            if kw[1] not in ("sphere", "cell"):
                self.fail(f"expected 'sphere' or 'cell', got {kw[1]!r}", kw)
            ntok = self.take("id")
            n = ntok[1]
            if n in degrees:
                self.fail(f"duplicate name {n!r}", ntok)
            if kw[1] == "sphere":
                self.take("sym", ":")
                dtok = self.take("int")
                k = int(dtok[1])
                if k < 2:
                    self.fail(f"sphere {n} has dimension {k}; spheres must have dimension >= 2", dtok)
                spheres.append((n, k))
                degrees[n] = k - 1
                continue
            dim, dtok = None, ntok
            if self.peek()[1] == ":" and self.peek()[0] == "sym":
                self.i += 1
                dtok = self.take("int")
                dim = int(dtok[1])
            self.take("sym", "=")
            w, letters = self.word()
            for lt in letters:
                if lt[1] not in degrees or lt[1] == n:
                    self.fail(f"unknown generator {lt[1]!r}", lt)
            need = _word_lie_degree(w, degrees) + 2
            if dim is None:
                m = re.fullmatch(r"e([0-9]+)", n)
                if m is None:
                    self.fail(f"cell {n} needs a dimension (write 'cell {n} : D = ...' or name it e<D>)", ntok)
                dim = int(m.group(1))
            if dim != need:
                self.fail(f"cell {n} attached along {format_word(w)} must have dimension {need}, not {dim}", dtok)
            cells.append((n, dim, w))
            degrees[n] = dim - 1
        self.take("sym", "}")
        self.take("eof")
        try:
            return SpaceSpec(name, tuple(spheres), tuple(cells))
        except ContractViolation as exc:  # pragma: no cover - parser checks the same rules
            raise ParseError(str(exc), self.toks[0][2], self.toks[0][3]) from exc


def parse_space(text: str) -> SpaceSpec:
    """Parse the space DSL; any malformed input raises ParseError."""
    return _Parser(text).space()


def format_space(spec: SpaceSpec) -> str:
    lines = [f"space {spec.name} {{"]
    for n, k in spec.spheres:
        lines.append(f"  sphere {n} : {k}")
    for n, d, w in spec.cells:
        dim = "" if n == f"e{d}" else f" : {d}"
        lines.append(f"  cell {n}{dim} = {format_word(w)}")
    lines.append("}")
    return "\n".join(lines) + "\n"
