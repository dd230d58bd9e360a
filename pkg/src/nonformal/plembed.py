"""Explicit PL embeddings of double mapping cylinders, with exact verification.

For ``B`` in ``R^m``, a subcomplex ``A`` with ``A - {0}`` radial, ``Y`` in
``R^n`` and a simplicial ``f: A -> Y`` the double mapping cylinder ``Z_f`` is
placed in ``R^{m+n}`` as

* ``B x 0_n``;
* for ``a`` in ``A``, the segment from ``(a, 0_n)`` to the graph point
  ``(a, f(a))`` and from there to ``(0_m, f(a))``;
* ``0_m x Y``.

Both segment families are triangulated by the ordered prism construction
(vertex order = vertex index).  If the origin is a vertex of ``A``, its graph
point is ``(0_m, y0)`` itself, so the only extra piece over the origin is the
segment ``[0, (0_m, y0)]``.

A set is called radial here if each ray from the origin meets it at most
once.  A simplicial ``A`` through the origin can never be radial in that
strict sense (edges at the origin lie on rays), so :func:`radial_check`
replaces every simplex at the origin by its opposite face before testing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BasepointConditionViolated, ContractViolation, NotRadial, ParseError
from .ratalg import RatMatrix, lp_maximize, rank, solve

__all__ = [
    "SimplicialComplex",
    "GeomComplex",
    "SimplicialMap",
    "radial_check",
    "closest_points",
    "mapping_cylinder",
    "embed_double_cylinder",
    "embed_cone",
    "circle_wedge",
    "verify_embedding",
    "parse_geometry",
    "format_geometry",
    "geometry_complex",
    "build_from_geometry",
]


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise ContractViolation("coordinates must be exact rationals, not floats")
    return Fraction(x)


def _maximal(simplices: Iterable[Iterable[int]]) -> tuple:
    sims = {tuple(sorted(set(int(v) for v in s))) for s in simplices}
    sims.discard(())
    keep = []
    for s in sorted(sims, key=lambda s: (-len(s), s)):
        ss = set(s)
        if not any(ss < set(t) for t in keep):
            keep.append(s)
    return tuple(sorted(keep))


class SimplicialComplex:
    """Abstract complex given by its maximal simplices (tuples of vertex ids)."""

    def __init__(self, simplices: Iterable[Iterable[int]]):
        self.simplices = _maximal(simplices)
        self.vertices = tuple(sorted({v for s in self.simplices for v in s}))

    def faces(self) -> set:
        out = set()
        for s in self.simplices:
            for r in range(1, len(s) + 1):
                out.update(combinations(s, r))
        return out

    def euler(self) -> int:
        return sum((-1) ** (len(f) - 1) for f in self.faces())

    def contains(self, face: Iterable[int]) -> bool:
        f = set(face)
        return any(f <= set(s) for s in self.simplices)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(other.contains(s) for s in self.simplices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex({list(self.simplices)})"


class GeomComplex:
    """Complex with exact rational vertex coordinates in ``R^D``."""

    def __init__(self, ambient_dim: int, vertices: Sequence[Sequence], simplices: Iterable[Iterable[int]],
                 labels: Optional[Sequence] = None):
        self.ambient_dim = int(ambient_dim)
        self.vertices = tuple(tuple(_q(x) for x in v) for v in vertices)
        for i, v in enumerate(self.vertices):
            if len(v) != self.ambient_dim:
                raise ContractViolation(f"vertex {i} has {len(v)} coordinates, expected {self.ambient_dim}")
        if len(set(self.vertices)) != len(self.vertices):
            raise ContractViolation("vertices must have distinct coordinates")
        self.complex = SimplicialComplex(simplices)
        for s in self.complex.simplices:
            if s[-1] >= len(self.vertices) or s[0] < 0:
                raise ContractViolation(f"simplex {s} refers to a missing vertex")
            if not _affinely_independent([self.vertices[i] for i in s]):
                raise ContractViolation(f"simplex {s} is affinely degenerate")
        self.labels = tuple(labels) if labels is not None else None

    @property
    def simplices(self) -> tuple:
        return self.complex.simplices

    def euler(self) -> int:
        return self.complex.euler()

    def point(self, i: int) -> tuple:
        return self.vertices[i]

    def __repr__(self):
        return f"GeomComplex(dim={self.ambient_dim}, {len(self.vertices)} vertices, {len(self.simplices)} simplices)"


def _affinely_independent(points: Sequence[tuple]) -> bool:
    if len(points) <= 1:
        return True
    p0 = points[0]
    rows = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(RatMatrix(rows)) == len(rows)


class SimplicialMap:
    """Vertex map ``domain -> codomain`` sending simplices onto simplices."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex, vmap: Mapping[int, int]):
        self.domain = domain
        self.codomain = codomain
        self.vmap = {int(k): int(v) for k, v in dict(vmap).items()}
        missing = [v for v in domain.vertices if v not in self.vmap]
        if missing:
            raise ContractViolation(f"vertex {missing[0]} of the domain is not mapped")
        for s in domain.simplices:
            img = {self.vmap[v] for v in s}
            if not codomain.contains(img):
                raise ContractViolation(f"image of simplex {s} is not a simplex of the codomain")

    def __call__(self, v: int) -> int:
        return self.vmap[v]


# radiality

def _origin_index(C: GeomComplex, origin: tuple) -> Optional[int]:
    for i, v in enumerate(C.vertices):
        if v == origin:
            return i
    return None


def _contains_point(points: Sequence[tuple], x: tuple) -> bool:
    k, D = len(points), len(x)
    A = [[p[d] for p in points] for d in range(D)] + [[1] * k]
    return lp_maximize([0] * k, A, list(x) + [1]) is not None


def radial_check(A: GeomComplex, origin: Optional[Sequence] = None) -> bool:
    """Whether ``|A| - {origin}`` meets each ray from ``origin`` at most once.

    Simplices having the origin as a vertex are replaced by their opposite
    faces; an origin lying in |A| other than as a vertex makes the answer
    False.
    """
    D = A.ambient_dim
    o = tuple(_q(x) for x in origin) if origin is not None else (Fraction(0),) * D
    pts = [tuple(a - b for a, b in zip(v, o)) for v in A.vertices]
    oi = _origin_index(A, o)
    faces = set()
    for s in A.simplices:
        t = tuple(v for v in s if v != oi)
        if t:
            faces.add(t)
    faces = sorted(faces)
    zero = (Fraction(0),) * D
    for s in faces:
        if _contains_point([pts[i] for i in s], zero):
            return False
    for s in faces:
        for t in faces:
            # minimise sum(nu) with sum(lam p) = sum(nu q), sum(lam) = 1
            P, Q = [pts[i] for i in s], [pts[j] for j in t]
            rows = [[p[d] for p in P] + [-q[d] for q in Q] for d in range(D)]
            rows.append([1] * len(P) + [0] * len(Q))
            res = lp_maximize([0] * len(P) + [-1] * len(Q), rows, [0] * D + [1])
            if res is not None and res[0] is not None and -res[0] < 1:
                return False
    return True


def closest_points(Y: GeomComplex) -> tuple:
    """(squared distance, sorted distinct points) of ``|Y|`` closest to the origin."""
    best, where = None, set()
    for s in Y.simplices:
        for r in range(1, len(s) + 1):
            for face in combinations(s, r):
                P = [Y.vertices[i] for i in face]
                p0 = P[0]
                E = [tuple(a - b for a, b in zip(p, p0)) for p in P[1:]]
                if E:
                    G = RatMatrix([[sum(a * b for a, b in zip(e, f)) for f in E] for e in E])
                    t = solve(G, [-sum(a * b for a, b in zip(e, p0)) for e in E])
                    if t is None or any(x < 0 for x in t) or sum(t) > 1:
                        continue
                    x = tuple(p0[d] + sum(ti * e[d] for ti, e in zip(t, E)) for d in range(Y.ambient_dim))
                else:
                    x = p0
                n2 = sum(c * c for c in x)
                if best is None or n2 < best:
                    best, where = n2, {x}
                elif n2 == best:
                    where.add(x)
    return best, tuple(sorted(where))


# construction

def mapping_cylinder(f: SimplicialMap) -> SimplicialComplex:
    """Ordered prism triangulation of the mapping cylinder.

    Domain vertex ``v`` keeps label ``v``; codomain vertex ``y`` becomes
    ``offset + y`` with ``offset = 1 + max domain vertex``.
    """
    off = 1 + max(f.domain.vertices, default=-1)
    sims = [tuple(off + y for y in s) for s in f.codomain.simplices]
    for s in f.domain.simplices:
        for i in range(len(s)):
            sims.append(s[:i + 1] + tuple(off + f(v) for v in s[i:]))
    return SimplicialComplex(sims)


def _as_subcomplex(A, B: GeomComplex) -> SimplicialComplex:
    Ac = A if isinstance(A, SimplicialComplex) else SimplicialComplex(A)
    if not Ac.is_subcomplex_of(B.complex):
        raise ContractViolation("A is not a subcomplex of B")
    return Ac


def embed_double_cylinder(B: GeomComplex, A, Y: GeomComplex, f: SimplicialMap) -> GeomComplex:
    """The double mapping cylinder of ``B > A -f-> Y`` in ``R^{m+n}``.

    ``A`` is a subcomplex of ``B`` on the same vertex ids; ``f`` maps ``A``
    to ``Y.complex``.  Output vertex labels are ``("B", i)``, ``("G", a)``
    (graph points) and ``("Y", j)``.
    """
    m, n = B.ambient_dim, Y.ambient_dim
    Ac = _as_subcomplex(A, B)
    if f.domain != Ac or f.codomain != Y.complex:
        raise ContractViolation("f must map A to Y")
    Ageo = GeomComplex(m, B.vertices, Ac.simplices)
    if not radial_check(Ageo):
        raise NotRadial("A minus the origin is not radial")
    zero_n = (Fraction(0),) * n
    if zero_n in Y.vertices:
        raise BasepointConditionViolated("Y has a vertex at the origin")
    zero_m = (Fraction(0),) * m
    o = _origin_index(B, zero_m)
    if o is not None and o not in Ac.vertices:
        o = None
    if o is not None:
        _, near = closest_points(Y)
        if len(near) != 1 or near[0] not in Y.vertices:
            raise BasepointConditionViolated("no unique vertex of Y is closest to the origin")
        y0 = Y.vertices.index(near[0])
        if f(o) != y0:
            raise BasepointConditionViolated(f"f sends the origin to vertex {f(o)}, not to the closest vertex {y0}")

    coords, labels, index = [], [], {}

    def add(label, x):
        index[label] = len(coords)
        coords.append(x)
        labels.append(label)

    for i, v in enumerate(B.vertices):
        add(("B", i), v + zero_n)
    for j, y in enumerate(Y.vertices):
        add(("Y", j), zero_m + y)
    for a in Ac.vertices:
        if a == o:
            index[("G", a)] = index[("Y", f(a))]
        else:
            add(("G", a), B.vertices[a] + Y.vertices[f(a)])

    sims = [tuple(index[("B", i)] for i in s) for s in B.simplices]
    sims += [tuple(index[("Y", j)] for j in s) for s in Y.simplices]
    for s in Ac.simplices:
        for i in range(len(s)):
            sims.append(tuple(index[("B", a)] for a in s[:i + 1]) + tuple(index[("G", a)] for a in s[i:]))
            sims.append(tuple(index[("G", a)] for a in s[:i + 1]) + tuple(index[("Y", f(a))] for a in s[i:]))
    return GeomComplex(m + n, coords, sims, labels)


def _components(simplices: Sequence[tuple], skip: Optional[int]) -> list:
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in simplices:
        vs = [v for v in s if v != skip]
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
        for v in vs:
            find(v)
    groups: dict = {}
    for s in simplices:
        vs = [v for v in s if v != skip]
        if vs:
            groups.setdefault(find(vs[0]), []).append(s)
    return [groups[k] for k in sorted(groups, key=lambda k: min(min(s) for s in groups[k]))]


def embed_cone(A: GeomComplex, Y: GeomComplex, f: SimplicialMap) -> GeomComplex:
    """Mapping cone of ``f`` from a wedge of sphere triangulations ``A``.

    ``A`` is placed in ``R^m`` with the wedge point at the origin; each sphere
    is coned off from the barycentre of its vertices, giving a wedge of discs
    ``B``, and the result is the double mapping cylinder of ``B > A -> Y``.
    """
    zero = (Fraction(0),) * A.ambient_dim
    o = _origin_index(A, zero)
    verts = list(A.vertices)
    sims = list(A.simplices)
    for comp in _components(A.simplices, o):
        vs = sorted({v for s in comp for v in s})
        c = tuple(sum(verts[v][d] for v in vs) / len(vs) for d in range(A.ambient_dim))
        ci = len(verts)
        verts.append(c)
        sims.extend(s + (ci,) for s in comp)
    B = GeomComplex(A.ambient_dim, verts, sims)
    return embed_double_cylinder(B, A.complex, Y, f)


def circle_wedge(sizes: Sequence[int]) -> GeomComplex:
    """Wedge of polygonal circles in ``R^2`` through the origin, at most four.

    Circle ``j`` has ``sizes[j] >= 3`` vertices (the origin included) on a
    convex cap inside its own quadrant-sized sector.
    """
    if not 1 <= len(sizes) <= 4 or any(s < 3 for s in sizes):
        raise ContractViolation("need one to four circles with at least 3 vertices each")
    axes = [((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0))]
    verts = [(Fraction(0), Fraction(0))]
    sims = []
    for (u, w), s in zip(axes, sizes):
        k = s - 1
        ids = []
        for i in range(k):
            t = Fraction(2 * i - (k - 1), 2)  # symmetric offsets
            h = Fraction(k * k) - t * t
            ids.append(len(verts))
            verts.append((h * u[0] + t * w[0], h * u[1] + t * w[1]))
        cyc = [0] + ids
        sims.extend((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    return GeomComplex(2, verts, sims)


# verification

def _bbox(points: Sequence[tuple]) -> tuple:
    return tuple(min(p[d] for p in points) for d in range(len(points[0]))), \
        tuple(max(p[d] for p in points) for d in range(len(points[0])))


def _bad_intersection(P: Sequence[tuple], sP: Sequence[int], Q: Sequence[tuple], sQ: Sequence[int]) -> bool:
    shared = set(sP) & set(sQ)
    D = len(P[0])
    rows = [[p[d] for p in P] + [-q[d] for q in Q] for d in range(D)]
    rows.append([1] * len(P) + [0] * len(Q))
    rows.append([0] * len(P) + [1] * len(Q))
    c = [int(v not in shared) for v in sP] + [int(v not in shared) for v in sQ]
    res = lp_maximize(c, rows, [0] * D + [1, 1])
    return res is not None and res[0] is not None and res[0] > 0


def verify_embedding(C: GeomComplex) -> tuple:
    """(True, None), or (False, (i, j)) for the first pair of maximal simplices
    (by index) whose intersection is not their common face."""
    sims = C.simplices
    boxes = [_bbox([C.vertices[v] for v in s]) for s in sims]
    D = C.ambient_dim
    for i in range(len(sims)):
        lo1, hi1 = boxes[i]
        for j in range(i + 1, len(sims)):
            lo2, hi2 = boxes[j]
            if any(hi1[d] < lo2[d] or hi2[d] < lo1[d] for d in range(D)):
                continue
            if _bad_intersection([C.vertices[v] for v in sims[i]], sims[i],
                                 [C.vertices[v] for v in sims[j]], sims[j]):
                return False, (sims[i], sims[j])
    return True, None


# text format

def _parse_rational(tok: str, line: int, col: int) -> Fraction:
    try:
        if "/" in tok:
            p, q = tok.split("/")
            if not q or int(q) == 0:
                raise ValueError
            return Fraction(int(p), int(q))
        return Fraction(int(tok))
    except ValueError:
        raise ParseError(f"bad rational {tok!r}", line, col) from None


def parse_geometry(text: str) -> dict:
    """Parse geometry text into blocks.

    A file is one anonymous complex, or several blocks opened by
    ``complex NAME``.  Inside a block: ``dim D``, ``v x1 ... xD``,
    ``s i j ...`` and ``map i->j``.  Returns ``{name: {"dim", "v", "s"},
    "map": {i: j}}``; the anonymous block is named ``""``.
    """
    blocks: dict = {}
    cur = ""
    mapping: dict = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks, col = [], 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((tok, col + 1))
            col += len(tok)
        if not toks:
            continue
        key, kc = toks[0]
        args = toks[1:]
        blk = blocks.setdefault(cur, {"dim": None, "v": [], "s": [], "line": ln})
        if key == "complex":
            if len(args) != 1:
                raise ParseError("expected 'complex NAME'", ln, kc)
            cur = args[0][0]
            if cur in blocks and blocks[cur]["v"] + blocks[cur]["s"]:
                raise ParseError(f"block {cur!r} given twice", ln, args[0][1])
            blocks.setdefault(cur, {"dim": None, "v": [], "s": [], "line": ln})
        elif key == "dim":
            if len(args) != 1 or not args[0][0].isdigit():
                raise ParseError("expected 'dim D'", ln, kc)
            blk["dim"] = int(args[0][0])
        elif key == "v":
            if blk["dim"] is None:
                raise ParseError("vertex before 'dim'", ln, kc)
            if len(args) != blk["dim"]:
                raise ParseError(f"vertex needs {blk['dim']} coordinates, got {len(args)}", ln, kc)
            blk["v"].append(tuple(_parse_rational(t, ln, c) for t, c in args))
        elif key == "s":
            if not args:
                raise ParseError("empty simplex", ln, kc)
            s = []
            for t, c in args:
                if not t.isdigit():
                    raise ParseError(f"bad vertex index {t!r}", ln, c)
                s.append(int(t))
            if len(set(s)) != len(s):
                raise ParseError("repeated vertex in simplex", ln, kc)
            blk["s"].append(tuple(s))
        elif key == "map":
            spec = "".join(t for t, _ in args)
            parts = spec.split("->")
            if len(parts) != 2 or not parts[0].isdigit() or not parts[1].isdigit():
                raise ParseError("expected 'map i->j'", ln, kc)
            i, j = int(parts[0]), int(parts[1])
            if i in mapping:
                raise ParseError(f"vertex {i} mapped twice", ln, kc)
            mapping[i] = j
        else:
            raise ParseError(f"unknown keyword {key!r}", ln, kc)
    out = {k: v for k, v in blocks.items() if v["dim"] is not None or v["v"] or v["s"]}
    out["map"] = mapping
    return out


def _geom(block: dict, name: str) -> GeomComplex:
    if block.get("dim") is None:
        raise ParseError(f"block {name!r} has no 'dim'", block.get("line"), 1)
    for s in block["s"]:
        if max(s) >= len(block["v"]):
            raise ParseError(f"simplex {s} in block {name!r} refers to a missing vertex", block.get("line"), 1)
    try:
        return GeomComplex(block["dim"], block["v"], block["s"])
    except ContractViolation as exc:
        raise ParseError(f"block {name!r}: {exc}", block.get("line"), 1) from None


def geometry_complex(parsed: dict, name: str = "") -> GeomComplex:
    if name not in parsed:
        raise ParseError(f"missing block {name!r}" if name else "no complex given", 1, 1)
    return _geom(parsed[name], name)


def build_from_geometry(parsed: dict) -> GeomComplex:
    """Double cylinder (blocks B, A, Y) or cone (blocks A with coordinates, Y)."""
    if "Y" not in parsed or "A" not in parsed:
        raise ParseError("blocks 'A' and 'Y' are required", 1, 1)
    Y = geometry_complex(parsed, "Y")
    if "B" in parsed:
        B = geometry_complex(parsed, "B")
        A = SimplicialComplex(parsed["A"]["s"])
        try:
            f = SimplicialMap(A, Y.complex, parsed["map"])
        except ContractViolation as exc:
            raise ParseError(str(exc), parsed["A"]["line"], 1) from None
        return embed_double_cylinder(B, A, Y, f)
    A = geometry_complex(parsed, "A")
    try:
        f = SimplicialMap(A.complex, Y.complex, parsed["map"])
    except ContractViolation as exc:
        raise ParseError(str(exc), parsed["A"]["line"], 1) from None
    return embed_cone(A, Y, f)


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_geometry(C: GeomComplex, name: Optional[str] = None) -> str:
    lines = [f"complex {name}"] if name else []
    lines.append(f"dim {C.ambient_dim}")
    lines += ["v " + " ".join(_fmt(x) for x in v) for v in C.vertices]
    lines += ["s " + " ".join(str(i) for i in s) for s in C.simplices]
    return "\n".join(lines) + "\n"
