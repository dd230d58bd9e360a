"""Small embedding instances shared by the PL tests and the acceptance run."""


from nonformal.plembed import GeomComplex, SimplicialComplex, SimplicialMap, circle_wedge


def double_cylinders():
    """(name, B, A, Y, f) with A a subcomplex of B."""
    out = []
    # B a square away from the origin, A its left edge, Y a segment in R^1
    B = GeomComplex(2, [(1, 0), (2, 0), (2, 1), (1, 1)], [(0, 1, 2), (0, 2, 3)])
    A = SimplicialComplex([(0, 3)])
    Y = GeomComplex(1, [(1,), (2,)], [(0, 1)])
    out.append(("square-segment", B, A, Y, SimplicialMap(A, Y.complex, {0: 0, 3: 1})))
    # origin in A: two edges out of the origin, f(0) the closest vertex of Y
    B = GeomComplex(2, [(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])
    A = SimplicialComplex([(0, 1), (0, 2)])
    Y = GeomComplex(1, [(1,), (2,)], [(0, 1)])
    out.append(("origin-triangle", B, A, Y, SimplicialMap(A, Y.complex, {0: 0, 1: 1, 2: 1})))
    # a subdivided edge wrapped onto two sides of a triangle boundary
    B = GeomComplex(2, [(1, -1), (1, 0), (1, 1), (2, -1), (2, 1)], [(0, 1, 3), (1, 3, 4), (1, 2, 4)])
    A = SimplicialComplex([(0, 1), (1, 2)])
    Y = GeomComplex(2, [(1, 0), (3, 0), (2, 2)], [(0, 1), (1, 2), (0, 2)])
    out.append(("disc-triangle", B, A, Y, SimplicialMap(A, Y.complex, {0: 0, 1: 1, 2: 2})))
    return out


def cones():
    """(name, A, Y, f) with A a wedge of circles through the origin."""
    out = []
    A = circle_wedge([3])
    Y = GeomComplex(1, [(1,)], [(0,)])
    out.append(("circle-point", A, Y, SimplicialMap(A.complex, Y.complex, {v: 0 for v in A.complex.vertices})))
    A = circle_wedge([3, 3])
    Y = GeomComplex(2, [(1, 0), (3, 0), (2, 2)], [(0, 1), (1, 2), (0, 2)])
    out.append(("two-circles-triangle", A, Y, SimplicialMap(A.complex, Y.complex, {0: 0, 1: 1, 2: 2, 3: 1, 4: 2})))
    A = circle_wedge([4])
    Y = GeomComplex(2, [(1, 0), (3, 0), (2, 2)], [(0, 1), (1, 2), (0, 2)])
    out.append(("degree-one", A, Y, SimplicialMap(A.complex, Y.complex, {0: 0, 1: 1, 2: 2, 3: 2})))
    return out


def crossing():
    return GeomComplex(2, [(0, 0), (2, 2), (0, 2), (2, 0)], [(0, 1), (2, 3)])


