"""Structural checks shared by the cdga, massey and acceptance tests."""

from fractions import Fraction


def _sub(x, y):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) - v
        if not out[k]:
            del out[k]
    return out


def _scale(c, x):
    return {k: c * v for k, v in x.items() if c * v}


def monomials(alg, upto):
    return [(n, {m: Fraction(1)}) for n in range(1, upto + 1) for m in alg.basis(n)]


def d_squared_zero(alg):
    for n in range(alg.cutoff - 1):
        D1, D2 = alg.differential(n), alg.differential(n + 1)
        if D1.ncols and D2.nrows and any(any(r) for r in (D2 @ D1).rows):
            return False
    return True


def leibniz(alg):
    mons = monomials(alg, alg.cutoff - 2)
    for p, a in mons:
        for q, b in mons:
            if p + q > alg.cutoff - 1:
                continue
            lhs = alg.d(alg.mul(a, b))
            rhs = alg.mul(alg.d(a), b)
            for k, v in alg.mul(a, alg.d(b)).items():
                rhs[k] = rhs.get(k, 0) + (-1) ** p * v
            if _sub(lhs, {k: v for k, v in rhs.items() if v}):
                return False
    return True


def graded_commutative(alg):
    mons = monomials(alg, alg.cutoff - 1)
    for p, a in mons:
        for q, b in mons:
            if p + q <= alg.cutoff and _sub(alg.mul(a, b), _scale((-1) ** (p * q), alg.mul(b, a))):
                return False
    return True


def associative(alg):
    mons = monomials(alg, alg.cutoff - 2)
    for p, a in mons:
        for q, b in mons:
            if p + q > alg.cutoff - 1:
                continue
            ab = alg.mul(a, b)
            for r, c in mons:
                if p + q + r <= alg.cutoff and _sub(alg.mul(ab, c), alg.mul(a, alg.mul(b, c))):
                    return False
    return True


def all_structure(alg):
    return {"d2": d_squared_zero(alg), "leibniz": leibniz(alg), "commutative": graded_commutative(alg),
            "associative": associative(alg)}
