"""Semilinear fractional maps on PG(1,q) and the group lattice.

An element is a pair (A, j): a 2x2 invertible matrix over GF(q) up to
scalars together with an automorphism exponent j, acting as

    t  |->  (a * t^(p^j) + b) / (c * t^(p^j) + d)

with the usual limit rules at infinity.  The four groups of interest are
addressed by the ids "pgl", "psl", "m" (the twisted sharply 3-transitive
group, defined when m is even) and "pgammal":

    pgl      j = 0
    psl      j = 0 and det a square
    m        j = 0 with det square, or j = m/2 with det a non-square
    pgammal  everything

``rho`` embeds these maps into semilinear 3x3 transformations of PG(2,q)
that fix the conic of the geometry module, with (A, j) acting on points
as v |-> rho(A) . v^(p^j) and on lines through the inverse transpose.
"""

import numpy as np

from .geometry import INFINITY
from .gf import FieldElement

GROUPS = ("pgl", "psl", "m", "pgammal")


class InvalidGroupError(ValueError):
    """Raised for group ids that do not exist over the given field."""


def normalize_group(gid):
    g = str(gid).lower().replace("(", "").replace(")", "")
    aliases = {"pgl": "pgl", "psl": "psl", "m": "m", "pgammal": "pgammal", "pgamma": "pgammal"}
    if g not in aliases:
        raise InvalidGroupError(f"unknown group {gid!r}; choose from {GROUPS}")
    return aliases[g]


def check_group_defined(fld, gid):
    gid = normalize_group(gid)
    if gid == "m" and fld.m % 2 != 0:
        raise InvalidGroupError(
            f"M(q) needs q to be an even power of an odd prime; q={fld.q} has m={fld.m}"
        )
    return gid


class Moebius:
    """A semilinear fractional map, stored in canonical scalar form."""

    __slots__ = ("field", "a", "b", "c", "d", "j")

    def __init__(self, fld, a, b, c, d, j=0):
        def code(v):
            if isinstance(v, FieldElement):
                if v.field is not fld:
                    raise ValueError("matrix entry from a different field")
                return v.val
            v = int(v)
            if not 0 <= v < fld.q:
                raise ValueError("matrix entries are field codes 0..q-1 or FieldElement")
            return v

        a, b, c, d = code(a), code(b), code(c), code(d)
        det = fld.sub(fld.mul(a, d), fld.mul(b, c))
        if det == 0:
            raise ValueError("singular matrix does not define a map")
        if not 0 <= j < fld.m:
            raise ValueError(f"automorphism exponent must be in 0..{fld.m - 1}")
        for v in (a, b, c, d):
            if v != 0:
                s = fld.inv(v)
                break
        self.field = fld
        self.a = fld.mul(s, a)
        self.b = fld.mul(s, b)
        self.c = fld.mul(s, c)
        self.d = fld.mul(s, d)
        self.j = int(j)

    @classmethod
    def identity(cls, fld):
        return cls(fld, 1, 0, 0, 1, 0)

    @property
    def det(self):
        f = self.field
        return f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))

    @property
    def det_is_square(self):
        return self.field.is_square(self.det)

    def is_identity(self):
        return self.j == 0 and (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    # -- action ---------------------------------------------------------------

    def apply_pos(self, pos):
        """Act on a PG(1,q) position (engine path)."""
        f = self.field
        q = f.q
        if pos == q:
            if self.c == 0:
                return q
            return int(f.RANK[f.div(self.a, self.c)])
        x = f.frobenius(int(f.BY_RANK[pos]), self.j)
        den = f.add(f.mul(self.c, x), self.d)
        if den == 0:
            return q
        num = f.add(f.mul(self.a, x), self.b)
        return int(f.RANK[f.div(num, den)])

    def __call__(self, pt):
        """Act on a point given as FieldElement or INFINITY."""
        f = self.field
        if pt is INFINITY:
            if self.c == 0:
                return INFINITY
            return f.element_from_code(f.div(self.a, self.c))
        if isinstance(pt, FieldElement):
            x = f.frobenius(pt.val, self.j)
        else:
            x = f.frobenius(f(pt).val, self.j)
        den = f.add(f.mul(self.c, x), self.d)
        if den == 0:
            return INFINITY
        return f.element_from_code(f.div(f.add(f.mul(self.a, x), self.b), den))

    # -- group law ------------------------------------------------------------

    def __mul__(self, other):
        """Composition: (g * h)(x) = g(h(x))."""
        if not isinstance(other, Moebius):
            return NotImplemented
        f = self.field
        if other.field is not f:
            raise ValueError("maps over different fields")
        jf = self.j
        oa = f.frobenius(other.a, jf)
        ob = f.frobenius(other.b, jf)
        oc = f.frobenius(other.c, jf)
        od = f.frobenius(other.d, jf)
        return Moebius(
            f,
            f.add(f.mul(self.a, oa), f.mul(self.b, oc)),
            f.add(f.mul(self.a, ob), f.mul(self.b, od)),
            f.add(f.mul(self.c, oa), f.mul(self.d, oc)),
            f.add(f.mul(self.c, ob), f.mul(self.d, od)),
            (self.j + other.j) % f.m,
        )

    def inverse(self):
        f = self.field
        jinv = (-self.j) % f.m
        a = f.frobenius(self.d, jinv)
        b = f.frobenius(f.neg(self.b), jinv)
        c = f.frobenius(f.neg(self.c), jinv)
        d = f.frobenius(self.a, jinv)
        return Moebius(f, a, b, c, d, jinv)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return (
            self.field is other.field
            and self.j == other.j
            and (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        )

    def __hash__(self):
        return hash((id(self.field), self.j, self.a, self.b, self.c, self.d))

    def key(self):
        """Deterministic sort key in the canonical element order."""
        r = self.field.RANK
        return (self.j, int(r[self.a]), int(r[self.b]), int(r[self.c]), int(r[self.d]))

    def __repr__(self):
        f = self.field
        lam = "t" if self.j == 0 else f"t^(p^{self.j})"

        def s(v):
            return repr(f.element_from_code(v))

        return f"({s(self.a)}*{lam} + {s(self.b)}) / ({s(self.c)}*{lam} + {s(self.d)})"

    # -- embedding into PGammaL(3,q) -------------------------------------------

    def rho(self):
        """The induced semilinear transformation of PG(2,q)."""
        f = self.field
        a, b, c, d = self.a, self.b, self.c, self.d
        two = f.add(1, 1)
        M = (
            (f.mul(a, a), f.mul(two, f.mul(a, b)), f.mul(b, b)),
            (f.mul(a, c), f.add(f.mul(a, d), f.mul(b, c)), f.mul(b, d)),
            (f.mul(c, c), f.mul(two, f.mul(c, d)), f.mul(d, d)),
        )
        return Semilinear3(f, M, self.j)


class Semilinear3:
    """A 3x3 semilinear transformation of PG(2,q), up to scalars."""

    __slots__ = ("field", "matrix", "j")

    def __init__(self, fld, matrix, j=0):
        flat = [int(v) for row in matrix for v in row]
        for v in flat:
            if v != 0:
                s = fld.inv(v)
                break
        else:
            raise ValueError("zero matrix")
        flat = [fld.mul(s, v) for v in flat]
        self.field = fld
        self.matrix = (tuple(flat[0:3]), tuple(flat[3:6]), tuple(flat[6:9]))
        self.j = int(j)

    @property
    def det(self):
        f = self.field
        (a, b, c), (d, e, g), (h, i, k) = self.matrix
        t1 = f.mul(a, f.sub(f.mul(e, k), f.mul(g, i)))
        t2 = f.mul(b, f.sub(f.mul(d, k), f.mul(g, h)))
        t3 = f.mul(c, f.sub(f.mul(d, i), f.mul(e, h)))
        return f.add(f.sub(t1, t2), t3)

    def cofactor_matrix(self):
        """The matrix of cofactors; its transpose is the adjugate."""
        f = self.field
        m = self.matrix

        def minor(r, s):
            rows = [i for i in range(3) if i != r]
            cols = [j for j in range(3) if j != s]
            v = f.sub(
                f.mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]]),
                f.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]),
            )
            return v if (r + s) % 2 == 0 else f.neg(v)

        return tuple(tuple(minor(r, s) for s in range(3)) for r in range(3))

    def _apply(self, mat, v, plane):
        f = self.field
        w = tuple(f.frobenius(int(c), self.j) for c in v)
        out = []
        for row in mat:
            s = 0
            for rc, wc in zip(row, w):
                s = f.add(s, f.mul(rc, wc))
            out.append(s)
        return plane.normalize(out)

    def apply_point(self, P, plane):
        return self._apply(self.matrix, P, plane)

    def apply_line(self, l, plane):
        """Image of a line; dual coordinates move by the inverse transpose."""
        return self._apply(self.cofactor_matrix(), l, plane)

    def __eq__(self, other):
        if not isinstance(other, Semilinear3):
            return NotImplemented
        return self.field is other.field and self.j == other.j and self.matrix == other.matrix

    def __hash__(self):
        return hash((id(self.field), self.j, self.matrix))


def conic_param(plane, pt):
    """The bijection PG(1,q) -> conic, f(t) = (t^2 : t : 1), f(oo) = (1:0:0)."""
    return plane.conic_point(plane.pg1.pos(pt))


# -- membership and standard subsets -------------------------------------------


def membership(g, gid):
    """Whether the map g lies in the named subgroup of PGammaL(2,q)."""
    gid = check_group_defined(g.field, gid)
    if gid == "pgammal":
        return True
    if gid == "pgl":
        return g.j == 0
    if gid == "psl":
        return g.j == 0 and g.det_is_square
    half = g.field.m // 2
    return (g.j == 0 and g.det_is_square) or (g.j == half and not g.det_is_square)


def generators(fld, gid):
    """A small generating set; every element passes membership(., gid)."""
    gid = check_group_defined(fld, gid)
    g = fld.primitive_element()
    shift = Moebius(fld, 1, 1, 0, 1)
    if gid == "pgl":
        return [shift, Moebius(fld, g, 0, 0, 1), Moebius(fld, 0, 1, 1, 0)]
    if gid == "psl":
        g2 = fld.mul(g, g)
        return [shift, Moebius(fld, g2, 0, 0, 1), Moebius(fld, 0, fld.neg(1), 1, 0)]
    if gid == "m":
        return generators(fld, "psl") + [Moebius(fld, g, 0, 0, 1, j=fld.m // 2)]
    gens = generators(fld, "pgl")
    if fld.m > 1:
        gens.append(Moebius(fld, 1, 0, 0, 1, j=1))
    return gens


def base_pair_stabilizer(fld, gid):
    """The full setwise stabilizer of {0, oo} in the named group.

    These are exactly the maps t -> e*t^(p^j) and t -> e/t^(p^j) whose
    parameters satisfy the group's membership predicate.
    """
    gid = check_group_defined(fld, gid)
    if gid in ("pgl", "psl"):
        js = [0]
    elif gid == "m":
        js = [0, fld.m // 2]
    else:
        js = list(range(fld.m))
    out = []
    for j in js:
        for e in fld.elements():
            if e == 0:
                continue
            for cand in (Moebius(fld, e, 0, 0, 1, j), Moebius(fld, 0, e, 1, 0, j)):
                if membership(cand, gid):
                    out.append(cand)
    return out


def transporter_to_base(fld, pair, gid):
    """A deterministic element of the group sending the 2-subset to {0, oo}.

    `pair` holds two distinct PG(1,q) positions.  The fractional map
    t -> (t - alpha)/(t - beta) lands the subset on {0, oo}; when the
    group needs a square determinant the canonical non-square scaling
    t -> z*t is composed in front.
    """
    gid = check_group_defined(fld, gid)
    q = fld.q
    i, jpos = pair
    if i == jpos:
        raise ValueError("a transporter needs a genuine 2-subset")
    alpha = None if i == q else int(fld.BY_RANK[i])
    beta = None if jpos == q else int(fld.BY_RANK[jpos])
    if alpha is None:
        h = Moebius(fld, 0, 1, 1, fld.neg(beta))
    elif beta is None:
        h = Moebius(fld, 1, fld.neg(alpha), 0, 1)
    else:
        h = Moebius(fld, 1, fld.neg(alpha), 1, fld.neg(beta))
    if gid in ("psl", "m") and not h.det_is_square:
        h = Moebius(fld, fld.fixed_nonsquare(), 0, 0, 1) * h
    return h


# -- bulk permutation builders ---------------------------------------------------


def point_perm(g):
    """Permutation array of g on PG(1,q) positions (length q+1)."""
    f = g.field
    q = f.q
    x = f.FROB[g.j][f.BY_RANK]
    num = f.ADD[f.MUL[g.a, x], g.b]
    den = f.ADD[f.MUL[g.c, x], g.d]
    out = np.empty(q + 1, dtype=np.int32)
    finite = den != 0
    vals = f.MUL[num, f.INV[den]]
    out[:q][finite] = f.RANK[vals[finite]]
    out[:q][~finite] = q
    out[q] = q if g.c == 0 else f.RANK[f.div(g.a, g.c)]
    return out


def _coords_transform(fld, mat, j, coords):
    """Apply a 3x3 matrix after entrywise Frobenius to rows of `coords`."""
    C = fld.FROB[j][coords]
    cols = []
    for row in mat:
        s = fld.MUL[row[0], C[:, 0]]
        s = fld.ADD[s, fld.MUL[row[1], C[:, 1]]]
        s = fld.ADD[s, fld.MUL[row[2], C[:, 2]]]
        cols.append(s)
    out = np.stack(cols, axis=1)
    lead = np.argmax(out != 0, axis=1)
    scale = fld.INV[out[np.arange(len(out)), lead]]
    return fld.MUL[out, scale[:, None]]


def domain_perm(g, dom):
    """Permutation array of the map g on an enumerated domain."""
    if dom.kind == "pairs":
        pp = point_perm(g)
        a = pp[dom.plane.pg1.pairs[:, 0]]
        b = pp[dom.plane.pg1.pairs[:, 1]]
        return dom.plane.pg1.pair_table[np.minimum(a, b), np.maximum(a, b)].astype(np.int32)
    r = g.rho()
    if dom.kind == "hyp-points":
        mat = r.matrix
    else:
        mat = r.cofactor_matrix()
    moved = _coords_transform(dom.field, mat, r.j, dom.coords)
    return dom.index_of_coords(moved).astype(np.int32)


# -- whole-group enumeration (small q) --------------------------------------------


def group_order(fld, gid):
    """Order by the standard formulas (closure-checked in the test suite)."""
    gid = check_group_defined(fld, gid)
    base = fld.q**3 - fld.q
    if gid == "psl":
        return base // 2
    if gid == "pgammal":
        return base * fld.m
    return base


def enumerate_group(fld, gid, max_order=2_000_000):
    """All elements by closure under composition from the generators."""
    gid = check_group_defined(fld, gid)
    if group_order(fld, gid) > max_order:
        raise ValueError("group too large to enumerate explicitly")
    gens = generators(fld, gid)
    seen = {Moebius.identity(fld)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for s in gens:
                e = s * h
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return sorted(seen, key=Moebius.key)
