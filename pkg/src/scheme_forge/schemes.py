"""Association-scheme machinery over enumerated domains.

A Scheme wraps a dense n x n relation matrix of small class indices:
entry (x, y) is the index of the relation containing the ordered pair,
0 being the diagonal.  Construction re-verifies the scheme axioms: the
diagonal is class 0 and nothing else is, transposes of classes are
classes, and the intersection numbers p^k_ij are representative
independent (sampled by default, exhaustively on request).

Two independent construction routes are provided for group actions: a
generic orbital breadth-first search over ordered pairs, and the fast
path through base-pair stabilizer orbits plus explicit transporters.
Both number classes by their least ordered-pair representative in
row-major order, so equal actions give byte-identical matrices.
"""

import numpy as np

from . import moebius as mo

MAX_DEFAULT_Q = 127


class NotTransitiveError(RuntimeError):
    """The generated group does not act transitively on the domain."""


class NotASchemeError(RuntimeError):
    """A relation matrix violates the association scheme axioms."""


class UnsupportedDomainError(ValueError):
    """The stabilizer fast path only covers the pair-indexed domains."""


class DomainSizeError(RuntimeError):
    """Guard against accidentally huge dense relation matrices."""


def _guard_size(dom, allow_large):
    if dom.field.q > MAX_DEFAULT_Q and not allow_large:
        raise DomainSizeError(
            f"q={dom.field.q} gives a {dom.n}x{dom.n} relation matrix; "
            "pass allow_large=True (CLI: --allow-large) to proceed"
        )


def _class_dtype(nclasses):
    return np.uint8 if nclasses <= 255 else np.uint16


def _renumber_first_occurrence(raw):
    """Renumber class ids by first appearance in row-major order."""
    flat = raw.ravel()
    uniq, first = np.unique(flat, return_index=True)
    order = np.argsort(first, kind="stable")
    remap = np.empty(int(uniq.max()) + 1, dtype=_class_dtype(len(uniq)))
    remap[uniq[order]] = np.arange(len(uniq), dtype=remap.dtype)
    return remap[raw]


class Scheme:
    """An association scheme on an enumerated domain."""

    def __init__(self, relation_matrix, domain=None, labels=None, check=True, sample=10):
        M = np.ascontiguousarray(relation_matrix)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("relation matrix must be square")
        self.relation_matrix = M
        self.n = M.shape[0]
        self.d = int(M.max())
        self.domain = domain
        self.labels = labels
        self._p_tensor = None
        self._p_sample = 0

        flat = M.ravel()
        uniq, first = np.unique(flat, return_index=True)
        if len(uniq) != self.d + 1 or uniq[0] != 0:
            raise NotASchemeError("class indices must be 0..d with none missing")
        self.class_reps = [divmod(int(i), self.n) for i in first]

        diag = np.diagonal(M)
        if (diag != 0).any():
            raise NotASchemeError("the diagonal must be relation 0")
        if int((flat == 0).sum()) != self.n:
            raise NotASchemeError("relation 0 must be exactly the diagonal")

        tmap = np.empty(self.d + 1, dtype=np.int32)
        for k, (x, y) in enumerate(self.class_reps):
            tmap[k] = M[y, x]
        if check and not np.array_equal(tmap[M], M.T):
            raise NotASchemeError("classes are not closed under transposition")
        self.transpose_map = tmap

        counts = np.bincount(flat, minlength=self.d + 1)
        if (counts % self.n != 0).any():
            raise NotASchemeError("class sizes are not multiples of n")
        self.valencies = (counts // self.n).astype(np.int64)
        if check:
            for x in range(0, self.n, max(1, self.n // 8)):
                row = np.bincount(M[x], minlength=self.d + 1)
                if not np.array_equal(row, self.valencies):
                    raise NotASchemeError(f"row {x} has non-constant valencies")
            self.p_tensor(sample=sample)

    # -- intersection numbers --------------------------------------------------

    def p_tensor(self, sample=10):
        """The tensor p[k, i, j] of intersection numbers.

        Each p^k_ij is counted from the least representative pair of
        class k; constancy is re-verified over `sample` further
        representatives (one per row) and a NotASchemeError is raised on
        any disagreement.
        """
        if self._p_tensor is not None and self._p_sample >= sample:
            return self._p_tensor
        M = self.relation_matrix
        d1 = self.d + 1
        P = np.zeros((d1, d1, d1), dtype=np.int64)
        for k in range(d1):
            hist = None
            checked = 0
            for x in range(self.n):
                y = int(np.argmax(M[x] == k))
                if M[x, y] != k:
                    raise NotASchemeError(f"class {k} missing from row {x}")
                h = np.bincount(
                    M[x, :].astype(np.int64) * d1 + M[:, y], minlength=d1 * d1
                ).reshape(d1, d1)
                if hist is None:
                    hist = h
                elif not np.array_equal(hist, h):
                    raise NotASchemeError(
                        f"intersection numbers of class {k} depend on the representative"
                    )
                checked += 1
                if checked > sample:
                    break
            P[k] = hist
        self._p_tensor = P
        self._p_sample = sample
        return P

    def verify_exhaustive(self):
        """Check p^k_ij constancy over every ordered pair (matrix products)."""
        M = self.relation_matrix
        P = self.p_tensor()
        d1 = self.d + 1
        B = [(M == i).astype(np.int64) for i in range(d1)]
        for i in range(d1):
            for j in range(d1):
                prod = B[i] @ B[j]
                if not np.array_equal(prod, P[:, i, j][M]):
                    raise NotASchemeError(
                        f"p^k_({i},{j}) is not constant over all representatives"
                    )
        return True

    # -- predicates --------------------------------------------------------------

    def is_symmetric(self):
        return bool((self.transpose_map == np.arange(self.d + 1)).all())

    def is_commutative(self):
        P = self.p_tensor()
        return bool(np.array_equal(P, P.transpose(0, 2, 1)))

    def relation(self, x, y):
        return int(self.relation_matrix[x, y])

    def label_text(self):
        if self.labels is None:
            return [str(k) for k in range(self.d + 1)]
        return [lab.text(self.domain.field) for lab in self.labels]

    def __repr__(self):
        kind = self.domain.kind if self.domain is not None else "?"
        return f"Scheme(n={self.n}, d={self.d}, domain={kind})"


# -- construction from group actions ------------------------------------------------


def _transitive(perms, n):
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = []
        for s in perms:
            cand = s[frontier]
            cand = cand[~seen[cand]]
            if cand.size:
                cand = np.unique(cand)
                seen[cand] = True
                nxt.append(cand)
        frontier = np.concatenate(nxt) if nxt else np.empty(0, dtype=np.int64)
    return bool(seen.all())


def orbital_scheme(perms, dom, check=True, allow_large=False, labels=None):
    """Scheme of the diagonal action on ordered pairs, by plain BFS.

    `perms` are permutation arrays of the domain for a generating set of
    the acting group, which must be transitive on the domain.
    """
    _guard_size(dom, allow_large)
    n = dom.n
    perms = [np.asarray(p, dtype=np.int64) for p in perms]
    if not _transitive(perms, n):
        raise NotTransitiveError("the generated group is not transitive on the domain")
    raw = np.full(n * n, -1, dtype=np.int32)
    cls = 0
    for seed in range(n * n):
        if raw[seed] >= 0:
            continue
        raw[seed] = cls
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            xs, ys = np.divmod(frontier, n)
            nxt = []
            for s in perms:
                cand = s[xs] * n + s[ys]
                cand = cand[raw[cand] < 0]
                if cand.size:
                    cand = np.unique(cand)
                    raw[cand] = cls
                    nxt.append(cand)
            frontier = np.concatenate(nxt) if nxt else np.empty(0, dtype=np.int64)
        cls += 1
    M = raw.reshape(n, n).astype(_class_dtype(cls))
    return Scheme(M, domain=dom, labels=labels, check=check)


def orbital_scheme_via_stabilizer(fld, gid, dom, check=True, allow_large=False):
    """Fast path: stabilizer orbits at the base pair plus transporters.

    Produces the identical relation matrix to ``orbital_scheme`` for the
    same action (cross-validated in the test suite for small q).
    """
    _guard_size(dom, allow_large)
    gid = mo.check_group_defined(fld, gid)
    if dom.base_index is None:
        raise UnsupportedDomainError(
            f"domain kind {dom.kind!r} has no distinguished base pair; "
            "use the generic orbital construction"
        )
    n = dom.n
    base = dom.base_index
    stab_perms = [mo.domain_perm(s, dom) for s in mo.base_pair_stabilizer(fld, gid)]

    lab = np.full(n, -1, dtype=np.int32)
    nxt_label = 0
    for i0 in range(n):
        if lab[i0] >= 0:
            continue
        lab[i0] = nxt_label
        frontier = np.array([i0], dtype=np.int64)
        while frontier.size:
            nxt = []
            for s in stab_perms:
                cand = s[frontier]
                cand = cand[lab[cand] < 0]
                if cand.size:
                    cand = np.unique(cand)
                    lab[cand] = nxt_label
                    nxt.append(cand)
            frontier = np.concatenate(nxt) if nxt else np.empty(0, dtype=np.int64)
        nxt_label += 1
    if int((lab == lab[base]).sum()) != 1:
        raise RuntimeError("stabilizer does not fix the base pair alone")

    pairs = dom.plane.pg1.pairs
    raw = np.empty((n, n), dtype=np.int32)
    for x in range(n):
        g = mo.transporter_to_base(fld, tuple(int(v) for v in pairs[x]), gid)
        sigma = mo.domain_perm(g, dom)
        if sigma[x] != base:
            raise RuntimeError("transporter failed to reach the base element")
        raw[x] = lab[sigma]
    M = _renumber_first_occurrence(raw)
    return Scheme(M, domain=dom, check=check)


def point_perm_to_pair_perm(point_perm, pg1):
    """Lift a permutation of PG(1,q) positions to the 2-subset domain."""
    a = point_perm[pg1.pairs[:, 0]]
    b = point_perm[pg1.pairs[:, 1]]
    return pg1.pair_table[np.minimum(a, b), np.maximum(a, b)].astype(np.int64)


def triangular_scheme(dom, check=True):
    """T(n): the symmetric-group orbital scheme on the pairs domain."""
    npts = dom.plane.pg1.n_points
    swap = np.arange(npts)
    swap[[0, 1]] = [1, 0]
    cycle = np.roll(np.arange(npts), -1)
    perms = [point_perm_to_pair_perm(p, dom.plane.pg1) for p in (swap, cycle)]
    return orbital_scheme(perms, dom, check=check)


def group_orbital_scheme(fld, gid, dom, check=True, allow_large=False):
    """Generic-path scheme of one of the named groups on a domain."""
    perms = [mo.domain_perm(g, dom) for g in mo.generators(fld, gid)]
    return orbital_scheme(perms, dom, check=check, allow_large=allow_large)


# -- comparisons and fusions -----------------------------------------------------------


def partition_bijection(A, B):
    """Class bijection if A and B define the same pair partition, else None."""
    MA = A.relation_matrix
    MB = B.relation_matrix
    if MA.shape != MB.shape or A.d != B.d:
        return None
    code = MA.ravel().astype(np.int64) * (B.d + 1) + MB.ravel()
    uniq = np.unique(code)
    if len(uniq) != A.d + 1:
        return None
    amap = uniq // (B.d + 1)
    bmap = uniq % (B.d + 1)
    if len(np.unique(amap)) != A.d + 1 or len(np.unique(bmap)) != B.d + 1:
        return None
    out = np.empty(A.d + 1, dtype=np.int64)
    out[amap] = bmap
    return out


def fusion_map(coarse, fine):
    """Map fine classes onto coarse classes, or None if not a refinement."""
    if coarse.n != fine.n:
        return None
    part = np.empty(fine.d + 1, dtype=np.int64)
    for k, (x, y) in enumerate(fine.class_reps):
        part[k] = coarse.relation_matrix[x, y]
    if not np.array_equal(part[fine.relation_matrix], coarse.relation_matrix):
        return None
    return part


def is_fusion(coarse, fine, partition):
    """Whether `partition` (fine class -> coarse class) realizes coarse
    as a fusion scheme of fine: admissible and reproducing the coarse
    relations exactly.  The coarse scheme's own axioms are re-verified.
    """
    part = np.asarray(partition, dtype=np.int64)
    if part.shape != (fine.d + 1,):
        raise ValueError("partition must assign every fine class")
    if part[0] != 0 or int((part == 0).sum()) != 1:
        return False
    blocks = {}
    for alpha, c in enumerate(part):
        blocks.setdefault(int(c), set()).add(alpha)
    tposed = {c: {int(fine.transpose_map[a]) for a in blk} for c, blk in blocks.items()}
    by_members = {frozenset(blk) for blk in blocks.values()}
    if any(frozenset(t) not in by_members for t in tposed.values()):
        return False
    if not np.array_equal(part[fine.relation_matrix], coarse.relation_matrix):
        return False
    try:
        coarse.p_tensor()
    except NotASchemeError:
        return False
    return True


def fuse(fine, partition, check=True):
    """Build the fused scheme; raises NotASchemeError if the admissible
    partition does not actually yield an association scheme."""
    part = np.asarray(partition, dtype=np.int64)
    M = _renumber_first_occurrence(part[fine.relation_matrix])
    return Scheme(M, domain=fine.domain, check=check)


# -- P-polynomial structure ----------------------------------------------------------


def _graph_distances(adj, cap):
    """All-pairs distances of a graph, or None if disconnected/deeper than cap."""
    n = adj.shape[0]
    D = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(D, 0)
    reach = np.eye(n, dtype=bool)
    Af = adj.astype(np.float32)
    for e in range(1, cap + 1):
        grown = (reach.astype(np.float32) @ Af) > 0
        grown |= reach
        new = grown & ~reach
        if not new.any():
            break
        D[new] = e
        reach = grown
    if (D < 0).any():
        return None
    return D


def p_polynomial_orderings(S):
    """All symmetric classes whose graph realizes S as its distance scheme.

    Returns a list of dicts with the generating relation, the induced
    class ordering, and the intersection array ({b_0..b_{d-1}}, {c_1..c_d}).
    Empty list means the scheme is not P-polynomial.
    """
    if not S.is_commutative():
        return []
    out = []
    P = S.p_tensor()
    M = S.relation_matrix
    for c in range(1, S.d + 1):
        if S.transpose_map[c] != c:
            continue
        D = _graph_distances(M == c, cap=S.d)
        if D is None:
            continue
        dist_of_class = np.array([D[x, y] for (x, y) in S.class_reps], dtype=np.int64)
        if sorted(dist_of_class.tolist()) != list(range(S.d + 1)):
            continue
        if not np.array_equal(D, dist_of_class[M]):
            continue
        order = np.argsort(dist_of_class)
        bs = [int(P[order[e], c, order[e + 1]]) for e in range(S.d)]
        cs = [int(P[order[e], c, order[e - 1]]) for e in range(1, S.d + 1)]
        out.append(
            {
                "relation": c,
                "ordering": [int(k) for k in order],
                "intersection_array": (bs, cs),
            }
        )
    return out
