"""
Four transitive groups on the projective line
=============================================

Between the symmetric group and the identity sit four groups acting on
PG(1,q): the full semilinear group, the fractional-linear maps, their
square-determinant subgroup, and (for q an even power of an odd prime)
the twisted sharply 3-transitive group that replaces non-square
determinants with a Frobenius twist.
"""

from scheme_forge import (
    Moebius,
    enumerate_group,
    field,
    generators,
    group_order,
    membership,
    point_perm,
)

f = field(9)
print("over GF(9):")
for gid in ("pgammal", "pgl", "m", "psl"):
    print(f"  {gid:8s} order {group_order(f, gid):5d}  "
          f"generators: {len(generators(f, gid))}")

z = f.fixed_nonsquare()
print("\nmembership of two scaling maps (z a non-square):")
plain = Moebius(f, z, 0, 0, 1)          # t -> z t
twist = Moebius(f, z, 0, 0, 1, j=1)     # t -> z t^sigma
for g, name in ((plain, "t -> z t"), (twist, "t -> z t^sigma")):
    verdict = {gid: membership(g, gid) for gid in ("pgl", "psl", "m", "pgammal")}
    print(f"  {name:16s} {verdict}")

print("\nsharp 3-transitivity: each ordered triple is reached exactly once")
for gid in ("pgl", "m"):
    served = {}
    for g in enumerate_group(f, gid):
        inv = point_perm(g.inverse())
        served[(int(inv[0]), int(inv[f.RANK[1]]), int(inv[f.q]))] = (
            served.get((int(inv[0]), int(inv[f.RANK[1]]), int(inv[f.q])), 0) + 1
        )
    print(f"  {gid}: {len(served)} triples, multiplicities {set(served.values())}")

pgl = {tuple(point_perm(g)) for g in enumerate_group(f, "pgl")}
m = {tuple(point_perm(g)) for g in enumerate_group(f, "m")}
psl = {tuple(point_perm(g)) for g in enumerate_group(f, "psl")}
print("\nas permutation sets: |pgl & m| =", len(pgl & m), "= |psl| =", len(psl))
