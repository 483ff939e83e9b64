"""
One scheme, three incarnations
==============================

The 2-subsets of the projective line, the secant lines of the conic, and
the square-type points of the plane are in natural bijection, and the
group actions commute with those bijections.  Building the orbital
scheme independently on each domain therefore yields the same relation
matrices - verified here class by class.
"""

from scheme_forge import (
    Plane,
    field,
    group_orbital_scheme,
    hyperbolic_lines_domain,
    hyperbolic_points_domain,
    pairs_domain,
    partition_bijection,
)

q = 9
f = field(q)
plane = Plane(f)
domains = {
    "2-subsets of the line": pairs_domain(plane),
    "secant lines": hyperbolic_lines_domain(plane),
    "square-type points": hyperbolic_points_domain(plane),
}

for gid in ("pgl", "psl", "m", "pgammal"):
    built = {name: group_orbital_scheme(f, gid, d) for name, d in domains.items()}
    names = list(built)
    ref = built[names[0]]
    print(f"{gid}: n = {ref.n}, d = {ref.d}")
    for name in names[1:]:
        bij = partition_bijection(ref, built[name])
        verdict = "identical" if bij is not None else "DIFFERENT"
        shown = None if bij is None else [int(v) for v in bij]
        print(f"  vs {name:22s}: {verdict} (class bijection {shown})")
