"""
The conic, its polarity, and the three kinds of lines
=====================================================

PG(2,q) carries the quadratic form Q = x1^2 - x0*x2, whose zero set is a
conic of q+1 points parameterized by the projective line.  Lines meet it
in 2, 1 or 0 points (secant / tangent / exterior), and the polarity of
the bilinear form swaps each line class with a point class.
"""

from collections import Counter

from scheme_forge import INFINITY, Plane, field

q = 9
plane = Plane(field(q))
f = plane.field

conic = plane.conic_points()
print(f"conic in PG(2,{q}): {len(conic)} points, first few:", conic[:4])

counts = Counter(plane.classify_line(l) for l in plane.all_lines())
print(f"line census: {dict(counts)}")
print(f"  expected: secant q(q+1)/2 = {q*(q+1)//2}, tangent q+1 = {q+1}, "
      f"exterior q(q-1)/2 = {q*(q-1)//2}")

l = plane.hyperbolic_line(f.zero(), INFINITY)
print("\nthe secant through the parameter-0 and parameter-oo conic points:", l)
print("its pole:", plane.polarity_line_to_point(l))

print("\npoles of secants are 'square type': Q evaluates to a nonzero square")
sample = [plane.hyperbolic_line(f.element_from_code(1), f.element_from_code(v)) for v in (0, 2, 5)]
for l in sample:
    P = plane.polarity_line_to_point(l)
    qv = plane.quadratic_form(P)
    print(f"  pole {P}: Q = {f.element_from_code(qv)}, square: {f.is_square(qv)}")

pg1 = plane.pg1
r = pg1.cross_ratio(f.zero(), INFINITY, f.one(), f.element_from_code(f.primitive_element()))
print("\ncross-ratio cr(0, oo; 1, g) =", r, " (= 1/g by the limit rules)")
