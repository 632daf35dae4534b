"""GF(q^2) arithmetic and the Hermitian variety H(n, q^2).

Prints a few field products, point counts of PG(n, q^2) on and off H, and
the line types through a point off H in the plane PG(2, 9).
"""
from collections import Counter

from hermsrg import gf_q2, hermitian_geometry
from hermsrg.gf import norm, trace

q = 3
F = gf_q2(q)
a, b = F.element(2), F.element(5)
print(f"GF({q * q}): a={a}, b={b}, a*b={a * b}, a+b={a + b}, a^-1={a.inverse()}")
print(f"  norm(a)={norm(a, q)}, trace(a)={trace(a, q)}  (both in GF({q}))")

for n, qq in [(2, 2), (2, 3), (3, 2), (4, 2)]:
    H = hermitian_geometry(n, qq)
    on = len(H.point_set)
    print(f"PG({n},{qq * qq}): {H.space.n_points} points, {on} on H, {H.space.n_points - on} off H")

H = hermitian_geometry(2, q)
S = H.space
R = int(H.non_absolute[0])
lines, seen = [], set()
for j in range(S.n_points):
    if j == R or j in seen:
        continue
    line = S.line(R, j)
    seen.update(int(x) for x in S.points_of(line))
    lines.append(H.classify_line(line).name)
print(f"lines through an off-H point of PG(2,{q * q}):", dict(Counter(lines)))
