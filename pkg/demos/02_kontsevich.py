"""The Kontsevich integral of small tangles.

The pure braid commutator gamma123 starts as 1 + (a single tripod), and
the degree-1 part of a link records its linking matrix.
"""

from lmokit.acceptance import y_diagram
from lmokit.gradedsum import GradedSum
from lmokit.kontsevich import fixture, gamma123, linking_matrix, nu, zhat
from lmokit.relations import reduce_chords
from lmokit.diagrams import Support

z = zhat(gamma123(), cap=2)
tripod = GradedSum.one(Support.intervals(3), 2) + GradedSum.of(y_diagram(), 1, 2)
print("gamma123 up to degree 2 equals 1 + tripod:", not reduce_chords(z - tripod).terms)

for name, args in (("hopf", (0, 0)), ("trefoil", (1,)), ("borromean", ())):
    w = fixture(name, *args)
    print(f"{name}{args}: linking matrix {[[int(v) for v in r] for r in linking_matrix(w)]}")

n = nu(3)
print("unknot value, degree 2 coefficients:", sorted(str(c) for c in n.grad(2).terms.values()))
