"""Dimensions of diagram spaces and the sl2 weight that certifies theta.

Run: python3 demos/01_diagram_spaces.py
"""

from lmokit.diagrams import Support, format_diagram, theta
from lmokit.relations import chord_quotient, closed_dimension, closed_quotient
from lmokit.weights import weight_sl2

print("closed trivalent diagrams modulo AS and IHX")
for n in (1, 2, 3):
    print(f"  degree {n}: {closed_dimension(n, 'sparse')} (dense route {closed_dimension(n, 'dense')})")

print("\nthe survivor in degree 1:")
print(" ", format_diagram(closed_quotient(1).basis[0]))
print("  sl2 weight of the planar theta:", weight_sl2(theta()))

print("\nchord diagrams on one circle modulo 4T")
print(" ", [chord_quotient(Support.circles(1), d).dim for d in range(1, 5)])
