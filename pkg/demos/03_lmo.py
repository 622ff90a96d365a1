"""Omega_1 on a handful of surgery presentations.

Spheres give 1, the Poincare sphere (trefoil +1) and its mirror give
1 -/+ theta/2 in units of the planar theta.
"""

from fractions import Fraction

from lmokit.diagrams import theta
from lmokit.gradedsum import GradedSum
from lmokit.kontsevich import fixture, tensor_word
from lmokit.lmo import omega_n

th = GradedSum.of(theta(), 1, 1)
cases = {
    "U+": fixture("unknot", 1),
    "U+ U-": tensor_word(fixture("unknot", 1), fixture("unknot", -1)),
    "hopf(1,0)": fixture("hopf", 1, 0),
    "trefoil(+1)": fixture("trefoil", 1),
    "trefoil(-1)": fixture("trefoil", -1),
    "trefoil(+1) # trefoil(+1)": tensor_word(fixture("trefoil", 1), fixture("trefoil", 1)),
}
for name, w in cases.items():
    om = omega_n(w, 1)
    key, unit = next(iter(th.terms.items()))
    print(f"{name:28s} scalar {om.scalar_part()}, theta coefficient {om.terms.get(key, Fraction(0)) / unit}")
