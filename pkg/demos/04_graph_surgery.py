"""Borromean surgery along the theta graph.

The four-link combination is built from two vertex gadgets.  Its
alternating sublink sum reproduces it up to the sign of the full
sublink, and Omega_1 returns minus the theta graph.  Takes ~10 s.
"""

from lmokit.diagrams import theta
from lmokit.gradedsum import GradedSum
from lmokit.lmo import omega_n
from lmokit.surgery import delta_sum, normalized, tilde_beta

tb = tilde_beta("theta")
print("terms:", [int(c) for c, _ in tb])
print("delta(b) == -b:", normalized(delta_sum(tb)) == normalized(tb.scale(-1)))
om = omega_n(tb, 1)
print("Omega_1 == -theta:", om == GradedSum.of(theta(), -1, 1))
