"""
A chain rule that fails
=======================

The escort-averaged surprisal entropy at q = 2 on a two-by-two joint. The
joint value is 4/3 bits, while the marginal plus the escort-weighted
conditional comes to 3/2. Mapping both through h keeps them apart.
"""

from fractions import Fraction

import numpy as np
from qentropy import EntropyParams, chain_rule, escort, h_map, make_joint, reproduce_counterexample
from qentropy.audit import counterexample_exact

J = make_joint([[0.25, 0.25], [0.5, 0.0]])
print("marginal      ", J.marginal.probs)
print("conditionals  ", [c.probs for c in J.conditionals])
print("escort of r   ", escort(J.flatten(), 2).probs.reshape(2, 2))

rep = reproduce_counterexample()
print(f"S-space  lhs={rep.lhs:.12g}  rhs={rep.rhs:.12g}")
print(f"D-space  lhs={rep.witness['d_lhs']:.12g}  rhs={rep.witness['d_rhs']:.12g}  gap={rep.witness['d_gap']:.12g}")

# the same numbers in exact arithmetic
lhs, rhs = counterexample_exact()
assert (lhs, rhs) == (Fraction(4, 3), Fraction(3, 2))
print("exact", lhs, rhs)

# the corrected family closes the gap on the same joint
ev = chain_rule(J, "corrected", EntropyParams(q=2.0, tau=-1.0))
print(f"corrected  joint={ev.joint_entropy}  combined={ev.combined}  gap={ev.gap}")
assert np.isclose(h_map(4 / 3, 2), rep.witness["d_lhs"])
