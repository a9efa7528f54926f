"""
Behaviour as q approaches 1
===========================

The q != 1 formulas are evaluated with expm1 and log1p, so the deformed
values merge smoothly into the q = 1 branch. Note the h-deformed families
land in nats there, the limit of h.
"""

import numpy as np
from qentropy import EntropyFamily, EntropyParams, entropy, shannon

p = np.array([0.6, 0.25, 0.1, 0.05])
print("shannon bits", shannon(p), " nats", shannon(p) * np.log(2))

for fam in EntropyFamily:
    params = lambda q: EntropyParams(q=q, tau=-1.0, lam=0.5)
    row = [entropy(fam, p, params(1 + d)) for d in (-1e-2, -1e-6, 0.0, 1e-6, 1e-2)]
    print(f"{fam.value:14}", "  ".join(f"{v:.10f}" for v in row))

# naive evaluation loses digits as q -> 1; the library does not
for d in (1e-4, 1e-8, 1e-11):
    q = 1 + d
    naive = (np.sum(p**q) ** 1.0 - 1) / (1 - q)
    print(f"q=1+{d:g}  naive={naive:.15f}  stable={entropy('tsallis', p, EntropyParams(q=q)):.15f}")
