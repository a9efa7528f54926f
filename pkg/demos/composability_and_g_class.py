"""
Composable families on independent systems
==========================================

On a product P * Q the deformed families combine with u + v + (1-q)uv.
The two-parameter G class keeps that law for every lambda and reduces to
the Jizba-Korbel entropy at lambda = 0.
"""

import numpy as np
from qentropy import EntropyParams, direct_product, entropy, g_class, jizba_korbel, q_add

rng = np.random.default_rng(3)
P, Q = rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(4))
PQ = direct_product(P, Q)

for q in (0.5, 2.0, 3.0):
    for lam in (-1.0, 0.0, 1.0):
        lhs = g_class(PQ, q, lam)
        rhs = q_add(g_class(P, q, lam), g_class(Q, q, lam), q)
        print(f"q={q:<4} lambda={lam:<5} G(PQ)={lhs:.12f}  G(P) o G(Q)={rhs:.12f}")

# the additive parent is the Nath entropy
params = EntropyParams(q=2.0, tau=-0.5)
print("nath additive gap", abs(entropy("nath", PQ, params) - entropy("nath", P, params) - entropy("nath", Q, params)))

# lambda -> 0 approaches the Jizba-Korbel value
for lam in (1e-1, 1e-3, 1e-6, 0.0):
    print(f"lambda={lam:<6} |G - JK|={abs(g_class(P, 2.0, lam) - jizba_korbel(P, 2.0)):.2e}")
