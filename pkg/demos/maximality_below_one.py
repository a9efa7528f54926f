"""
Maximality below q = 1
======================

The uniform distribution need not maximise the escort-averaged surprisal
when q < 1. One heavy outcome plus several light ones gives the light
outcomes extra escort weight, enough to pass log2 n.
"""

import numpy as np
from qentropy import AuditSuiteConfig, EntropyParams, aczel_daroczy, check_maximality, uniform

p = np.array([0.5] + [0.1] * 5)
print("AD(p)     ", aczel_daroczy(p, 0.5))
print("AD(U_6)   ", aczel_daroczy(uniform(6), 0.5))

for q in (0.5, 0.8, 1.0, 2.0):
    rep = check_maximality(AuditSuiteConfig("aczel-daroczy", EntropyParams(q=q), trials=2000, max_n=6))
    print(f"q={q:<4} {rep.verdict:9} excess={rep.gap:.4f}  witness={np.round(rep.witness['p'], 3)}")
