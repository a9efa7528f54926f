"""
Auditing the chain rule
=======================

Random joints on the simplex, batched by shape. The corrected family
passes at every grid point; the Jizba-Korbel family fails at every q != 1.
"""

from qentropy import AuditSuiteConfig, EntropyParams, check_chain_rule, search_violations
from qentropy.audit import parameter_grid

for q in (0.5, 2.0, 3.0):
    for tau in (-0.5, -1.0, -2.0):
        rep = check_chain_rule(AuditSuiteConfig("corrected", EntropyParams(q=q, tau=tau), trials=10_000))
        print(f"corrected  q={q:<4} tau={tau:<5} {rep.verdict:9} gap={rep.gap:.2e}")

# reports come back worst first; the q = 2 audit always contains the injected joint
for rep in search_violations(AuditSuiteConfig("jizba-korbel", trials=1000), grid=parameter_grid("jizba-korbel")):
    extra = f"  injected gap={rep.witness['injected']['gap']:.9f}" if "injected" in rep.witness else ""
    print(f"jizba-korbel q={rep.params.q:<4} {rep.verdict} gap={rep.gap:.4f}{extra}")
    print("   worst joint", [[round(x, 4) for x in row] for row in rep.witness["r"]])
