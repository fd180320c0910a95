"""
Running the property suite
==========================

``verify`` rebuilds the whole pipeline for a type and checks the structural
identities exactly: divided difference rules, duality, commutativity of the
quantum operators, both Chevalley routes, and integrality and positivity of
sampled structure constants.  For B2 it also checks the reference fixture.
"""

import json

from qschubert.verify import BASE_TYPES, verify

for label in BASE_TYPES:
    report = verify(label, samples=6)
    print(label, "passed" if report.passed else "FAILED")
    for c in report.checks:
        print(f"   {c.name}: {c.detail} ({c.seconds:.2f}s)")

report = verify("B2")
print(json.dumps(report.to_json()["errata"], indent=1)[:600])
