"""
A nonlinear code that no rank test can certify
==============================================

The 26-user instance carries a rate-6 binary code whose first and third
output symbols contain genuine quadratic terms (products of message
bits).  Verification therefore happens semantically: run every decoder
against sampled message vectors, or check pairwise confusability.
"""

import dataclasses

from indexcode import encode, load_general_code, load_instance, verify_decoders

i2 = load_instance("I2")
code = load_general_code("I2-quadratic")
print(f"{code.name}: m={code.m}, r={code.r}, q={code.q}")

# Two messages differing only in message 4 flip more than one output
# symbol because 4 appears inside product terms.
x = [0] * 26
y = list(x)
y[3] = 1
print("encode(all zeros)      :", encode(code, x))
print("encode(only message 4) :", encode(code, y))

# 2^26 message vectors fit the default budget, so the auto mode runs
# the full sweep; larger spaces fall back to seeded sampling.
report = verify_decoders(i2, code)
print(f"decoders: ok={report.ok} ({report.mode}, {report.inputs} messages)")

# Break one decoder and the check names the user and a failing input.
decoders = list(code.decoders)
decoders[4] = lambda z, side: 1 - z[0]
bad = dataclasses.replace(code, decoders=tuple(decoders))
report = verify_decoders(i2, bad)
for check in report.checks:
    if not check.ok:
        print(f"user {check.user}: {check.failures} failures, "
              f"first at x={check.first_failure}")
