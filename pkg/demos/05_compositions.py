"""
Composing instances and codes
=============================

Two instances can be joined with no cross side information (rates add)
or with full mutual cross knowledge (rates take the maximum).  The
catalog's I3 and I4 are exactly these two joins of I1 and I2, and their
codes compose the same way: concatenation, or a padded symbol-wise sum.
"""

import numpy as np

from indexcode import (
    compose_codes,
    encode,
    load_general_code,
    load_instance,
    verify_decoders,
)

i3 = load_instance("I3")
i4 = load_instance("I4")
print(f"I3 = I1 + I2 with no cross knowledge: {i3.m} users")
print(f"I4 = I1 + I2 with full cross knowledge: {i4.m} users")

c1 = load_general_code("I1-binary")
c2 = load_general_code("I2-quadratic")
c3 = compose_codes(c1, c2, "noway")
c4 = compose_codes(c1, c2, "twoway")
print(f"noway code rate:  {c3.rate}  (6 + 6)")
print(f"twoway code rate: {c4.rate}  (max(6, 6))")

# The twoway codeword is the xor of the two padded block codewords.
rng = np.random.default_rng(7)
for _ in range(3):
    x = [int(v) for v in rng.integers(0, 2, 36)]
    za = encode(c1, x[:10])
    zb = encode(c2, x[10:])
    z = encode(c4, x)
    assert z == tuple(a ^ b for a, b in zip(za, zb))
print("xor identity holds on sampled messages")

report = verify_decoders(i4, c4, samples=10**5, seed=3)
print(f"twoway decoders: ok={report.ok} on {report.inputs} sampled messages")
