"""
Linear codes and the rank decoding test
=======================================

A linear code is just a matrix over GF(q): codeword = H x.  User i can
decode exactly when its own column block adds rank on top of the blocks
it cannot cancel.  The catalog ships a rank-6 binary matrix for the
ten-user instance; six symbols for ten messages.
"""

from indexcode import (
    Matrix,
    LinearCode,
    column_block,
    field_make,
    load_instance,
    load_linear_code,
    rank,
    verify_linear,
)

i1 = load_instance("I1")
code = load_linear_code("I1-binary")
print("encoder matrix:")
for row in code.matrix.data:
    print("  ", "".join(map(str, row)))

report = verify_linear(i1, code)
print(f"all users decode: {report.ok}, rate {report.rate}")

# The test behind the verdict, spelled out for user 1.
u = 1
interf = sorted(i1.interfering(u))
with_own = rank(column_block(code.matrix, [u] + interf))
without = rank(column_block(code.matrix, interf))
print(f"user {u}: rank with own column {with_own}, without {without}"
      f" -> decodes: {with_own == without + 1}")

# Drop the last row and exactly one user loses its margin.
clipped = LinearCode(Matrix(field_make(2), code.matrix.data[:5].tolist()))
broken = verify_linear(i1, clipped)
print(f"with 5 rows: ok={broken.ok}, failing users {broken.failures()}")
