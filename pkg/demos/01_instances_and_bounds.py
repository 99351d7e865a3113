"""
Instances and the acyclic lower bound
=====================================

Load the two headline instances from the catalog, poke at their side
information structure, and compute the bound that anchors everything
else: no code can use fewer symbols than the largest acyclic set of
users demands.
"""

from indexcode import is_acyclic, is_minimal_cyclic, load_instance, mais, restrict

i1 = load_instance("I1")
print(f"{i1.name}: {i1.m} users")
for u in (1, 2, 10):
    print(f"  user {u} knows {sorted(i1.known(u))}, interferes {sorted(i1.interfering(u))}")

# The bound is tight here: six users with no cycles among them.
res = mais(i1)
print(f"mais(I1) = {res.size}, witness {res.witness}, {res.nodes} nodes explored")

# The triple (1, 2, 4) carries a cycle and every proper subset is
# clean, so it is minimal; padding it with user 5 is not.
print("(1,2,4) acyclic?", is_acyclic(i1, (1, 2, 4)),
      " minimal cyclic?", is_minimal_cyclic(i1, (1, 2, 4)))
print("(1,2,4,5) minimal cyclic?", is_minimal_cyclic(i1, (1, 2, 4, 5)))

# The 26-user instance is built from overlapping interference pairs.
i2 = load_instance("I2")
res2 = mais(i2)
print(f"\n{i2.name}: {i2.m} users, mais {res2.size}, witness {res2.witness}")

# Restriction keeps the sub-structure and relabels users 1..k.
first7 = restrict(i1, range(1, 8))
print(f"I1 restricted to users 1..7: mais {mais(first7).size}")
