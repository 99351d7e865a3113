"""Side-information graph queries: acyclicity, independence, exact MAIS.

The graph has one vertex per user and an edge i -> j whenever user i already
knows message j.  A user set is independent when it spans no edge at all,
acyclic when it spans no directed cycle.  The maximum acyclic induced
subgraph (MAIS) size lower-bounds the rate of every valid code, linear or
not, so the exact solver here is the converse side of the toolkit.

Masks are Python ints with bit k standing for user k+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetExceeded, IndexOutOfRange, InvalidBasis
from .instances import Instance

MAIS_DEFAULT_BUDGET = 10**8


class SideInfoGraph:
    """Bitmask adjacency for an instance's side-information graph."""

    __slots__ = ("m", "out", "pred", "mutual")

    def __init__(self, m: int, out: list[int]):
        self.m = m
        self.out = out
        pred = [0] * m
        for i in range(m):
            rest = out[i]
            while rest:
                low = rest & -rest
                pred[low.bit_length() - 1] |= 1 << i
                rest ^= low
        self.pred = pred
        # mutual[v]: partners u where u and v know each other (a 2-cycle)
        self.mutual = [out[i] & pred[i] for i in range(m)]

    @classmethod
    def from_instance(cls, inst: Instance) -> "SideInfoGraph":
        out = []
        for i in range(1, inst.m + 1):
            mask = 0
            for j in inst.side_info[i - 1]:
                mask |= 1 << (j - 1)
            out.append(mask)
        return cls(inst.m, out)

    def users_mask(self, users: Iterable[int]) -> int:
        mask = 0
        for u in users:
            if u < 1 or u > self.m:
                raise IndexOutOfRange(f"user {u} outside 1..{self.m}")
            mask |= 1 << (u - 1)
        return mask

    def acyclic_mask(self, mask: int) -> bool:
        """Kahn peeling: strip vertices with no predecessor inside the set."""
        live = mask
        stripped = True
        while live and stripped:
            stripped = False
            rest = live
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                if self.pred[v] & live & ~low == 0:
                    live ^= low
                    stripped = True
                rest ^= low
        return live == 0

    def independent_mask(self, mask: int) -> bool:
        rest = mask
        while rest:
            low = rest & -rest
            if self.out[low.bit_length() - 1] & mask & ~low:
                return False
            rest ^= low
        return True

    def closes_cycle(self, chosen: int, v: int) -> bool:
        """Would adding v to the acyclic set ``chosen`` create a cycle?

        True exactly when v can reach itself inside chosen | {v}.
        """
        inside = chosen | (1 << v)
        seen = 0
        frontier = self.out[v] & inside
        while frontier:
            seen |= frontier
            if (seen >> v) & 1:
                return True
            nxt = 0
            rest = frontier
            while rest:
                low = rest & -rest
                nxt |= self.out[low.bit_length() - 1]
                rest ^= low
            frontier = nxt & inside & ~seen
        return False


def is_acyclic(inst: Instance, users: Iterable[int]) -> bool:
    g = SideInfoGraph.from_instance(inst)
    return g.acyclic_mask(g.users_mask(users))


def is_independent(inst: Instance, users: Iterable[int]) -> bool:
    """No user in the set knows any other member's message.

    Equivalently every other member interferes: j in B_i for all pairs.
    Strictly stronger than acyclic.
    """
    g = SideInfoGraph.from_instance(inst)
    return g.independent_mask(g.users_mask(users))


def is_minimal_cyclic(inst: Instance, users: Iterable[int]) -> bool:
    """Cyclic, but dropping any single user makes the rest acyclic."""
    g = SideInfoGraph.from_instance(inst)
    mask = g.users_mask(users)
    if g.acyclic_mask(mask):
        return False
    rest = mask
    while rest:
        low = rest & -rest
        if not g.acyclic_mask(mask ^ low):
            return False
        rest ^= low
    return True


class _AcyclicBnb:
    """Branch and bound over acyclic vertex sets with a shared node budget."""

    def __init__(self, g: SideInfoGraph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.best_size = 0
        # branch on busiest vertices first; ties break toward small indices
        self.order = sorted(
            range(g.m),
            key=lambda v: (-(g.out[v].bit_count() + g.pred[v].bit_count()), v),
        )

    def _bump(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"acyclic-set budget of {self.budget} nodes exhausted",
                best=self.best_size,
                nodes=self.nodes,
            )

    def _pick(self, cand: int) -> int:
        for v in self.order:
            if (cand >> v) & 1:
                return v
        raise AssertionError("pick on empty candidate mask")

    def maximize(self, chosen: int, count: int, cand: int):
        self._bump()
        if count > self.best_size:
            self.best_size = count
        if count + cand.bit_count() <= self.best_size:
            return
        v = self._pick(cand)
        if not self.g.closes_cycle(chosen, v):
            self.maximize(
                chosen | (1 << v), count + 1, cand & ~((1 << v) | self.g.mutual[v])
            )
        self.maximize(chosen, count, cand & ~(1 << v))

    def feasible(self, chosen: int, count: int, cand: int, target: int) -> bool:
        """Does some acyclic superset of ``chosen`` inside cand reach target?"""
        self._bump()
        if count >= target:
            return True
        if count + cand.bit_count() < target:
            return False
        v = self._pick(cand)
        if not self.g.closes_cycle(chosen, v) and self.feasible(
            chosen | (1 << v), count + 1, cand & ~((1 << v) | self.g.mutual[v]), target
        ):
            return True
        return self.feasible(chosen, count, cand & ~(1 << v), target)

    def lex_witness(self, size: int) -> tuple[int, ...]:
        """Lex-smallest acyclic set of the given size (must be feasible).

        Greedy: pin each vertex in ascending order iff some size-``size``
        acyclic set still extends the pinned prefix using larger vertices.
        """
        g = self.g
        prefix = 0
        pinned = 0
        pmut = 0
        for u in range(g.m):
            if pinned == size:
                break
            if (pmut >> u) & 1 or g.closes_cycle(prefix, u):
                continue
            cand = ((1 << g.m) - 1) & ~((1 << (u + 1)) - 1) & ~pmut & ~g.mutual[u]
            if self.feasible(prefix | (1 << u), pinned + 1, cand, size):
                prefix |= 1 << u
                pinned += 1
                pmut |= g.mutual[u]
        assert pinned == size
        witness = []
        rest = prefix
        while rest:
            low = rest & -rest
            witness.append(low.bit_length())
            rest ^= low
        return tuple(witness)


@dataclass(frozen=True)
class MaisResult:
    size: int
    witness: tuple[int, ...] | None
    nodes: int


def mais(
    inst: Instance, *, budget: int = MAIS_DEFAULT_BUDGET, want_witness: bool = True
) -> MaisResult:
    """Exact MAIS size by branch and bound, with node accounting.

    The witness, when requested, is the maximum acyclic set whose sorted
    member list is lexicographically smallest, so reruns and platforms
    agree on it.  Raises BudgetExceeded (carrying the best size seen) if
    the node budget runs out.
    """
    g = SideInfoGraph.from_instance(inst)
    if g.m == 0:
        return MaisResult(0, () if want_witness else None, 0)
    bnb = _AcyclicBnb(g, budget)
    bnb.maximize(0, 0, (1 << g.m) - 1)
    size = bnb.best_size
    witness = bnb.lex_witness(size) if want_witness else None
    return MaisResult(size, witness, bnb.nodes)


def acyclic_witness(
    inst: Instance, size: int, *, budget: int = MAIS_DEFAULT_BUDGET
) -> tuple[int, ...]:
    """Lex-smallest acyclic user set of exactly the given size.

    Raises InvalidBasis when the instance has no acyclic set that large,
    which is how callers learn that a requested normalization basis cannot
    exist.
    """
    if size < 0 or size > inst.m:
        raise InvalidBasis(f"no acyclic set of size {size} in a {inst.m}-user instance")
    if size == 0:
        return ()
    g = SideInfoGraph.from_instance(inst)
    bnb = _AcyclicBnb(g, budget)
    if not bnb.feasible(0, 0, (1 << g.m) - 1, size):
        raise InvalidBasis(f"no acyclic set of size {size} exists")
    return bnb.lex_witness(size)
