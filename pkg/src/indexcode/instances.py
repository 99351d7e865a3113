"""Unicast index-coding instances: validation, catalog, composition, file IO.

An instance is ``m`` users where user ``i`` requests message ``x_i`` and
already knows the messages in its side-information set ``A_i``.  The
interfering set ``B_i`` is everything it neither knows nor wants:
``B_i = [m] \\ (A_i | {i})``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, SelfInclusion, UnknownInstance


@dataclass(frozen=True)
class Instance:
    """An m-user unicast instance with 1-based side-information sets."""

    m: int
    side_info: tuple[frozenset[int], ...]
    name: str | None = None

    def __post_init__(self):
        if self.m < 0:
            raise IndexOutOfRange(f"user count must be nonnegative, got {self.m}")
        if len(self.side_info) != self.m:
            raise IndexOutOfRange(
                f"expected {self.m} side-information sets, got {len(self.side_info)}"
            )

    def known(self, i: int) -> frozenset[int]:
        return self.side_info[i - 1]

    def interfering(self, i: int) -> frozenset[int]:
        return frozenset(range(1, self.m + 1)) - self.side_info[i - 1] - {i}


def instance_validate(
    m: int, side_info: Sequence[Iterable[int]], name: str | None = None
) -> Instance:
    """Build an Instance, checking index ranges and self-inclusion."""
    sets = []
    for i, raw in enumerate(side_info, start=1):
        s = frozenset(int(v) for v in raw)
        for v in s:
            if v < 1 or v > m:
                raise IndexOutOfRange(
                    f"user {i} lists side information {v}, outside 1..{m}"
                )
        if i in s:
            raise SelfInclusion(f"user {i} lists its own message as side information")
        sets.append(s)
    if len(sets) != m:
        raise IndexOutOfRange(f"expected {m} side-information sets, got {len(sets)}")
    return Instance(m=m, side_info=tuple(sets), name=name)


def from_interfering(
    m: int, interfering: Sequence[Iterable[int]], name: str | None = None
) -> Instance:
    """Build an Instance from interfering sets: A_i = [m] \\ (B_i | {i})."""
    universe = frozenset(range(1, m + 1))
    sets = []
    for i, raw in enumerate(interfering, start=1):
        b = frozenset(int(v) for v in raw)
        for v in b:
            if v < 1 or v > m:
                raise IndexOutOfRange(f"user {i} lists interferer {v}, outside 1..{m}")
        if i in b:
            raise SelfInclusion(f"user {i} lists its own message as interfering")
        sets.append(universe - b - {i})
    return instance_validate(m, sets, name=name)


def interfering_sets(inst: Instance) -> tuple[frozenset[int], ...]:
    """All interfering sets B_1..B_m, derived from the side information."""
    return tuple(inst.interfering(i) for i in range(1, inst.m + 1))


def compose_noway(a: Instance, b: Instance, name: str | None = None) -> Instance:
    """Disjoint union with no cross knowledge.

    Users of the second block are relabeled by +a.m; nobody learns anything
    about the other block, so a code must serve the blocks separately.
    """
    sets = list(a.side_info)
    sets += [frozenset(v + a.m for v in s) for s in b.side_info]
    return Instance(m=a.m + b.m, side_info=tuple(sets), name=name)


def compose_twoway(a: Instance, b: Instance, name: str | None = None) -> Instance:
    """Disjoint union where each side knows the other block entirely."""
    block_b = frozenset(range(a.m + 1, a.m + b.m + 1))
    block_a = frozenset(range(1, a.m + 1))
    sets = [s | block_b for s in a.side_info]
    sets += [frozenset(v + a.m for v in s) | block_a for s in b.side_info]
    return Instance(m=a.m + b.m, side_info=tuple(sets), name=name)


def restrict(inst: Instance, users: Iterable[int], name: str | None = None) -> Instance:
    """Sub-instance on a user subset, relabeled to 1..k preserving order."""
    keep = sorted(set(users))
    for u in keep:
        if u < 1 or u > inst.m:
            raise IndexOutOfRange(f"user {u} outside 1..{inst.m}")
    relabel = {u: i for i, u in enumerate(keep, start=1)}
    sets = tuple(
        frozenset(relabel[v] for v in inst.side_info[u - 1] if v in relabel)
        for u in keep
    )
    return Instance(m=len(keep), side_info=sets, name=name)


# ---------------------------------------------------------------------------
# catalog

# 10-user instance: a 7-user core where user i knows three messages, plus
# three users with no side information at all.
_I1_SIDE_INFO = (
    (4, 6, 7),
    (1, 5, 6),
    (1, 2, 7),
    (2, 3, 6),
    (1, 3, 4),
    (3, 5, 7),
    (2, 4, 5),
    (),
    (),
    (),
)

# 26-user instance, defined by its interfering sets.
_I2_INTERFERING = (
    (2, 3, 5, 11, 12, 13, 15, 22, 23, 24, 25, 26),
    (1, 3, 6, 11, 12, 13, 16, 21, 22, 24, 25, 26),
    (1, 2, 4, 11, 12, 13, 14, 21, 22, 23, 24, 26),
    (5, 6, 14, 15, 16),
    (4, 6, 14, 15, 16),
    (4, 5, 14, 15, 16),
    (17,),
    (1, 5, 7, 11, 15, 17, 18),
    (2, 6, 7, 12, 16, 17, 19),
    (3, 4, 7, 13, 14, 17, 20),
    (1, 2, 3, 5, 12, 13, 15, 21, 23, 24, 25, 26),
    (1, 2, 3, 6, 11, 13, 16, 21, 22, 23, 25, 26),
    (1, 2, 3, 4, 11, 12, 14, 21, 22, 23, 24, 25),
    (4,),
    (5,),
    (6,),
    (7,),
    (1, 5, 7, 8, 11, 15, 17),
    (2, 6, 7, 9, 12, 16, 17),
    (3, 4, 7, 10, 13, 14, 17),
    (4, 6, 14, 16, 22),
    (4, 6, 14, 16, 21),
    (4, 5, 14, 15, 24),
    (4, 5, 14, 15, 23),
    (5, 6, 15, 16, 26),
    (5, 6, 15, 16, 25),
)


@dataclass(frozen=True)
class KnownBound:
    """A named numeric fact about a catalog instance.

    ``note`` says how the toolkit itself re-derives the number; the repro
    suite exercises each one.
    """

    name: str
    value: int
    note: str


@dataclass(frozen=True)
class CatalogEntry:
    instance: Instance
    known_bounds: tuple[KnownBound, ...]


def _build_catalog() -> dict[str, CatalogEntry]:
    i1 = instance_validate(10, _I1_SIDE_INFO, name="I1")
    i2 = from_interfering(26, _I2_INTERFERING, name="I2")
    i3 = compose_noway(i1, i2, name="I3")
    i4 = compose_twoway(i1, i2, name="I4")
    return {
        "I1": CatalogEntry(
            i1,
            (
                KnownBound("mais", 6, "exact branch-and-bound, witness {1,2,3,8,9,10}"),
                KnownBound("code_rate", 6, "achieved by the catalog code I1-binary"),
            ),
        ),
        "I2": CatalogEntry(
            i2,
            (
                KnownBound("mais", 6, "exact branch-and-bound"),
                KnownBound("code_rate", 6, "achieved by the builtin code paper-I2"),
            ),
        ),
        "I3": CatalogEntry(
            i3,
            (
                KnownBound("mais", 12, "blocks are independent, so the bound adds"),
                KnownBound("code_rate", 12, "concatenation of the two block codes"),
            ),
        ),
        "I4": CatalogEntry(
            i4,
            (
                KnownBound("mais", 6, "every cross pair is mutually known"),
                KnownBound("code_rate", 6, "symbol-wise sum of the two block codes"),
            ),
        ),
    }


_CATALOG = _build_catalog()

CATALOG_NAMES = tuple(sorted(_CATALOG))


def catalog_get(name: str) -> CatalogEntry:
    """Look up a named catalog instance (I1, I2, I3, I4)."""
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownInstance(
            f"unknown instance {name!r}; catalog has {', '.join(CATALOG_NAMES)}"
        ) from None


# ---------------------------------------------------------------------------
# file format

def instance_to_json(inst: Instance) -> str:
    """Serialize as {"m": ..., "A": [[...], ...], "name": ...}, sets ascending."""
    doc = {
        "m": inst.m,
        "A": [sorted(s) for s in inst.side_info],
        "name": inst.name,
    }
    return json.dumps(doc, indent=2) + "\n"


def instance_from_json(text: str) -> Instance:
    """Parse and validate the JSON interchange format."""
    doc = json.loads(text)
    if not isinstance(doc, Mapping) or "m" not in doc or "A" not in doc:
        raise IndexOutOfRange('instance JSON needs keys "m" and "A"')
    return instance_validate(int(doc["m"]), doc["A"], name=doc.get("name"))


def load_instance(spec: str) -> Instance:
    """Resolve a catalog name or a JSON file path to an Instance."""
    if spec in _CATALOG:
        return _CATALOG[spec].instance
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return instance_from_json(fh.read())
    except FileNotFoundError:
        raise UnknownInstance(
            f"{spec!r} is neither a catalog name nor a readable file"
        ) from None
