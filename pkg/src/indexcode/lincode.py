"""Linear index codes and their decodability verifier.

A linear code for an m-user instance at message length t is an r x (m*t)
matrix H over GF(q); user l owns the t-column block starting at column
(l-1)*t.  The broadcast is H @ x, and user i can decode exactly when

    rank H[{i} | B_i] == rank H[B_i] + t

with B_i the interfering set: joining user i's own columns to its
interference must grow the rank by a full t, otherwise some interference
pattern masks the wanted message.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import LengthMismatch, NotAcyclic, UnknownCode
from .fields import Matrix, column_block, field_make, matrix_from_text, rank
from .graphs import SideInfoGraph
from .instances import Instance


@dataclass(frozen=True)
class LinearCode:
    """A code matrix plus the per-user message length t."""

    matrix: Matrix
    t: int = 1
    name: str | None = None

    def __post_init__(self):
        if self.t < 1:
            raise LengthMismatch(f"message length t must be positive, got {self.t}")
        if self.matrix.cols % self.t:
            raise LengthMismatch(
                f"{self.matrix.cols} columns do not split into blocks of t={self.t}"
            )

    @property
    def m(self) -> int:
        return self.matrix.cols // self.t

    @property
    def rate(self) -> Fraction:
        return Fraction(self.matrix.rows, self.t)


@dataclass(frozen=True)
class UserCheck:
    user: int
    ok: bool
    rank_joint: int
    rank_interferers: int


@dataclass(frozen=True)
class LinearReport:
    ok: bool
    t: int
    rows: int
    rank: int
    rate: Fraction
    checks: tuple[UserCheck, ...]

    def failures(self) -> tuple[int, ...]:
        return tuple(c.user for c in self.checks if not c.ok)


def _require_shape(inst: Instance, code: LinearCode):
    if code.m != inst.m:
        raise LengthMismatch(
            f"code covers {code.m} users but the instance has {inst.m}"
        )


def verify_linear_subset(
    inst: Instance, code: LinearCode, users: Iterable[int]
) -> LinearReport:
    """Run the rank test for the given users only."""
    _require_shape(inst, code)
    checks = []
    for i in sorted(set(users)):
        interferers = sorted(inst.interfering(i))
        joint = rank(column_block(code.matrix, sorted([i] + interferers), t=code.t))
        alone = rank(column_block(code.matrix, interferers, t=code.t))
        checks.append(
            UserCheck(
                user=i,
                ok=joint == alone + code.t,
                rank_joint=joint,
                rank_interferers=alone,
            )
        )
    return LinearReport(
        ok=all(c.ok for c in checks),
        t=code.t,
        rows=code.matrix.rows,
        rank=rank(code.matrix),
        rate=code.rate,
        checks=tuple(checks),
    )


def verify_linear(inst: Instance, code: LinearCode) -> LinearReport:
    """Rank test for every user of the instance."""
    return verify_linear_subset(inst, code, range(1, inst.m + 1))


@dataclass(frozen=True)
class AcyclicRankCheck:
    rank_joint: int
    rank_helpers: int
    required: int
    ok: bool


def acyclic_rank_check(
    inst: Instance,
    code: LinearCode,
    users: Iterable[int],
    helpers: Iterable[int] = (),
) -> AcyclicRankCheck:
    """Rank identity a valid code must satisfy on an acyclic user set.

    For acyclic L and any helper set T interfering with every member of L,
    the columns of T and L together must have rank equal to rank of T's
    columns plus a full |L|*t.  Chaining the per-user test around L in a
    topological order forces every step to add t fresh dimensions.  The
    m x 1 specialization (L a maximum acyclic set, T empty) is what makes
    MAIS a lower bound on every linear rate.
    """
    _require_shape(inst, code)
    user_list = sorted(set(users))
    helper_list = sorted(set(helpers))
    g = SideInfoGraph.from_instance(inst)
    if not g.acyclic_mask(g.users_mask(user_list)):
        raise NotAcyclic(f"user set {user_list} induces a cycle")
    for h in helper_list:
        for l in user_list:
            if h not in inst.interfering(l):
                raise ValueError(f"helper {h} is not interfering for user {l}")
    joint = rank(column_block(code.matrix, sorted(set(user_list + helper_list)), t=code.t))
    alone = rank(column_block(code.matrix, helper_list, t=code.t))
    required = alone + len(user_list) * code.t
    return AcyclicRankCheck(
        rank_joint=joint, rank_helpers=alone, required=required, ok=joint == required
    )


# ---------------------------------------------------------------------------
# catalog

def _build_i1_binary() -> LinearCode:
    # three parity rows over the 7-user core, three uncoded rows for the
    # side-information-free users
    rows = (
        (1, 0, 0, 1, 0, 1, 1, 0, 0, 0),
        (0, 1, 0, 1, 1, 0, 1, 0, 0, 0),
        (0, 0, 1, 0, 1, 1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    )
    return LinearCode(Matrix(field_make(2), rows), t=1, name="I1-binary")


_LINEAR_CATALOG = {"I1-binary": _build_i1_binary()}

LINEAR_CATALOG_NAMES = tuple(sorted(_LINEAR_CATALOG))


def linear_catalog_get(name: str) -> LinearCode:
    try:
        return _LINEAR_CATALOG[name]
    except KeyError:
        raise UnknownCode(
            f"unknown linear code {name!r}; catalog has {', '.join(LINEAR_CATALOG_NAMES)}"
        ) from None


def load_linear_code(spec: str, *, t: int = 1) -> LinearCode:
    """Resolve a catalog code name or a matrix text file to a LinearCode."""
    if spec in _LINEAR_CATALOG:
        return _LINEAR_CATALOG[spec]
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return LinearCode(matrix_from_text(fh.read()), t=t)
    except FileNotFoundError:
        raise UnknownCode(
            f"{spec!r} is neither a catalog code nor a readable file"
        ) from None
