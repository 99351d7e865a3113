"""Exhaustive scalar-code search with subspace-cap pruning.

Decides whether a rate-r scalar (t = 1) linear code over GF(q) exists for
an instance.  Columns are assigned depth-first; a found matrix is returned
and independently re-verified, while a clean backtrack is an exhaustion
certificate for the normalized search space.

Normalization: the columns of a chosen acyclic user set are pinned to
standard basis vectors.  Any valid code gives its acyclic sets linearly
independent columns, so an invertible row operation maps some solution
into the pinned form while preserving every rank condition; searching the
pinned space only is therefore complete.

Pruning is organized around subspace caps, all of them consequences of
the per-user decoding condition H_i not in span H_{B_i}:

* the span of any assigned part of B_i may never reach dimension r, and
  once user i's column is placed it must stay outside that growing span
  (this is the per-subset decoding condition, and it also forces the
  columns of acyclic sets to stay independent, which covers the forcing
  that minimal cyclic sets would otherwise contribute);
* for mutually interfering users i and j, the assigned part of
  B_i & B_j caps at dimension r-2, because the pair needs two dimensions
  of its own on top of the shared interference;
* a cap that reaches its limit confines every future column in its scope
  to the cap's span, so domains shrink as the assignment grows.  A user
  whose domain is swallowed by its own interference span, or a mutual
  pair whose domains cannot contribute two fresh dimensions, kills the
  branch before any of its columns is enumerated.

Determinism: candidate vectors are tried sparsest-first (weight, then
value), the default column order is fail-first (smallest domain, then
smallest index), and node and prune counts are part of the outcome.
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceeded, InvalidBasis
from .fields import FieldSpec, Matrix, field_make, nullspace
from .graphs import acyclic_witness, is_acyclic, mais
from .instances import Instance
from .lincode import LinearCode, verify_linear

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
BUDGET_ENV = "INDEXCODE_BUDGET"
PROGRESS_EVERY = 10**7
# refuse to materialize a candidate list larger than this
DOMAIN_CAP = 2**20

PRUNE_RULES = (
    "own_span",
    "conflict",
    "cap_user",
    "cap_pair",
    "forced_empty",
    "user_dead",
    "pair_needs_two",
)

# per-instance branch orders for the free columns, most-constrained first
_HINT_ORDERS = {
    "I2": (21, 22, 23, 24, 25, 26, 4, 14, 5, 15, 6, 16, 8, 9, 10, 18, 19, 20, 7, 17),
}


def _resolve_budget(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


@lru_cache(maxsize=None)
def _ops(q: int):
    """Field tables as nested tuples; plain-int indexing beats array scalars."""
    f = field_make(q)
    add = tuple(tuple(int(v) for v in row) for row in f.add)
    sub = tuple(tuple(int(v) for v in row) for row in f.sub)
    mul = tuple(tuple(int(v) for v in row) for row in f.mul)
    inv = tuple(int(v) for v in f.inv)
    return add, sub, mul, inv


class Span:
    """Immutable reduced-echelon basis of a subspace of GF(q)^r.

    Vectors are int tuples.  insert() returns a new Span (or self when the
    vector is already inside), which makes backtracking a matter of
    keeping the old reference.
    """

    __slots__ = ("q", "r", "rows", "pivots")

    def __init__(self, q: int, r: int, rows=(), pivots=()):
        self.q = q
        self.r = r
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def full(cls, q: int, r: int) -> "Span":
        rows = tuple(tuple(1 if k == p else 0 for k in range(r)) for p in range(r))
        return cls(q, r, rows, tuple(range(r)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> tuple:
        _, sub, mul, _ = _ops(self.q)
        v = tuple(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                mc = mul[c]
                v = tuple(sub[a][mc[b]] for a, b in zip(v, row))
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def covers(self, other: "Span") -> bool:
        return all(self.contains(row) for row in other.rows)

    def insert(self, vec) -> "Span":
        _, sub, mul, inv = _ops(self.q)
        w = self.reduce(vec)
        p = next((k for k, c in enumerate(w) if c), None)
        if p is None:
            return self
        mi = mul[inv[w[p]]]
        w = tuple(mi[c] for c in w)
        rows, pivots = [], []
        placed = False
        for row, rp in zip(self.rows, self.pivots):
            if not placed and rp > p:
                rows.append(w)
                pivots.append(p)
                placed = True
            c = row[p]
            if c:
                mc = mul[c]
                row = tuple(sub[a][mc[b]] for a, b in zip(row, w))
            rows.append(row)
            pivots.append(rp)
        if not placed:
            rows.append(w)
            pivots.append(p)
        return Span(self.q, self.r, tuple(rows), tuple(pivots))

    def vectors(self) -> list[tuple]:
        """All q^dim members, sparsest first, then by value."""
        add, _, mul, _ = _ops(self.q)
        combos = [(0,) * self.r]
        for row in self.rows:
            scaled = [tuple(mul[c][v] for v in row) for c in range(self.q)]
            combos = [
                tuple(add[a][b] for a, b in zip(base, s))
                for base in combos
                for s in scaled
            ]
        combos.sort(key=lambda v: (sum(1 for c in v if c), v))
        return combos

    def intersect(self, other: "Span") -> "Span":
        if self.dim == self.r:
            return other
        if other.dim == other.r:
            return self
        if self.dim == 0 or other.dim == 0:
            return Span(self.q, self.r)
        add, _, mul, _ = _ops(self.q)
        field = field_make(self.q)
        cols = list(self.rows) + list(other.rows)
        data = tuple(tuple(col[k] for col in cols) for k in range(self.r))
        out = Span(self.q, self.r)
        for coeffs in nullspace(Matrix(field, data)):
            w = (0,) * self.r
            for c, row in zip(coeffs[: self.dim], self.rows):
                if c:
                    mc = mul[c]
                    w = tuple(add[a][mc[b]] for a, b in zip(w, row))
            out = out.insert(w)
        return out


@dataclass(frozen=True)
class SearchProblem:
    """One search question: does a rate-target_rate scalar code exist?

    basis_set, when given, must be an acyclic set of exactly target_rate
    users; otherwise the lex-smallest acyclic set of size
    min(target_rate, MAIS) is pinned automatically.  order is "default"
    (fail-first) or "hint" (a per-instance registered column order).
    budget of None means the INDEXCODE_BUDGET environment variable, or
    10^9 nodes.
    """

    instance: Instance
    field: FieldSpec
    target_rate: int
    basis_set: tuple[int, ...] | None = None
    order: str = "default"
    budget: int | None = None


@dataclass(frozen=True)
class SearchOutcome:
    verdict: str  # "found" | "exhausted" | "budget_exceeded"
    matrix: Matrix | None
    nodes: int
    prunes: dict[str, int]
    basis: tuple[int, ...]


class _BudgetHit(Exception):
    pass


class _Engine:
    def __init__(
        self,
        inst: Instance,
        field: FieldSpec,
        r: int,
        basis: tuple[int, ...],
        hint: tuple[int, ...] | None,
        budget: int,
    ):
        self.inst = inst
        self.field = field
        self.q = field.q
        self.r = r
        self.m = inst.m
        self.basis = basis
        self.hint = hint
        self.budget = budget
        self.nodes = 0
        self.prunes = dict.fromkeys(PRUNE_RULES, 0)
        self.trail: list[tuple] = []

        m = self.m
        self.B = [frozenset()] + [inst.interfering(i) for i in range(1, m + 1)]
        self.vec: list[tuple | None] = [None] * (m + 1)
        full = Span.full(self.q, r)
        self.allowed: list[Span] = [full] * (m + 1)

        # caps: singleton caps enforce dim span(assigned B_i) <= r-1 for
        # every user, pair caps enforce dim span(assigned B_i & B_j) <= r-2
        # for mutually interfering pairs
        self.cap_scope: list[tuple[int, ...]] = []
        self.cap_limit: list[int] = []
        self.cap_user_of: list[int] = []
        self.cap_pair_of: list[tuple[int, int] | None] = []
        self.cap_span: list[Span] = []
        self.caps_of: list[list[int]] = [[] for _ in range(m + 1)]
        self.user_cap = [0] * (m + 1)
        self.endpoint_caps: list[list[int]] = [[] for _ in range(m + 1)]

        empty = Span(self.q, r)
        for i in range(1, m + 1):
            cid = self._new_cap(tuple(sorted(self.B[i])), r - 1, empty)
            self.cap_user_of.append(i)
            self.cap_pair_of.append(None)
            self.user_cap[i] = cid
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if j in self.B[i] and i in self.B[j]:
                    shared = tuple(sorted(self.B[i] & self.B[j]))
                    cid = self._new_cap(shared, r - 2, empty)
                    self.cap_user_of.append(0)
                    self.cap_pair_of.append((i, j))
                    self.endpoint_caps[i].append(cid)
                    self.endpoint_caps[j].append(cid)

    def _new_cap(self, scope: tuple[int, ...], limit: int, empty: Span) -> int:
        cid = len(self.cap_scope)
        self.cap_scope.append(scope)
        self.cap_limit.append(limit)
        self.cap_span.append(empty)
        for u in scope:
            self.caps_of[u].append(cid)
        return cid

    # -- trail ------------------------------------------------------------

    def _undo(self, mark: int):
        while len(self.trail) > mark:
            kind, key, old = self.trail.pop()
            if kind == 0:
                self.vec[key] = None
            elif kind == 1:
                self.cap_span[key] = old
            else:
                self.allowed[key] = old

    # -- propagation ------------------------------------------------------

    def _covered(self, i: int, within: Span) -> bool:
        return within.covers(self.allowed[i])

    def _confine(self, cid: int, tight: Span, touched, changed) -> bool:
        """A cap at its limit pins every future scope column into its span."""
        for w in self.cap_scope[cid]:
            if self.vec[w] is not None:
                continue
            old = self.allowed[w]
            new = old.intersect(tight)
            if new.dim == old.dim:
                continue
            self.allowed[w] = new
            self.trail.append((2, w, old))
            if new.dim == 0:
                self.prunes["forced_empty"] += 1
                return False
            if self._covered(w, self.cap_span[self.user_cap[w]]):
                self.prunes["user_dead"] += 1
                return False
            changed.append(w)
        return True

    def _pair_ok(self, cid: int, i: int, j: int) -> bool:
        """The pair must still be able to add two dimensions of its own."""
        base = self.cap_span[cid]
        need = base.dim + 2
        s = base
        for row in self.allowed[i].rows:
            if s.dim >= need:
                return True
            s = s.insert(row)
        for row in self.allowed[j].rows:
            if s.dim >= need:
                return True
            s = s.insert(row)
        return s.dim >= need

    def _assign(self, u: int, v: tuple) -> bool:
        """Place column u; returns False when a consequence is violated.

        The caller owns the trail mark and must undo on False.
        """
        self.vec[u] = v
        self.trail.append((0, u, None))
        touched: set[int] = set()
        changed: list[int] = []
        for cid in self.caps_of[u]:
            old = self.cap_span[cid]
            new = old.insert(v)
            if new is old:
                continue
            self.cap_span[cid] = new
            self.trail.append((1, cid, old))
            i = self.cap_user_of[cid]
            if i:
                vi = self.vec[i]
                if vi is not None:
                    if new.contains(vi):
                        self.prunes["conflict"] += 1
                        return False
                    continue
                if new.dim > self.cap_limit[cid]:
                    self.prunes["cap_user"] += 1
                    return False
                if new.dim == self.cap_limit[cid] and not self._confine(
                    cid, new, touched, changed
                ):
                    return False
                if self._covered(i, new):
                    self.prunes["user_dead"] += 1
                    return False
                changed.append(i)
            else:
                if new.dim > self.cap_limit[cid]:
                    self.prunes["cap_pair"] += 1
                    return False
                if new.dim == self.cap_limit[cid] and not self._confine(
                    cid, new, touched, changed
                ):
                    return False
                touched.add(cid)
        for w in changed:
            touched.update(self.endpoint_caps[w])
        for cid in touched:
            i, j = self.cap_pair_of[cid]
            if self.vec[i] is None and self.vec[j] is None and not self._pair_ok(
                cid, i, j
            ):
                self.prunes["pair_needs_two"] += 1
                return False
        return True

    def _initial_sweep(self) -> bool:
        """Apply caps that bind before anything is assigned (tiny r only)."""
        for cid in range(len(self.cap_scope)):
            limit = self.cap_limit[cid]
            if limit < 0:
                if self.cap_pair_of[cid] is not None:
                    self.prunes["cap_pair"] += 1
                else:
                    self.prunes["cap_user"] += 1
                return False
            if limit == 0:
                touched: set[int] = set()
                changed: list[int] = []
                if not self._confine(cid, self.cap_span[cid], touched, changed):
                    return False
        return True

    # -- enumeration ------------------------------------------------------

    def _next_column(self) -> int | None:
        if self.hint is not None:
            for u in self.hint:
                if self.vec[u] is None:
                    return u
            return None
        best_dim = None
        best = None
        for u in range(1, self.m + 1):
            if self.vec[u] is None:
                d = self.allowed[u].dim
                if best_dim is None or d < best_dim:
                    best_dim, best = d, u
        return best

    def _search(self) -> Matrix | None:
        u = self._next_column()
        if u is None:
            return self._finish()
        domain = self.allowed[u]
        if self.q**domain.dim > DOMAIN_CAP:
            raise BudgetExceeded(
                f"column {u} has {self.q}^{domain.dim} candidates; "
                f"the domain cap is {DOMAIN_CAP}",
                nodes=self.nodes,
            )
        own = self.cap_span[self.user_cap[u]]
        for v in domain.vectors():
            if not any(v):
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetHit
            if self.nodes % PROGRESS_EVERY == 0:
                log.info(
                    "search at %d nodes, column %d, prunes %s",
                    self.nodes,
                    u,
                    self.prunes,
                )
            if own.contains(v):
                self.prunes["own_span"] += 1
                continue
            mark = len(self.trail)
            if self._assign(u, v):
                got = self._search()
                if got is not None:
                    return got
            self._undo(mark)
        return None

    def _finish(self) -> Matrix:
        data = tuple(
            tuple(self.vec[u][k] for u in range(1, self.m + 1)) for k in range(self.r)
        )
        matrix = Matrix(self.field, data)
        report = verify_linear(self.inst, LinearCode(matrix, t=1))
        if not report.ok:
            raise AssertionError(
                f"search produced an invalid code; failing users {report.failures()}"
            )
        return matrix

    def run(self) -> SearchOutcome:
        def outcome(verdict, matrix=None):
            return SearchOutcome(
                verdict=verdict,
                matrix=matrix,
                nodes=self.nodes,
                prunes=dict(self.prunes),
                basis=self.basis,
            )

        if not self._initial_sweep():
            return outcome("exhausted")
        for k, u in enumerate(self.basis):
            e = tuple(1 if idx == k else 0 for idx in range(self.r))
            if not self.allowed[u].contains(e) or self.cap_span[
                self.user_cap[u]
            ].contains(e):
                return outcome("exhausted")
            if not self._assign(u, e):
                return outcome("exhausted")
        try:
            got = self._search()
        except _BudgetHit:
            return outcome("budget_exceeded")
        if got is None:
            return outcome("exhausted")
        return outcome("found", got)


def scalar_code_search(problem: SearchProblem) -> SearchOutcome:
    """Decide rate-r scalar feasibility; see SearchProblem for the knobs.

    A "found" outcome carries a matrix that has already been re-verified
    through the standalone linear verifier.  "exhausted" certifies that no
    assignment in the normalized space works, which by the normalization
    argument means no scalar code of this rate exists at all.
    """
    inst = problem.instance
    r = problem.target_rate
    if r < 1:
        raise ValueError(f"target rate must be positive, got {r}")
    if r > 8:
        raise ValueError("scalar search supports rates up to 8")
    if r > inst.m:
        raise ValueError(f"target rate {r} exceeds the user count {inst.m}")
    budget = _resolve_budget(problem.budget)

    if problem.basis_set is not None:
        basis = tuple(sorted(set(problem.basis_set)))
        if len(basis) != r:
            raise InvalidBasis(f"basis must contain exactly {r} users, got {basis}")
        if any(u < 1 or u > inst.m for u in basis):
            raise InvalidBasis(f"basis {basis} has users outside 1..{inst.m}")
        if not is_acyclic(inst, basis):
            raise InvalidBasis(f"basis {basis} induces a cycle")
    else:
        size = min(r, mais(inst, want_witness=False).size)
        basis = acyclic_witness(inst, size)

    if problem.order == "hint":
        hint = _HINT_ORDERS.get(inst.name or "")
        if hint is None:
            raise ValueError(f"no column-order hint registered for {inst.name!r}")
        free = set(range(1, inst.m + 1)) - set(basis)
        if set(hint) != free:
            raise ValueError("hint order does not match the free columns")
    elif problem.order == "default":
        hint = None
    else:
        raise ValueError(f"unknown order {problem.order!r}")

    engine = _Engine(inst, problem.field, r, basis, hint, budget)
    return engine.run()


def scalar_minrank(
    inst: Instance,
    field: FieldSpec,
    r_max: int,
    *,
    budget: int | None = None,
) -> int | str:
    """Smallest scalar rate with a code, or "> r_max" if none that small.

    Seeded from below by the MAIS bound, then ascending calls into
    scalar_code_search.  A budget trip surfaces as BudgetExceeded rather
    than a wrong answer.
    """
    if r_max < 1 or r_max > 8:
        raise ValueError("r_max must be between 1 and 8")
    if inst.m == 0:
        return 0
    lo = max(1, mais(inst, want_witness=False).size)
    if lo > r_max:
        return f"> {r_max}"
    for r in range(lo, r_max + 1):
        out = scalar_code_search(
            SearchProblem(inst, field, r, budget=budget)
        )
        if out.verdict == "found":
            return r
        if out.verdict == "budget_exceeded":
            raise BudgetExceeded(
                f"search budget exhausted at rate {r} before a decision",
                nodes=out.nodes,
            )
    return f"> {r_max}"


def brute_force_subinstance(
    inst: Instance, field: FieldSpec, r: int, *, budget: int | None = None
) -> SearchOutcome:
    """Unpruned oracle: every non-basis assignment, checked only when full.

    Same normalization as the pruned search (lex-smallest acyclic basis
    pinned to the identity), no propagation, and the node count is the
    number of complete assignments visited: q^(r * (m - r)) on exhaustion.
    Deliberately restricted to small instances; its job is to certify the
    pruned search's verdicts.
    """
    m = inst.m
    if m > 8:
        raise ValueError("brute force is limited to instances with at most 8 users")
    if r < 1 or r > 4:
        raise ValueError("brute force is limited to rates 1..4")
    if r > m:
        raise ValueError(f"rate {r} exceeds the user count {m}")
    budget = _resolve_budget(budget)
    q = field.q
    basis = acyclic_witness(inst, r)
    free = [u for u in range(1, m + 1) if u not in basis]
    leaves = q ** (r * len(free))
    if leaves > budget:
        raise BudgetExceeded(
            f"{q}^{r * len(free)} assignments exceed the budget {budget}", nodes=0
        )

    col: list[tuple | None] = [None] * (m + 1)
    for k, u in enumerate(basis):
        col[u] = tuple(1 if idx == k else 0 for idx in range(r))

    interferers = [()] + [sorted(inst.interfering(i)) for i in range(1, m + 1)]
    empty = Span(q, r)
    spans = [empty] * (m + 1)
    for i in range(1, m + 1):
        s = empty
        for u in interferers[i]:
            if col[u] is not None:
                s = s.insert(col[u])
        spans[i] = s
    touchers = [[] for _ in range(m + 1)]
    for i in range(1, m + 1):
        for u in interferers[i]:
            if u in free:
                touchers[u].append(i)

    candidates = list(itertools.product(range(q), repeat=r))
    state = {"nodes": 0}

    def walk(depth: int) -> Matrix | None:
        if depth == len(free):
            state["nodes"] += 1
            for i in range(1, m + 1):
                if spans[i].contains(col[i]):
                    return None
            data = tuple(
                tuple(col[u][k] for u in range(1, m + 1)) for k in range(r)
            )
            return Matrix(field, data)
        u = free[depth]
        for v in candidates:
            col[u] = v
            saved = [(i, spans[i]) for i in touchers[u]]
            for i in touchers[u]:
                spans[i] = spans[i].insert(v)
            got = walk(depth + 1)
            for i, old in saved:
                spans[i] = old
            if got is not None:
                return got
        col[u] = None
        return None

    matrix = walk(0)
    if matrix is not None:
        report = verify_linear(inst, LinearCode(matrix, t=1))
        if not report.ok:
            raise AssertionError(
                f"brute force produced an invalid code; failing users "
                f"{report.failures()}"
            )
        return SearchOutcome("found", matrix, state["nodes"], {}, basis)
    return SearchOutcome("exhausted", None, state["nodes"], {}, basis)
