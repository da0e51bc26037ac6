"""Chip-firing dynamics: legal games, bounded games, reachability, recurrence, halting.

Chip configurations are plain int tuples indexed by vertex and may be
negative.  A firing at v is legal when v keeps a nonnegative pile, that
is x(v) >= outdeg(v).  All game procedures are deterministic (smallest
eligible vertex first); the bounded-game abelian property makes the
outcome schedule-independent, so determinism costs nothing and buys
reproducible traces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError
from .intlinalg import nonneg_reduced_solution, primitive_period_vector
from .multigraph import DirectedMultigraph, IntVector, is_strongly_connected

ChipConfig = IntVector
CountVector = IntVector

DEFAULT_MAX_BATCHES = 1_000_000
DEFAULT_MAX_STEPS = 1_000_000
DEFAULT_MAX_STATES = 500_000


def fire(g: DirectedMultigraph, x: ChipConfig, v: int) -> ChipConfig:
    """Unconstrained firing: v sends one chip along each outgoing edge."""
    out = list(x)
    out[v] -= g.out_degree(v)
    for u, m in enumerate(g.mult[v]):
        if m:
            out[u] += m
    return tuple(out)


def is_legal_fire(g: DirectedMultigraph, x: ChipConfig, v: int) -> bool:
    return x[v] >= g.out_degree(v)


def fire_many(g: DirectedMultigraph, x: ChipConfig, v: int, k: int) -> ChipConfig:
    """Fire v exactly k times in one arithmetic step."""
    if k < 0:
        raise ValueError("repetition count must be nonnegative")
    out = list(x)
    out[v] -= k * g.out_degree(v)
    for u, m in enumerate(g.mult[v]):
        if m:
            out[u] += k * m
    return tuple(out)


@dataclass(frozen=True)
class ChipGameTrace:
    """A legal game as batches: fire ``vertex`` ``count`` times in a row."""

    initial: ChipConfig
    batches: tuple[tuple[int, int], ...]
    final: ChipConfig
    firing_vector: CountVector

    def replay(self, g: DirectedMultigraph) -> bool:
        """Re-run the batches, checking legality of every single firing."""
        cur = self.initial
        fired = [0] * g.n
        for v, k in self.batches:
            deg = g.out_degree(v)
            # within a batch v only loses chips, so checking the k-th
            # firing's precondition covers all k of them
            if k < 1 or cur[v] < (k * deg if deg else 0):
                return False
            cur = fire_many(g, cur, v, k)
            fired[v] += k
        return cur == self.final and tuple(fired) == self.firing_vector


@dataclass(frozen=True)
class BoundedChipResult:
    firing_vector: CountVector
    final: ChipConfig
    trace: ChipGameTrace


def bounded_chip_game(
    g: DirectedMultigraph,
    x: ChipConfig,
    bound: CountVector,
    max_batches: int = DEFAULT_MAX_BATCHES,
) -> BoundedChipResult:
    """Play a maximal legal game firing each v at most bound(v) times.

    The firing vector and final configuration are the same for every
    maximal bounded schedule, so the deterministic greedy one (smallest
    eligible vertex, largest safe batch) is canonical.  Raises
    BudgetExceededError when more than ``max_batches`` batches are needed.
    """
    _check_count_vector(g, bound)
    if len(x) != g.n:
        raise ValueError("chip configuration length must match the vertex count")
    degs = g.out_degrees()
    cur = list(x)
    fired = [0] * g.n
    batches: list[tuple[int, int]] = []
    while True:
        batch = None
        for v in range(g.n):
            remaining = bound[v] - fired[v]
            if remaining <= 0 or cur[v] < degs[v]:
                continue
            if degs[v] == 0:
                # firing a sink moves nothing; burn the whole bound at once
                batch = (v, remaining)
            else:
                batch = (v, min(remaining, cur[v] // degs[v]))
            break
        if batch is None:
            break
        if len(batches) >= max_batches:
            raise BudgetExceededError(
                f"bounded chip game exceeded {max_batches} batches"
            )
        v, k = batch
        cur[v] -= k * degs[v]
        for u, m in enumerate(g.mult[v]):
            if m:
                cur[u] += k * m
        fired[v] += k
        batches.append(batch)
    final = tuple(cur)
    return BoundedChipResult(
        firing_vector=tuple(fired),
        final=final,
        trace=ChipGameTrace(tuple(x), tuple(batches), final, tuple(fired)),
    )


@dataclass(frozen=True)
class ChipReachVerdict:
    """Outcome of a chip reachability query.

    decision is "YES", "NO" or "UNKNOWN" (budget ran out; never a wrong
    answer).  On YES, ``firing_vector`` is the reduced vector of a legal
    game from source to target and ``trace`` replays one such game.
    """

    decision: str
    firing_vector: CountVector | None = None
    reason: str | None = None
    trace: ChipGameTrace | None = None


def reach_chip(
    g: DirectedMultigraph,
    x: ChipConfig,
    y: ChipConfig,
    max_batches: int = DEFAULT_MAX_BATCHES,
) -> ChipReachVerdict:
    """Decide whether some legal game leads from x to y.

    y is reachable iff the unique reduced nonnegative f with
    L f = y - x exists and the maximal f-bounded game from x fires
    exactly f.  x reaches itself via the empty game.
    """
    if len(x) != g.n or len(y) != g.n:
        raise ValueError("configuration length must match the vertex count")
    d = tuple(b - a for a, b in zip(x, y))
    f = nonneg_reduced_solution(g, d)
    if f is None:
        return ChipReachVerdict("NO", reason="no-nonneg-firing-vector")
    try:
        result = bounded_chip_game(g, x, f, max_batches=max_batches)
    except BudgetExceededError:
        return ChipReachVerdict("UNKNOWN", firing_vector=f, reason="budget-exceeded")
    if result.firing_vector == f:
        return ChipReachVerdict("YES", firing_vector=f, trace=result.trace)
    return ChipReachVerdict("NO", firing_vector=f, reason="bounded-game-stuck")


def is_recurrent(
    g: DirectedMultigraph,
    x: ChipConfig,
    max_batches: int = DEFAULT_MAX_BATCHES,
) -> bool:
    """Whether a nonempty legal game returns to x (strongly connected g).

    Equivalent to the maximal p-bounded game from x firing the whole
    primitive period vector p.
    """
    p = _require_period(g)
    return bounded_chip_game(g, x, p, max_batches=max_batches).firing_vector == p


def is_recurrent_via_reach(
    g: DirectedMultigraph,
    x: ChipConfig,
    max_batches: int = DEFAULT_MAX_BATCHES,
) -> bool:
    """Recurrence through the reachability reduction.

    Fire the smallest legally fireable vertex v, then test whether the
    result reaches x back, as the (p - 1_v)-bounded game achieving its
    full bound.  Stable configurations are never recurrent.
    """
    p = _require_period(g)
    v = next((u for u in range(g.n) if is_legal_fire(g, x, u)), None)
    if v is None:
        return False
    bound = tuple(p[u] - (1 if u == v else 0) for u in range(g.n))
    result = bounded_chip_game(g, fire(g, x, v), bound, max_batches=max_batches)
    return result.firing_vector == bound


def lin_equiv(g: DirectedMultigraph, x: ChipConfig, y: ChipConfig) -> CountVector | None:
    """The reduced f >= 0 with y = x + L f, or None when not equivalent.

    Requires strong connectivity (symmetry of the relation needs a
    positive period vector).
    """
    if not is_strongly_connected(g):
        raise ValueError("linear equivalence requires a strongly connected graph")
    if len(x) != g.n or len(y) != g.n:
        raise ValueError("configuration length must match the vertex count")
    return nonneg_reduced_solution(g, tuple(b - a for a, b in zip(x, y)))


@dataclass(frozen=True)
class HaltingVerdict:
    """Result of simulating the unbounded game from x.

    kind is "halts", "non-halting" or "budget-exceeded".  A non-halting
    verdict carries a certificate: a configuration seen twice, hence
    recurrent and linearly equivalent to x.  ``witness_to_certificate``
    counts the firings from x to the certificate's first visit and
    ``witness_cycle`` the firings around the observed loop.
    """

    kind: str
    final: ChipConfig | None = None
    firing_vector: CountVector | None = None
    certificate: ChipConfig | None = None
    witness_to_certificate: CountVector | None = None
    witness_cycle: CountVector | None = None


def halts(
    g: DirectedMultigraph,
    x: ChipConfig,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_states: int = DEFAULT_MAX_STATES,
) -> HaltingVerdict:
    """Simulate the greedy legal game until it stabilizes or loops.

    The visited space is finite (piles never drop below min(x(v), 0) and
    the total is conserved), so on a non-halting instance some
    configuration repeats; that repeat is the non-halting certificate.
    """
    if not is_strongly_connected(g):
        raise ValueError("halting analysis requires a strongly connected graph")
    if len(x) != g.n:
        raise ValueError("configuration length must match the vertex count")
    cur = tuple(x)
    fired = [0] * g.n
    seen: dict[ChipConfig, CountVector] = {cur: tuple(fired)}
    for _ in range(max_steps):
        v = next((u for u in range(g.n) if is_legal_fire(g, cur, u)), None)
        if v is None:
            return HaltingVerdict("halts", final=cur, firing_vector=tuple(fired))
        cur = fire(g, cur, v)
        fired[v] += 1
        if cur in seen:
            first = seen[cur]
            return HaltingVerdict(
                "non-halting",
                certificate=cur,
                witness_to_certificate=first,
                witness_cycle=tuple(b - a for a, b in zip(first, fired)),
            )
        if len(seen) >= max_states:
            return HaltingVerdict("budget-exceeded")
        seen[cur] = tuple(fired)
    return HaltingVerdict("budget-exceeded")


def verify_nonhalting_certificate(g: DirectedMultigraph, x: ChipConfig, y: ChipConfig) -> bool:
    """Check that y proves x non-halting: x ~ y and y is recurrent."""
    return lin_equiv(g, x, y) is not None and is_recurrent(g, y)


def validate_legal_firing_sequence(g: DirectedMultigraph, x: ChipConfig, seq) -> bool:
    """True when each firing in seq is legal at its moment."""
    cur = x
    for v in seq:
        if not is_legal_fire(g, cur, v):
            return False
        cur = fire(g, cur, v)
    return True


def _require_period(g: DirectedMultigraph) -> IntVector:
    if not is_strongly_connected(g):
        raise ValueError("recurrence requires a strongly connected graph")
    return primitive_period_vector(g)


def _check_count_vector(g: DirectedMultigraph, vec: IntVector) -> None:
    if len(vec) != g.n:
        raise ValueError("count vector length must match the vertex count")
    if any(k < 0 for k in vec):
        raise ValueError("count vector must be nonnegative")
