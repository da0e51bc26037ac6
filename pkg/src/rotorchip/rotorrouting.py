"""Rotor-routing dynamics on ribbon digraphs with run-length-encoded orders.

A ribbon structure fixes, for every vertex, a cyclic order of its
outgoing edges.  Orders are stored as runs (head, count): ``count``
consecutive parallel edges to ``head``.  All closed-form operations cost
O(number of runs) arbitrary-precision operations, never O(degree), so
multiplicities around 10**18 stay cheap.

A chip-and-rotor configuration pairs a chip vector with a rotor
position per non-sink vertex (a flat index into the cyclic order).  A
routing at v first advances the rotor one position, then sends one chip
from v along the new rotor edge; it is legal when v holds at least one
chip.  Sinks have no rotor and are never routed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import BudgetExceededError
from .intlinalg import nonneg_reduced_solution
from .multigraph import DirectedMultigraph, IntVector

CountVector = IntVector

DEFAULT_MAX_BATCHES = 1_000_000

Run = tuple[int, int]


@dataclass(frozen=True)
class RibbonStructure:
    """Cyclic out-edge orders, one run list per vertex.

    ``runs[v]`` lists (head, count) pairs; position i in [0, degree(v))
    refers to the i-th edge when the runs are laid out in order.  The
    cyclic order wraps from the last position back to position 0.
    Construction validates shape only; ``validate_against`` ties the run
    totals to a graph's edge multiplicities.
    """

    runs: tuple[tuple[Run, ...], ...]

    def __post_init__(self) -> None:
        runs = tuple(tuple((int(h), int(c)) for h, c in rs) for rs in self.runs)
        object.__setattr__(self, "runs", runs)
        n = len(runs)
        for v, rs in enumerate(runs):
            for head, count in rs:
                if not 0 <= head < n:
                    raise ValueError(f"run head {head} out of range at vertex {v}")
                if head == v:
                    raise ValueError(f"self-loop run at vertex {v}")
                if count < 1:
                    raise ValueError(f"run count must be positive at vertex {v}")
        object.__setattr__(
            self, "degrees", tuple(sum(c for _, c in rs) for rs in runs)
        )

    @property
    def n(self) -> int:
        return len(self.runs)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def is_sink(self, v: int) -> bool:
        return self.degrees[v] == 0

    def head_at(self, v: int, pos: int) -> int:
        """Head of the out-edge at flat position pos in v's cyclic order."""
        if not 0 <= pos < self.degrees[v]:
            raise ValueError(f"position {pos} out of range at vertex {v}")
        acc = 0
        for head, count in self.runs[v]:
            acc += count
            if pos < acc:
                return head
        raise AssertionError("unreachable: runs cover all positions")

    def validate_against(self, g: DirectedMultigraph) -> None:
        """Require run totals per head to equal the graph's multiplicities."""
        if self.n != g.n:
            raise ValueError("ribbon vertex count differs from the graph")
        for v in range(g.n):
            totals = [0] * g.n
            for head, count in self.runs[v]:
                totals[head] += count
            if tuple(totals) != g.mult[v]:
                raise ValueError(
                    f"ribbon runs at vertex {v} do not match edge multiplicities"
                )

    def canonical(self) -> "RibbonStructure":
        """Merge adjacent runs with equal heads (positions are preserved)."""
        merged = []
        for rs in self.runs:
            out: list[Run] = []
            for head, count in rs:
                if out and out[-1][0] == head:
                    out[-1] = (head, out[-1][1] + count)
                else:
                    out.append((head, count))
            merged.append(tuple(out))
        return RibbonStructure(tuple(merged))


def default_ribbon(g: DirectedMultigraph) -> RibbonStructure:
    """One run per distinct successor, heads in ascending order."""
    return RibbonStructure(
        tuple(
            tuple((u, m) for u, m in enumerate(g.mult[v]) if m)
            for v in range(g.n)
        )
    )


class ChipRotorConfig(NamedTuple):
    """Chips per vertex plus rotor positions (None exactly at sinks)."""

    chips: IntVector
    rotors: tuple[int | None, ...]


def default_rotors(ribbon: RibbonStructure) -> tuple[int | None, ...]:
    return tuple(None if ribbon.is_sink(v) else 0 for v in range(ribbon.n))


def validate_config(ribbon: RibbonStructure, config: ChipRotorConfig) -> None:
    n = ribbon.n
    if len(config.chips) != n or len(config.rotors) != n:
        raise ValueError("configuration length must match the vertex count")
    for v in range(n):
        pos = config.rotors[v]
        if ribbon.is_sink(v):
            if pos is not None:
                raise ValueError(f"sink vertex {v} must carry no rotor")
        elif pos is None or not 0 <= pos < ribbon.degree(v):
            raise ValueError(f"rotor position at vertex {v} out of range")


def rotor_edge(
    ribbon: RibbonStructure, rotors: tuple[int | None, ...], v: int
) -> tuple[int, int]:
    """(head, position) of v's current rotor edge."""
    pos = rotors[v]
    if pos is None:
        raise ValueError(f"vertex {v} is a sink and has no rotor")
    return ribbon.head_at(v, pos), pos


def is_legal_route(ribbon: RibbonStructure, config: ChipRotorConfig, v: int) -> bool:
    return not ribbon.is_sink(v) and config.chips[v] > 0


def route(ribbon: RibbonStructure, config: ChipRotorConfig, v: int) -> ChipRotorConfig:
    """One unconstrained routing at v: advance the rotor, then send a chip.

    Routing at a sink moves nothing and is the identity.
    """
    d = ribbon.degree(v)
    if d == 0:
        return config
    pos = (config.rotors[v] + 1) % d
    head = ribbon.head_at(v, pos)
    chips = list(config.chips)
    chips[v] -= 1
    chips[head] += 1
    rotors = list(config.rotors)
    rotors[v] = pos
    return ChipRotorConfig(tuple(chips), tuple(rotors))


def _window_overlap(a: int, c: int, w0: int, w: int, d: int) -> int:
    """Size of [a, a+c) meeting the cyclic window [w0, w0+w) modulo d."""
    if w == 0:
        return 0
    hi = w0 + w
    if hi <= d:
        return max(0, min(a + c, hi) - max(a, w0))
    return max(0, min(a + c, d) - max(a, w0)) + max(0, min(a + c, hi - d) - a)


def pi_r(
    ribbon: RibbonStructure,
    config: ChipRotorConfig,
    r: CountVector,
) -> ChipRotorConfig:
    """Route each vertex v exactly r(v) times, ignoring legality.

    Unconstrained routings commute, so the result is order-independent.
    Each full rotor turn sends one chip along every out-edge; the partial
    turn covers the cyclic window of the r(v) % degree(v) positions
    stepped onto.  Cost is O(total runs) big-integer operations.
    """
    _check_routing_vector(ribbon, r)
    chips = list(config.chips)
    rotors = list(config.rotors)
    for v in range(ribbon.n):
        rv = r[v]
        if rv == 0:
            continue
        d = ribbon.degrees[v]
        pos = rotors[v]
        full, rem = divmod(rv, d)
        chips[v] -= rv
        w0 = (pos + 1) % d
        start = 0
        for head, count in ribbon.runs[v]:
            gain = full * count + _window_overlap(start, count, w0, rem, d)
            if gain:
                chips[head] += gain
            start += count
        rotors[v] = (pos + rv) % d
    return ChipRotorConfig(tuple(chips), tuple(rotors))


def route_many(
    ribbon: RibbonStructure,
    config: ChipRotorConfig,
    v: int,
    k: int,
) -> ChipRotorConfig:
    """k unconstrained routings at a single vertex, in closed form."""
    if k < 0:
        raise ValueError("repetition count must be nonnegative")
    r = tuple(k if u == v else 0 for u in range(ribbon.n))
    return pi_r(ribbon, config, r)


@dataclass(frozen=True)
class RotorGameTrace:
    """A legal rotor game as batches: route ``vertex`` ``count`` times."""

    initial: ChipRotorConfig
    batches: tuple[tuple[int, int], ...]
    final: ChipRotorConfig
    routing_vector: CountVector

    def replay(self, ribbon: RibbonStructure) -> bool:
        """Re-run the batches, checking legality of every single routing.

        Within a batch only v loses chips and loses exactly one per
        routing, so chips(v) >= k certifies all k leg checks.
        """
        cur = self.initial
        routed = [0] * ribbon.n
        for v, k in self.batches:
            if k < 1 or ribbon.is_sink(v) or cur.chips[v] < k:
                return False
            cur = route_many(ribbon, cur, v, k)
            routed[v] += k
        return cur == self.final and tuple(routed) == self.routing_vector


@dataclass(frozen=True)
class BoundedRotorResult:
    routing_vector: CountVector
    final: ChipRotorConfig
    trace: RotorGameTrace


def bounded_rotor_game(
    ribbon: RibbonStructure,
    config: ChipRotorConfig,
    bound: CountVector,
    max_batches: int = DEFAULT_MAX_BATCHES,
) -> BoundedRotorResult:
    """Play a maximal legal rotor game routing each v at most bound(v) times.

    Bounded rotor games are abelian, so the deterministic greedy schedule
    (smallest eligible vertex, largest safe batch) yields the canonical
    routing vector, the game's odometer.
    """
    validate_config(ribbon, config)
    if len(bound) != ribbon.n:
        raise ValueError("bound length must match the vertex count")
    if any(b < 0 for b in bound):
        raise ValueError("bound must be nonnegative")
    chips = list(config.chips)
    rotors = list(config.rotors)
    routed = [0] * ribbon.n
    batches: list[tuple[int, int]] = []
    while True:
        batch = None
        for v in range(ribbon.n):
            if ribbon.degrees[v] == 0:
                continue
            remaining = bound[v] - routed[v]
            if remaining > 0 and chips[v] > 0:
                batch = (v, min(remaining, chips[v]))
                break
        if batch is None:
            break
        if len(batches) >= max_batches:
            raise BudgetExceededError(
                f"bounded rotor game exceeded {max_batches} batches"
            )
        v, k = batch
        cur = route_many(ribbon, ChipRotorConfig(tuple(chips), tuple(rotors)), v, k)
        chips = list(cur.chips)
        rotors = list(cur.rotors)
        routed[v] += k
        batches.append(batch)
    final = ChipRotorConfig(tuple(chips), tuple(rotors))
    return BoundedRotorResult(
        routing_vector=tuple(routed),
        final=final,
        trace=RotorGameTrace(config, tuple(batches), final, tuple(routed)),
    )


def unconstrained_reach(
    g: DirectedMultigraph,
    ribbon: RibbonStructure,
    c1: ChipRotorConfig,
    c2: ChipRotorConfig,
) -> CountVector | None:
    """The reduced r >= 0 with pi_r(c1) = c2, or None when none exists.

    Rotor positions force r modulo the degrees (the alignment part r1);
    beyond that only whole turns remain, and a whole turn at v moves
    chips exactly like firing v.  So r = r1 + z * deg with z the reduced
    nonnegative solution of L z = chips2 - pi_r1(c1).chips.
    """
    validate_config(ribbon, c1)
    validate_config(ribbon, c2)
    degs = ribbon.degrees
    r1 = tuple(
        0 if degs[v] == 0 else (c2.rotors[v] - c1.rotors[v]) % degs[v]
        for v in range(ribbon.n)
    )
    aligned = pi_r(ribbon, c1, r1)
    if aligned.rotors != c2.rotors:
        return None
    z = nonneg_reduced_solution(
        g, tuple(b - a for a, b in zip(aligned.chips, c2.chips))
    )
    if z is None:
        return None
    return tuple(r1[v] + z[v] * degs[v] for v in range(ribbon.n))


def reachability_sets(
    ribbon: RibbonStructure,
    target: ChipRotorConfig,
    r: CountVector,
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """The obstruction sets (S1, T, S2) for realizing routing vector r legally.

    S1: vertices that must route but end with negative chips; always an
    obstruction because a vertex's last legal routing leaves it at >= 0
    and later it only gains.  T: vertices that must route and end at
    exactly 0.  S2: vertices of T whose forward orbit under the target
    rotor edges stays inside T; such a vertex's last outgoing chip can
    never be replaced, so no legal order exists.  A legal game realizing
    r exists iff S1 and S2 are both empty.
    """
    y = target.chips
    s1 = tuple(v for v in range(ribbon.n) if r[v] > 0 and y[v] < 0)
    t = tuple(v for v in range(ribbon.n) if r[v] > 0 and y[v] == 0)
    tset = frozenset(t)
    succ = {v: ribbon.head_at(v, target.rotors[v]) for v in t}
    escaped = set()
    preds: dict[int, list[int]] = {}
    stack = []
    for v in t:
        if succ[v] in tset:
            preds.setdefault(succ[v], []).append(v)
        else:
            escaped.add(v)
            stack.append(v)
    while stack:
        u = stack.pop()
        for w in preds.get(u, ()):
            if w not in escaped:
                escaped.add(w)
                stack.append(w)
    s2 = tuple(v for v in t if v not in escaped)
    return s1, t, s2


@dataclass(frozen=True)
class RotorReachVerdict:
    """Outcome of a rotor reachability query.

    decision is "YES" or "NO" (the procedure is polynomial and always
    conclusive).  On YES, ``routing_vector`` is the reduced odometer of
    a legal game from source to target, and ``trace`` replays one such
    game when the trace budget allowed producing it.  On NO, ``reason``
    says whether unconstrained routing already fails or which
    obstruction set is nonempty.
    """

    decision: str
    routing_vector: CountVector | None = None
    s1: tuple[int, ...] = ()
    t: tuple[int, ...] = ()
    s2: tuple[int, ...] = ()
    reason: str | None = None
    trace: RotorGameTrace | None = None


def reach_rotor(
    g: DirectedMultigraph,
    ribbon: RibbonStructure,
    c1: ChipRotorConfig,
    c2: ChipRotorConfig,
    max_batches: int = DEFAULT_MAX_BATCHES,
) -> RotorReachVerdict:
    """Decide whether some legal rotor game leads from c1 to c2.

    Reachable iff c2 is the unconstrained image under the reduced r and
    both obstruction sets for that r are empty.  On YES the r-bounded
    game achieves odometer r, so its trace is a legal witness; if the
    trace budget runs out the decision stands with trace = None.
    """
    r = unconstrained_reach(g, ribbon, c1, c2)
    if r is None:
        return RotorReachVerdict("NO", reason="not-unconstrained-reachable")
    s1, t, s2 = reachability_sets(ribbon, c2, r)
    if s1 or s2:
        return RotorReachVerdict(
            "NO",
            routing_vector=r,
            s1=s1,
            t=t,
            s2=s2,
            reason="s1-nonempty" if s1 else "s2-nonempty",
        )
    try:
        trace = bounded_rotor_game(ribbon, c1, r, max_batches=max_batches).trace
    except BudgetExceededError:
        trace = None
    return RotorReachVerdict("YES", routing_vector=r, t=t, trace=trace)


def odometer_equals_bound(
    ribbon: RibbonStructure,
    config: ChipRotorConfig,
    r: CountVector,
) -> bool:
    """Whether the maximal r-bounded legal game routes the full bound r.

    Decided without simulation: the odometer reaches r iff some legal
    order realizes r, iff both obstruction sets for the unconstrained
    image pi_r(config) are empty.
    """
    validate_config(ribbon, config)
    target = pi_r(ribbon, config, r)
    s1, _, s2 = reachability_sets(ribbon, target, r)
    return not s1 and not s2


def validate_legal_routing_sequence(
    ribbon: RibbonStructure,
    config: ChipRotorConfig,
    seq: Iterable[int],
) -> bool:
    """True when each routing in seq is legal at its moment."""
    cur = config
    for v in seq:
        if not is_legal_route(ribbon, cur, v):
            return False
        cur = route(ribbon, cur, v)
    return True


def _check_routing_vector(ribbon: RibbonStructure, r: CountVector) -> None:
    if len(r) != ribbon.n:
        raise ValueError("routing vector length must match the vertex count")
    for v, rv in enumerate(r):
        if rv < 0:
            raise ValueError("routing vector must be nonnegative")
        if rv > 0 and ribbon.is_sink(v):
            raise ValueError(f"routing vector positive at sink vertex {v}")
