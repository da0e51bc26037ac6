"""Brute-force oracles used to cross-check the decision procedures.

Everything here re-derives the step relations from raw edge data instead
of calling the engine helpers, so an engine bug cannot silently agree
with its oracle.  All searches carry explicit state budgets and raise
BudgetExceededError rather than run unbounded; the sweeps size their
instances so the budgets are never the binding constraint.
"""

from __future__ import annotations

import itertools
from collections import deque
from random import Random

from .errors import BudgetExceededError
from .multigraph import DirectedMultigraph, IntVector
from .rotorrouting import ChipRotorConfig, RibbonStructure, default_ribbon

DEFAULT_MAX_STATES = 200_000
DEFAULT_MAX_STEPS = 200_000


def _chip_successors(g: DirectedMultigraph, x: IntVector):
    """All single-firing successors of x, skipping no-op sink firings."""
    for v in range(g.n):
        deg = sum(g.mult[v])
        if deg == 0 or x[v] < deg:
            continue
        nxt = list(x)
        nxt[v] -= deg
        for u in range(g.n):
            nxt[u] += g.mult[v][u]
        yield tuple(nxt)


def bfs_reach_chip(
    g: DirectedMultigraph,
    x: IntVector,
    y: IntVector,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Exhaustive search for a legal chip game from x to y."""
    x = tuple(x)
    y = tuple(y)
    if x == y:
        return True
    seen = {x}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        for nxt in _chip_successors(g, cur):
            if nxt == y:
                return True
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise BudgetExceededError(
                        f"chip reachability search exceeded {max_states} states"
                    )
                seen.add(nxt)
                queue.append(nxt)
    return False


def _expanded_heads(ribbon: RibbonStructure) -> list[list[int]]:
    """Flat cyclic order per vertex, one entry per out-edge position."""
    heads: list[list[int]] = []
    for rs in ribbon.runs:
        flat: list[int] = []
        for head, count in rs:
            flat.extend([head] * count)
        heads.append(flat)
    return heads


def _rotor_successors(heads: list[list[int]], state: ChipRotorConfig):
    chips, rotors = state
    for v, flat in enumerate(heads):
        if not flat or chips[v] <= 0:
            continue
        pos = (rotors[v] + 1) % len(flat)
        head = flat[pos]
        nchips = list(chips)
        nchips[v] -= 1
        nchips[head] += 1
        nrotors = list(rotors)
        nrotors[v] = pos
        yield ChipRotorConfig(tuple(nchips), tuple(nrotors))


def bfs_reach_rotor(
    ribbon: RibbonStructure,
    c1: ChipRotorConfig,
    c2: ChipRotorConfig,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Exhaustive search for a legal rotor game from c1 to c2."""
    if c1 == c2:
        return True
    heads = _expanded_heads(ribbon)
    seen = {c1}
    queue = deque([c1])
    while queue:
        cur = queue.popleft()
        for nxt in _rotor_successors(heads, cur):
            if nxt == c2:
                return True
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise BudgetExceededError(
                        f"rotor reachability search exceeded {max_states} states"
                    )
                seen.add(nxt)
                queue.append(nxt)
    return False


def oracle_is_recurrent(
    g: DirectedMultigraph,
    x: IntVector,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Whether some nonempty legal game returns to x, by exhaustive search."""
    x = tuple(x)
    seen = {x}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        for nxt in _chip_successors(g, cur):
            if nxt == x:
                return True
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise BudgetExceededError(
                        f"recurrence search exceeded {max_states} states"
                    )
                seen.add(nxt)
                queue.append(nxt)
    return False


def random_maximal_bounded_chip_game(
    g: DirectedMultigraph,
    x: IntVector,
    bound: IntVector,
    rng: Random,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[IntVector, IntVector]:
    """A uniformly random maximal bound-respecting legal game, one firing
    at a time.  Returns (firing vector, final configuration)."""
    degs = [sum(row) for row in g.mult]
    cur = list(x)
    fired = [0] * g.n
    for _ in range(max_steps):
        eligible = [
            v
            for v in range(g.n)
            if fired[v] < bound[v] and cur[v] >= degs[v]
        ]
        if not eligible:
            return tuple(fired), tuple(cur)
        v = rng.choice(eligible)
        cur[v] -= degs[v]
        for u in range(g.n):
            cur[u] += g.mult[v][u]
        fired[v] += 1
    raise BudgetExceededError(f"random chip game exceeded {max_steps} steps")


def random_maximal_bounded_rotor_game(
    ribbon: RibbonStructure,
    config: ChipRotorConfig,
    bound: IntVector,
    rng: Random,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[IntVector, ChipRotorConfig]:
    """A uniformly random maximal bound-respecting legal rotor game."""
    heads = _expanded_heads(ribbon)
    chips = list(config.chips)
    rotors = list(config.rotors)
    routed = [0] * ribbon.n
    for _ in range(max_steps):
        eligible = [
            v
            for v in range(ribbon.n)
            if heads[v] and routed[v] < bound[v] and chips[v] > 0
        ]
        if not eligible:
            return tuple(routed), ChipRotorConfig(tuple(chips), tuple(rotors))
        v = rng.choice(eligible)
        pos = (rotors[v] + 1) % len(heads[v])
        rotors[v] = pos
        chips[v] -= 1
        chips[heads[v][pos]] += 1
        routed[v] += 1
    raise BudgetExceededError(f"random rotor game exceeded {max_steps} steps")


def random_legal_chip_sequence(
    g: DirectedMultigraph,
    x: IntVector,
    length: int,
    rng: Random,
) -> tuple[int, ...]:
    """A random legal firing sequence from x, stopping early when stuck.

    Sinks are skipped: their firings are no-ops and would pad the
    sequence without moving anything.
    """
    degs = [sum(row) for row in g.mult]
    cur = list(x)
    seq: list[int] = []
    for _ in range(length):
        eligible = [v for v in range(g.n) if degs[v] and cur[v] >= degs[v]]
        if not eligible:
            break
        v = rng.choice(eligible)
        cur[v] -= degs[v]
        for u in range(g.n):
            cur[u] += g.mult[v][u]
        seq.append(v)
    return tuple(seq)


def enumerate_digraphs(n: int, max_mult: int):
    """All loop-free multigraphs on n labeled vertices, multiplicities
    in [0, max_mult] per ordered pair, in lexicographic order."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mults in itertools.product(range(max_mult + 1), repeat=len(pairs)):
        rows = [[0] * n for _ in range(n)]
        for (u, v), m in zip(pairs, mults):
            rows[u][v] = m
        yield DirectedMultigraph(n, tuple(tuple(row) for row in rows))


def enumerate_chip_vectors(n: int, max_total: int):
    """Nonnegative chip vectors of length n with sum <= max_total."""
    for chips in itertools.product(range(max_total + 1), repeat=n):
        if sum(chips) <= max_total:
            yield chips


def enumerate_instances(n: int, max_mult: int, max_total_chips: int, seed=None):
    """Stream of (graph, default ribbon, ChipRotorConfig) instances.

    With seed None the stream is exhaustive over digraphs, chip vectors
    and rotor states, in deterministic order; desk-scale parameters only.
    With a seed, an endless replayable random stream over the same space.
    """
    if seed is None:
        for g in enumerate_digraphs(n, max_mult):
            ribbon = default_ribbon(g)
            degs = ribbon.degrees
            rotor_ranges = [range(d) if d else (None,) for d in degs]
            for chips in enumerate_chip_vectors(n, max_total_chips):
                for rotors in itertools.product(*rotor_ranges):
                    yield g, ribbon, ChipRotorConfig(chips, rotors)
        return
    rng = Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    while True:
        rows = [[0] * n for _ in range(n)]
        for u, v in pairs:
            rows[u][v] = rng.randint(0, max_mult)
        g = DirectedMultigraph(n, tuple(tuple(row) for row in rows))
        ribbon = default_ribbon(g)
        while True:
            chips = tuple(
                rng.randint(0, max_total_chips) for _ in range(n)
            )
            if sum(chips) <= max_total_chips:
                break
        rotors = tuple(
            rng.randrange(d) if d else None for d in ribbon.degrees
        )
        yield g, ribbon, ChipRotorConfig(chips, rotors)


def reachability_matrix(g: DirectedMultigraph) -> tuple[tuple[bool, ...], ...]:
    """reach[u][v]: a directed path from u to v exists (u reaches itself)."""
    reach = [
        [u == v or g.mult[u][v] > 0 for v in range(g.n)] for u in range(g.n)
    ]
    for k in range(g.n):
        rk = reach[k]
        for u in range(g.n):
            if reach[u][k]:
                ru = reach[u]
                for v in range(g.n):
                    if rk[v]:
                        ru[v] = True
    return tuple(tuple(row) for row in reach)
