"""Reference computations that share no search logic with the package.

These are deliberately naive: they decode raw bit strings and try programs
one by one.
"""

from __future__ import annotations

import random
from collections import defaultdict
from itertools import product

from fsc.codec import decode_std, is_valid_std
from fsc.core import Transducer


def all_bitstrings(max_len: int, min_len: int = 0):
    for k in range(min_len, max_len + 1):
        for bits in product("01", repeat=k):
            yield "".join(bits)


def valid_codes(max_len: int) -> list[str]:
    """Every standard code of length <= max_len, found by filtering all strings."""
    return [s for s in all_bitstrings(max_len) if is_valid_std(s)]


def naive_minimal_descriptions(max_x: int, max_size: int) -> dict[str, tuple[int, set[tuple[str, str]]]]:
    """``x -> (C(x), {(sigma, p)})`` for every ``|x| <= max_x``.

    Tries every valid code and every program with ``|σ| + |p| <= max_size``.
    Only correct for strings whose complexity is at most ``max_size``.
    Programs are extended one bit at a time; a prefix is dropped once its
    output is longer than ``max_x`` because outputs never shrink.
    """
    found: dict[str, list] = defaultdict(list)
    for sigma in valid_codes(max_size):
        t = decode_std(sigma)
        room = max_size - len(sigma)
        frontier = [("", 1, "")]
        while frontier:
            p, q, out = frontier.pop()
            found[out].append((len(sigma) + len(p), sigma, p))
            if len(p) == room:
                continue
            for a in (0, 1):
                target, v = t.table[2 * q - 2 + a]
                nxt = out + v
                if len(nxt) <= max_x:
                    frontier.append((p + str(a), target, nxt))
    result = {}
    for x in all_bitstrings(max_x):
        entries = found[x]
        best = min(size for size, _, _ in entries)
        result[x] = (best, {(s, p) for size, s, p in entries if size == best})
    return result


def brute_force_program(t: Transducer, x: str) -> str | None:
    """Shortest program printing ``x``, lexicographically least, or None.

    Iterative deepening over programs whose output so far is a prefix of
    ``x``.  A run that revisits a (state, position) pair is dropped because
    cutting out the cycle gives a shorter program with the same output; so
    no shortest program is longer than the number of such pairs.
    """
    limit = t.n * (len(x) + 1)
    for length in range(limit + 1):
        hit = _dfs(t, x, length, 1, 0, [], {(1, 0)})
        if hit is not None:
            return hit
    return None


def _dfs(t, x, remaining, q, j, prefix, seen):
    if remaining == 0:
        return "".join(prefix) if j == len(x) else None
    for a in (0, 1):
        target, v = t.table[2 * q - 2 + a]
        if x[j : j + len(v)] != v or j + len(v) > len(x):
            continue
        node = (target, j + len(v))
        if node in seen:
            continue
        seen.add(node)
        prefix.append(str(a))
        hit = _dfs(t, x, remaining - 1, target, j + len(v), prefix, seen)
        prefix.pop()
        seen.discard(node)
        if hit is not None:
            return hit
    return None


def coin_count_bfs(amount: int, coins) -> int:
    """Fewest coins summing to ``amount``, by breadth-first search over sums."""
    level = {0}
    seen = {0}
    steps = 0
    while amount not in level:
        steps += 1
        level = {s + c for s in level for c in coins if s + c <= amount} - seen
        seen |= level
    return steps


def random_transducer(rng: random.Random, max_states: int = 3, max_out: int = 3) -> Transducer:
    n = rng.randint(1, max_states)
    table = []
    for _ in range(2 * n):
        k = rng.randint(0, max_out)
        table.append((rng.randint(1, n), "".join(rng.choice("01") for _ in range(k))))
    return Transducer(tuple(table))


def step_interpreter(rows: dict[int, dict[str, tuple[int, str]]], p: str) -> str:
    """Run a transition table given as nested dicts, one symbol at a time."""
    state, out = 1, ""
    for c in p:
        state, v = rows[state][c]
        out += v
    return out
