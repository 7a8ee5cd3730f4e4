"""Exact finite-state complexity by length-ordered enumeration.

Transducers are visited in order of code length.  For each one the
shortest programs printing ``x`` are found by breadth-first search on the
product graph of states and matched prefix lengths.  The search stops once
no longer code can beat (or tie) the best description found, which makes
the result exact and the set of minimal descriptions complete.
"""

from __future__ import annotations

import json
import sys
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .core import Transducer, check_bits, evaluate, negate
from .encodings import CodeRecord, EncodingScheme, S0, identity_overhead

NO_PROGRAM = sys.maxsize


class IncompleteSearch(RuntimeError):
    """Raised when a result is needed but the search hit its budget cap."""


@dataclass(frozen=True)
class Description:
    scheme: str
    code: CodeRecord
    program: str
    states: int

    @property
    def sigma(self) -> str:
        return self.code.describe()

    @property
    def size(self) -> int:
        return self.code.length + len(self.program)

    def sort_key(self):
        return (self.code.sort_key(), self.program)

    def to_dict(self) -> dict:
        return {"sigma": self.sigma, "program": self.program, "states": self.states}


@dataclass
class ComplexityReport:
    input: str
    scheme: str
    complexity: int
    exact: bool
    descriptions: list[Description]
    stats: dict = field(default_factory=dict)

    @property
    def state_sizes(self) -> list[int]:
        return sorted({d.states for d in self.descriptions})

    @property
    def min_state_size(self) -> int | None:
        sizes = self.state_sizes
        return sizes[0] if sizes else None

    @property
    def witness(self) -> Description | None:
        return self.descriptions[0] if self.descriptions else None

    def to_dict(self, all_minimal: bool = True, stats: bool = True) -> dict:
        descs = self.descriptions if all_minimal else self.descriptions[:1]
        out = {
            "input": self.input,
            "scheme": self.scheme,
            "complexity": self.complexity,
            "exact": self.exact,
            "descriptions": [d.to_dict() for d in descs],
            "state_sizes": self.state_sizes,
        }
        if stats:
            out["stats"] = self.stats
        return out

    def to_json(self, all_minimal: bool = True, stats: bool = True) -> str:
        return json.dumps(self.to_dict(all_minimal, stats), indent=2)


# -- single transducer --------------------------------------------------


def _edges(t: Transducer, x: str, q: int, j: int) -> Iterator[tuple[str, int, int]]:
    for a in (0, 1):
        target, v = t.table[2 * q - 2 + a]
        if x.startswith(v, j):
            yield "01"[a], target, j + len(v)


def minimal_program(t: Transducer, x: str) -> str | None:
    """Shortest ``p`` with ``evaluate(t, p) == x``, lexicographically least.

    BFS from ``(1, 0)`` over nodes ``(state, matched length)``; an edge exists
    when the transition output matches ``x`` at the current position.
    Expanding bit 0 before bit 1 in FIFO order makes the first path found to
    any node the lexicographically least among its shortest paths.
    """
    goal = len(x)
    if goal == 0:
        return ""
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {(1, 0): None}
    queue = deque([(1, 0)])
    while queue:
        node = queue.popleft()
        for bit, q, j in _edges(t, x, *node):
            nxt = (q, j)
            if nxt in parent:
                continue
            parent[nxt] = (node, bit)
            if j == goal:
                bits = []
                cur = nxt
                while parent[cur] is not None:
                    cur, b = parent[cur]
                    bits.append(b)
                return "".join(reversed(bits))
            queue.append(nxt)
    return None


def shortest_programs(t: Transducer, x: str) -> list[str]:
    """Every shortest program printing ``x``, in lexicographic order."""
    goal = len(x)
    if goal == 0:
        return [""]
    dist = {(1, 0): 0}
    order = [(1, 0)]
    depth = None
    i = 0
    while i < len(order):
        node = order[i]
        i += 1
        d = dist[node]
        if depth is not None and d >= depth:
            break
        for _, q, j in _edges(t, x, *node):
            if (q, j) not in dist:
                dist[(q, j)] = d + 1
                order.append((q, j))
                if j == goal and depth is None:
                    depth = d + 1
    if depth is None:
        return []

    # nodes from which a goal is reachable along distance-increasing edges
    useful = {n for n in dist if n[1] == goal and dist[n] == depth}
    for node in sorted(dist, key=dist.get, reverse=True):
        if node in useful or dist[node] >= depth:
            continue
        for _, q, j in _edges(t, x, *node):
            if (q, j) in useful and dist.get((q, j)) == dist[node] + 1:
                useful.add(node)
                break

    found: list[str] = []

    def walk(node, prefix):
        if node[1] == goal:
            found.append("".join(prefix))
            return
        for bit, q, j in _edges(t, x, *node):
            nxt = (q, j)
            if nxt in useful and dist[nxt] == dist[node] + 1:
                prefix.append(bit)
                walk(nxt, prefix)
                prefix.pop()

    if (1, 0) in useful:
        walk((1, 0), [])
    return found


def lower_program_bound(t: Transducer, x: str) -> int:
    """Admissible lower bound on ``len(minimal_program(t, x))``.

    Returns ``NO_PROGRAM`` when ``t`` has no nonempty output at all.
    """
    if not x:
        return 0
    longest = t.max_output_length()
    if longest == 0:
        return NO_PROGRAM
    return max(1, -(-len(x) // longest))


def substrings(x: str) -> set[str]:
    return {x[i:j] for i in range(len(x) + 1) for j in range(i, len(x) + 1)}


# -- exact complexity ---------------------------------------------------


def _scan_bucket(scheme: EncodingScheme, x: str, items, length: int, best: int, use_bound: bool):
    """Descriptions of size ``<= best`` among ``items`` (all of code ``length``)."""
    found = []
    examined = searched = 0
    floor = 1 if x else 0
    for t in items:
        examined += 1
        lb = lower_program_bound(t, x) if use_bound else floor
        if length + lb > best:
            continue
        searched += 1
        progs = shortest_programs(t, x)
        if not progs:
            continue
        size = length + len(progs[0])
        if size > best:
            continue
        if size < best:
            best = size
            found = [f for f in found if f[0] <= best]
        found.append((size, t, progs))
    return found, examined, searched


def _scan_slice(args):
    scheme, x, items, length, best, use_bound = args
    return _scan_bucket(scheme, x, items, length, best, use_bound)


def complexity(
    x: str,
    scheme: EncodingScheme = S0,
    budget: int | None = None,
    jobs: int = 1,
    use_bound: bool = True,
    use_shape: bool = True,
    executor=None,
) -> ComplexityReport:
    """Exact ``C_S(x)`` with every minimal description.

    ``budget`` caps the code lengths enumerated; when the cap falls below
    the proven cutoff the report is marked inexact and its complexity is
    only an upper bound.  ``use_shape`` restricts transition outputs to
    substrings of ``x``; in a minimal description every used output is such
    a substring and every unused transition could be replaced by a cheaper
    ε-self-loop, so the restriction never changes the result.
    """
    check_bits(x, "input")
    started = time.perf_counter()
    best = identity_overhead(scheme) + len(x)
    outputs = substrings(x) if use_shape else None
    floor = 1 if x else 0
    found: list[tuple[int, Transducer, list[str]]] = []
    examined = searched = 0
    exact = True
    length = 0
    own_pool = None
    if jobs > 1 and executor is None:
        executor = own_pool = ProcessPoolExecutor(jobs)
    try:
        while length <= best - floor:
            if budget is not None and length > budget:
                exact = False
                break
            bucket = list(scheme.bucket(length, outputs))
            if jobs > 1 and len(bucket) > 1:
                step = -(-len(bucket) // jobs)
                slices = [
                    (scheme, x, bucket[i : i + step], length, best, use_bound) for i in range(0, len(bucket), step)
                ]
                parts = list(executor.map(_scan_slice, slices))
            else:
                parts = [_scan_bucket(scheme, x, bucket, length, best, use_bound)]
            for part, ex, se in parts:
                examined += ex
                searched += se
                found.extend(part)
            if found:
                best = min(best, min(f[0] for f in found))
                found = [f for f in found if f[0] == best]
            length += 1
    finally:
        if own_pool is not None:
            own_pool.shutdown()

    descriptions = sorted(
        (Description(scheme.id, scheme.encode(t), p, t.n) for _, t, progs in found for p in progs),
        key=Description.sort_key,
    )
    stats = {
        "candidates": examined,
        "searched": searched,
        "max_code_length": length - 1,
        "seconds": round(time.perf_counter() - started, 6),
    }
    return ComplexityReport(x, scheme.id, best, exact, descriptions, stats)


def state_size_membership(
    x: str, scheme: EncodingScheme, m: int, report: ComplexityReport | None = None
) -> tuple[bool, bool, bool]:
    """Membership of ``x`` in ``L_{<=m}``, ``L_{=m}`` and ``L_{∃min m}``."""
    if report is None:
        report = complexity(x, scheme)
    if not report.exact:
        raise IncompleteSearch(f"search for {x!r} did not reach the proven cutoff")
    low = report.min_state_size
    return low <= m, low == m, m in report.state_sizes


# -- tables -------------------------------------------------------------


def all_strings(cap: int) -> list[str]:
    return ["".join(bits) for k in range(cap + 1) for bits in product("01", repeat=k)]


@dataclass
class ScanTable:
    scheme: str
    cap: int
    rows: list[ComplexityReport]
    complete: bool

    def shortest_by_states(self) -> dict[int, int]:
        """Empirical shortest length of a string whose minimum state count is n."""
        ell: dict[int, int] = {}
        for r in self.rows:
            if r.exact and r.min_state_size is not None:
                ell.setdefault(r.min_state_size, len(r.input))
        return dict(sorted(ell.items()))

    def mixed_state_witnesses(self) -> list[str]:
        """Strings with minimal descriptions of different state counts."""
        return [r.input for r in self.rows if len(r.state_sizes) > 1]

    def to_tsv(self) -> str:
        lines = ["x\tcomplexity\tmin_states\tsigma\tprogram"]
        for r in self.rows:
            w = r.witness
            lines.append(
                "\t".join(
                    [r.input or "-", str(r.complexity), str(r.min_state_size), w.sigma if w else "-", (w.program or "-") if w else "-"]
                )
            )
        if not self.complete:
            lines.append("# INCOMPLETE: budget exceeded, table is partial")
        for n, ell in self.shortest_by_states().items():
            lines.append(f"# shortest length with {n} minimal states: {ell}")
        return "\n".join(lines) + "\n"


def _scan_row(args):
    x, scheme, budget = args
    report = complexity(x, scheme, budget=budget)
    report.stats = {}
    return report


def scan(cap: int, scheme: EncodingScheme = S0, budget: int | None = None, jobs: int = 1) -> ScanTable:
    xs = all_strings(cap)
    work = [(x, scheme, budget) for x in xs]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(_scan_row, work, chunksize=8))
    else:
        reports = [_scan_row(w) for w in work]
    rows = []
    for r in reports:
        rows.append(r)
        if not r.exact:
            return ScanTable(scheme.id, cap, rows, complete=False)
    return ScanTable(scheme.id, cap, rows, complete=True)


@dataclass
class PowerRow:
    k: int
    complexity: int
    min_state_size: int | None
    exact: bool
    flagged: bool


def power_probe(w: str, kmax: int, scheme: EncodingScheme = S0, budget: int | None = None) -> list[PowerRow]:
    """Complexity of ``w^k`` for ``k = 1..kmax``.

    A row is flagged when ``w^k`` needs fewer states than ``w``, which would
    contradict the conjecture that powers never drop below the base's
    minimum state count.
    """
    check_bits(w, "w")
    base = complexity(w, scheme, budget=budget)
    rows = []
    for k in range(1, kmax + 1):
        r = base if k == 1 else complexity(w * k, scheme, budget=budget)
        flagged = (
            r.exact and base.exact and r.min_state_size is not None and r.min_state_size < base.min_state_size
        )
        rows.append(PowerRow(k, r.complexity, r.min_state_size, r.exact, flagged))
    return rows


def negation_closed(table: ScanTable) -> bool:
    by_x = {r.input: r.complexity for r in table.rows}
    return all(by_x[negate(x)] == c for x, c in by_x.items() if negate(x) in by_x)


def check_report(report: ComplexityReport, scheme: EncodingScheme) -> None:
    """Assert the soundness invariants of a report."""
    for d in report.descriptions:
        t = scheme.decode(d.code)
        assert evaluate(t, d.program) == report.input
        assert d.size == report.complexity
    if report.descriptions:
        assert report.descriptions == sorted(report.descriptions, key=Description.sort_key)
