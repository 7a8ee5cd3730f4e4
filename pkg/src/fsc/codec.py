"""The standard encoding of transducers as self-delimiting bit strings.

A transition ``Δ(q, a) = (i, v)`` is written as ``bin(i)^‡ · v^⋄``, where the
target part is omitted for self-loops.  Target blocks start with ``1`` and
output blocks with ``0``, and both are read two bits at a time, so a code
string parses in a single left-to-right pass.
"""

from __future__ import annotations

from itertools import islice, product
from typing import Collection, Iterable, Iterator

from .core import Transducer, check_bits, negate


class DecodeError(ValueError):
    """A string is not a valid standard encoding.

    ``kind`` is one of ``"truncated"``, ``"missing-output"``,
    ``"block-count"``, ``"state-range"`` or ``"explicit-self-loop"``;
    ``position`` is the offset where the problem was detected.
    """

    def __init__(self, kind: str, position: int, message: str):
        self.kind = kind
        self.position = position
        super().__init__(f"{message} (at bit {position})")


def bin_(i: int) -> str:
    if i < 1:
        raise ValueError(f"bin() is defined for i >= 1, got {i}")
    return format(i, "b")


def dagger(v: str) -> str:
    """Self-delimiting form ``v1 0 v2 0 ... v_{m-1} 0 v_m 1`` of a nonempty ``v``."""
    if not v:
        raise ValueError("dagger is only defined on nonempty strings")
    return "".join(c + "0" for c in v[:-1]) + v[-1] + "1"


def diamond(v: str) -> str:
    return negate(dagger("1" + v))


def std_block_length(target: int, output: str, self_state: int) -> int:
    cost = 2 * len(output) + 2
    if target != self_state:
        cost += 2 * target.bit_length()
    return cost


def std_length(t: Transducer) -> int:
    """``|encode_std(t)|`` computed arithmetically."""
    return sum(std_block_length(target, out, idx // 2 + 1) for idx, (target, out) in enumerate(t.table))


def encode_std(t: Transducer) -> str:
    parts = []
    for idx, (target, out) in enumerate(t.table):
        if target != idx // 2 + 1:
            parts.append(dagger(bin_(target)))
        parts.append(diamond(out))
    return "".join(parts)


def _read_pairs(sigma: str, pos: int, stop_bit: str) -> tuple[str, int]:
    """Read pairs from ``pos`` until one whose second bit is ``stop_bit``."""
    payload = []
    n = len(sigma)
    while True:
        if pos + 2 > n:
            raise DecodeError("truncated", pos, "code ends inside a block")
        payload.append(sigma[pos])
        second = sigma[pos + 1]
        pos += 2
        if second == stop_bit:
            return "".join(payload), pos


def _parse_blocks(sigma: str) -> list[tuple[int | None, str, int]]:
    """Split into transitions ``(explicit target or None, output, offset)``."""
    blocks = []
    pos = 0
    n = len(sigma)
    while pos < n:
        start = pos
        target = None
        if sigma[pos] == "1":
            digits, pos = _read_pairs(sigma, pos, "1")
            target = int(digits, 2)
            if pos >= n or sigma[pos] != "0":
                raise DecodeError("missing-output", pos, "target block not followed by an output block")
        payload, pos = _read_pairs(sigma, pos, "0")
        # payload is the negation of 1·v
        blocks.append((target, negate(payload[1:]), start))
    return blocks


def decode_std(sigma: str) -> Transducer:
    check_bits(sigma, "code")
    if len(sigma) % 2:
        raise DecodeError("truncated", len(sigma) - 1, "odd-length code")
    blocks = _parse_blocks(sigma)
    if not blocks or len(blocks) % 2:
        raise DecodeError("block-count", len(sigma), f"{len(blocks)} transitions cannot form a 2n-entry table")
    n = len(blocks) // 2
    table = []
    for idx, (target, out, offset) in enumerate(blocks):
        own = idx // 2 + 1
        if target is None:
            target = own
        elif target == own:
            raise DecodeError("explicit-self-loop", offset, f"self-loop on state {own} written with an explicit target")
        elif target > n:
            raise DecodeError("state-range", offset, f"target {target} outside 1..{n}")
        table.append((target, out))
    return Transducer(tuple(table))


def is_valid_std(sigma: str) -> bool:
    try:
        decode_std(sigma)
    except (DecodeError, ValueError):
        return False
    return True


def _outputs_by_length(outputs: Collection[str] | None, max_len: int) -> list[list[str]]:
    by_len: list[list[str]] = [[] for _ in range(max_len + 1)]
    if outputs is None:
        for k in range(max_len + 1):
            by_len[k] = ["".join(bits) for bits in product("01", repeat=k)]
    else:
        for v in sorted(set(outputs)):
            if len(v) <= max_len:
                by_len[len(v)].append(v)
    return by_len


def std_bucket(length: int, outputs: Collection[str] | None = None) -> Iterator[Transducer]:
    """Every transducer whose standard code has exactly ``length`` bits.

    ``outputs`` restricts transition outputs to the given strings.  The
    generation order is deterministic but not lexicographic in the code.
    """
    if length < 4 or length % 2:
        return
    by_len = _outputs_by_length(outputs, (length - 4) // 2)
    for n in range(1, length // 4 + 1):
        slots = 2 * n
        target_cost = [0] + [2 * i.bit_length() for i in range(1, n + 1)]
        table: list[tuple[int, str]] = [(0, "")] * slots

        def fill(t: int, remaining: int) -> Iterator[Transducer]:
            if t == slots:
                if remaining == 0:
                    yield Transducer(tuple(table))
                return
            rest_min = 2 * (slots - t - 1)
            own = t // 2 + 1
            for target in range(1, n + 1):
                tc = 0 if target == own else target_cost[target]
                room = remaining - rest_min - tc - 2
                if room < 0:
                    continue
                if t == slots - 1:
                    # last slot must use the remaining budget exactly
                    if room % 2:
                        continue
                    k = room // 2
                    for v in by_len[k] if k < len(by_len) else ():
                        table[t] = (target, v)
                        yield Transducer(tuple(table))
                    continue
                for k in range(min(room // 2, len(by_len) - 1) + 1):
                    cost = tc + 2 * k + 2
                    for v in by_len[k]:
                        table[t] = (target, v)
                        yield from fill(t + 1, remaining - cost)

        yield from fill(0, length)


def enumerate_std(budget: int, outputs: Collection[str] | None = None) -> Iterator[tuple[Transducer, int]]:
    """All transducers with code length ``<= budget`` as ``(T, length)``.

    Ordered by length, then by the code string.
    """
    for length in range(4, budget + 1, 2):
        bucket = sorted(std_bucket(length, outputs), key=encode_std)
        for t in bucket:
            yield t, length


def slice_stream(stream: Iterable, start: int, stop: int | None) -> Iterator:
    """Deterministic index-range slice of an enumeration stream."""
    return islice(stream, start, stop)
