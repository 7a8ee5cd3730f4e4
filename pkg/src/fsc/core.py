"""Transducer model, run semantics and the plain-text transducer file format.

Bit strings are ordinary ``str`` values over ``'0'``/``'1'``; the empty
string is the empty word.  A transducer has states ``1..n`` with start
state 1, and a total table mapping ``(state, bit)`` to ``(target, output)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

_NEGATE = str.maketrans("01", "10")


class TransducerFormatError(ValueError):
    """Raised when a transducer file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def is_bits(s: str) -> bool:
    return not s.strip("01")


def check_bits(s: str, what: str = "bit string") -> str:
    if not isinstance(s, str) or not is_bits(s):
        raise ValueError(f"{what} must consist of 0/1 characters, got {s!r}")
    return s


def negate(s: str) -> str:
    return s.translate(_NEGATE)


@dataclass(frozen=True)
class Transducer:
    """Deterministic sequential transducer over {0,1}.

    ``table[2*(q-1) + a]`` holds ``(target, output)`` for state ``q`` and
    input bit ``a``.  Two transducers are equal iff their tables are equal;
    no renumbering up to isomorphism is done.
    """

    table: tuple[tuple[int, str], ...]

    def __post_init__(self):
        table = tuple((int(t), str(v)) for t, v in self.table)
        if not table or len(table) % 2:
            raise ValueError("transition table must have 2n entries, n >= 1")
        n = len(table) // 2
        for idx, (target, out) in enumerate(table):
            if not 1 <= target <= n:
                q, a = divmod(idx, 2)
                raise ValueError(f"transition ({q + 1}, {a}) targets state {target}, outside 1..{n}")
            check_bits(out, "transition output")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[tuple[int, str]]]) -> "Transducer":
        """Build from per-state pairs ``[(t0, v0), (t1, v1)]`` for states 1..n."""
        table = []
        for pair in rows:
            (t0, v0), (t1, v1) = pair
            table.append((t0, v0))
            table.append((t1, v1))
        return cls(tuple(table))

    @property
    def n(self) -> int:
        return len(self.table) // 2

    def delta(self, q: int, a: int) -> tuple[int, str]:
        return self.table[2 * (q - 1) + a]

    def max_output_length(self) -> int:
        return max(len(v) for _, v in self.table)

    def total_output_length(self) -> int:
        return sum(len(v) for _, v in self.table)

    def negated(self) -> "Transducer":
        """Same structure with every output bitwise negated."""
        return Transducer(tuple((t, negate(v)) for t, v in self.table))

    def run(self, p: str, state: int = 1) -> tuple[str, int]:
        """Return ``(output, final_state)`` of reading ``p`` from ``state``."""
        table = self.table
        out = []
        q = state
        for c in p:
            if c == "0":
                q, v = table[2 * q - 2]
            elif c == "1":
                q, v = table[2 * q - 1]
            else:
                raise ValueError(f"program must be a bit string, got symbol {c!r}")
            out.append(v)
        return "".join(out), q

    def reachable_states(self) -> set[int]:
        seen = {1}
        stack = [1]
        while stack:
            q = stack.pop()
            for a in (0, 1):
                t = self.delta(q, a)[0]
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    def computes_identity(self) -> bool:
        """True iff T(p) = p for every program p."""
        return all(self.delta(q, a)[1] == str(a) for q in self.reachable_states() for a in (0, 1))


def identity_transducer() -> Transducer:
    return Transducer(((1, "0"), (1, "1")))


def evaluate(t: Transducer, p: str) -> str:
    """Output of ``t`` on input ``p``, starting from state 1."""
    return t.run(p)[0]


def parse_transducer(text: str) -> Transducer:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != "fst v1":
        raise TransducerFormatError("malformed header, expected 'fst v1'", 1)
    if len(lines) < 2:
        raise TransducerFormatError("missing 'states <n>' line", 2)
    head = lines[1].split(" ")
    if len(head) != 2 or head[0] != "states" or not head[1].isdigit() or int(head[1]) < 1:
        raise TransducerFormatError("malformed header, expected 'states <n>' with n >= 1", 2)
    n = int(head[1])
    table: list[tuple[int, str]] = []
    for q in range(1, n + 1):
        for a in (0, 1):
            lineno = 2 * q + a + 1
            if lineno > len(lines):
                raise TransducerFormatError(f"missing transition line for ({q}, {a})", lineno)
            fields = lines[lineno - 1].split(" ")
            if len(fields) != 4:
                raise TransducerFormatError("transition line needs 4 fields '<q> <bit> <target> <output>'", lineno)
            sq, sa, st, out = fields
            if not (sq.isdigit() and sa in ("0", "1") and st.isdigit()):
                raise TransducerFormatError("malformed transition line", lineno)
            if (int(sq), int(sa)) != (q, a):
                raise TransducerFormatError(f"expected transition ({q}, {a}), got ({sq}, {sa})", lineno)
            target = int(st)
            if not 1 <= target <= n:
                raise TransducerFormatError(f"state index out of range: {target} not in 1..{n}", lineno)
            if out == "-":
                out = ""
            elif not out or not is_bits(out):
                raise TransducerFormatError(f"non-binary output symbol in {out!r}", lineno)
            table.append((target, out))
    if len(lines) > 2 * n + 2:
        raise TransducerFormatError("unexpected content after the last transition", 2 * n + 3)
    return Transducer(tuple(table))


def serialize_transducer(t: Transducer) -> str:
    lines = ["fst v1", f"states {t.n}"]
    for idx, (target, out) in enumerate(t.table):
        q, a = divmod(idx, 2)
        lines.append(f"{q + 1} {a} {target} {out or '-'}")
    return "\n".join(lines) + "\n"
