"""Concrete strings and transducers with their numeric bounds.

Two families are built here:

* the coin transducer, which prints ``w_m = 1 0^1 1 0^2 1 ... 0^m 1`` by
  routing to per-denomination states and looping there;
* the 2n-state ladder transducer printing ``x_n(m) = u_1^{m²} ... u_{2n+1}^{m²}``
  with a program of length ``(2n+1)m + 2n - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .codec import encode_std, std_length
from .core import Transducer, evaluate

DEFAULT_COINS = (1, 5, 10, 18, 25, 50)

# state of each denomination and the silent input word reaching it from state 1
COIN_STATES = {1: 7, 5: 8, 10: 9, 18: 10, 25: 11, 50: 12}
COIN_ROUTES = {1: "010", 5: "011", 10: "0010", 18: "0011", 25: "0000", 50: "0001"}


def w_string(m: int) -> str:
    if m < 1:
        raise ValueError("w_m is defined for m >= 1")
    return "1" + "".join("0" * i + "1" for i in range(1, m + 1))


def coin_transducer() -> Transducer:
    rows = {
        1: [(2, ""), (1, "1")],
        2: [(4, ""), (3, "")],
        3: [(7, ""), (8, "")],
        4: [(6, ""), (5, "")],
        5: [(9, ""), (10, "")],
        6: [(11, ""), (12, "")],
    }
    for coin, state in COIN_STATES.items():
        rows[state] = [(state, "0" * coin), (1, "")]
    return Transducer.from_rows(rows[q] for q in range(1, 13))


def coin_table(limit: int, coins=DEFAULT_COINS) -> list[tuple[int, ...]]:
    """Minimum-cardinality decompositions of ``0..limit``, largest coins first.

    Ties go to the lexicographically largest descending tuple.
    """
    coins = sorted(set(coins), reverse=True)
    if 1 not in coins:
        raise ValueError("coin system must contain 1")
    best: list[tuple[int, ...]] = [()]
    for amount in range(1, limit + 1):
        options = []
        for c in coins:
            if c <= amount:
                options.append(tuple(sorted(best[amount - c] + (c,), reverse=True)))
        best.append(min(options, key=lambda combo: (len(combo), [-v for v in combo])))
    return best


def min_coin_decomposition(i: int, coins=DEFAULT_COINS) -> tuple[int, ...]:
    if i < 0:
        raise ValueError("amount must be non-negative")
    return coin_table(i, coins)[i]


def mean_coin_count(limit: int = 99, coins=DEFAULT_COINS) -> Fraction:
    table = coin_table(limit, coins)
    return Fraction(sum(len(c) for c in table), limit + 1)


def coin_program(m: int) -> str:
    """A program ``p`` with ``coin_transducer()(p) == w_string(m)``."""
    if not 1 <= m <= 99:
        raise ValueError("coin_program supports 1 <= m <= 99")
    table = coin_table(m)
    parts = ["1"]
    for i in range(1, m + 1):
        for coin in sorted(set(table[i]), reverse=True):
            parts.append(COIN_ROUTES[coin] + "0" * table[i].count(coin) + "1")
        parts.append("1")
    return "".join(parts)


def theorem2_u(i: int, n: int) -> str:
    if not 1 <= i <= 2 * n + 1:
        raise ValueError(f"u_i needs 1 <= i <= {2 * n + 1}, got {i}")
    return "1" + "0" * i + "1" * (2 * n + 2 - i)


def theorem2_x(n: int, m: int) -> str:
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return "".join(theorem2_u(i, n) * (m * m) for i in range(1, 2 * n + 2))


def theorem2_transducer(n: int, m: int) -> tuple[Transducer, str]:
    """The 2n-state ladder and the program ``(0^m 1)^{2n-1} 0^m 1^m``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    table = []
    for j in range(1, 2 * n):
        table += [(j, theorem2_u(j, n) * m), (j + 1, "")]
    table += [(2 * n, theorem2_u(2 * n, n) * m), (2 * n, theorem2_u(2 * n + 1, n) * m)]
    p1 = ("0" * m + "1") * (2 * n - 1) + "0" * m + "1" * m
    return Transducer(tuple(table)), p1


def theorem2_m(n: int) -> int:
    return 16 * n * n + 36 * n + 19


def theorem2_sigma_bound(n: int, m: int) -> int:
    return (8 * n * n + 16 * n + 8) * m + (4 * n - 2) * (math.ceil(math.log2(2 * n)) + 1)


@dataclass
class HierarchyWitness:
    n: int
    m: int
    x_len: int
    states: int
    p1_len: int
    sigma_len: int
    bound_rhs: int
    mm_half: Fraction
    output_ok: bool

    @property
    def p1_formula_ok(self) -> bool:
        return self.p1_len == (2 * self.n + 1) * self.m + 2 * self.n - 1

    @property
    def sigma_ok(self) -> bool:
        return self.sigma_len <= self.bound_rhs

    @property
    def total_ok(self) -> bool:
        return self.sigma_len + self.p1_len < self.mm_half

    @property
    def state_bound(self) -> int:
        """Largest state count a minimal description of the witness can have.

        Every state costs at least 4 code bits and the program is nonempty,
        so ``4k + 1 <= |σ₁| + |p₁|``.
        """
        return (self.sigma_len + self.p1_len - 1) // 4

    @property
    def k_n(self) -> int:
        """Gap with ``L_{<=n} ⊂ L_{<=n+k_n}``, from the constructive bound."""
        return self.state_bound - self.n

    @property
    def passed(self) -> bool:
        return self.output_ok and self.p1_formula_ok and self.sigma_ok and self.total_ok


def verify_theorem2_bounds(n: int, m: int | None = None, max_n: int = 3) -> HierarchyWitness:
    """Build the ladder witness and check its upper bounds exactly.

    Only the constructive half is checked; the lower bound for descriptions
    with at most n states is far beyond exhaustive search at this scale.
    """
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the materialization budget (max_n = {max_n})")
    if m is None:
        m = theorem2_m(n)
    t, p1 = theorem2_transducer(n, m)
    x = theorem2_x(n, m)
    sigma_len = len(encode_std(t))
    assert sigma_len == std_length(t)
    return HierarchyWitness(
        n=n,
        m=m,
        x_len=len(x),
        states=t.n,
        p1_len=len(p1),
        sigma_len=sigma_len,
        bound_rhs=theorem2_sigma_bound(n, m),
        mm_half=Fraction(m * m, 2),
        output_ok=evaluate(t, p1) == x,
    )


@dataclass
class Example1Report:
    sigma_len: int
    mean_coins: Fraction
    w_len: int
    program_len: int
    output_ok: bool

    def checks(self) -> list[tuple[str, bool, str]]:
        total = self.sigma_len + self.program_len
        return [
            ("sigma_length_352", self.sigma_len == 352, str(self.sigma_len)),
            ("mean_coins_3.18", self.mean_coins == Fraction(318, 100), str(float(self.mean_coins))),
            ("w99_length_5050", self.w_len == 5050, str(self.w_len)),
            ("program_output_w99", self.output_ok, str(self.output_ok)),
            ("program_at_most_2008", self.program_len <= 2008, str(self.program_len)),
            ("description_at_most_2360", total <= 2360, str(total)),
        ]


def verify_example1() -> Example1Report:
    t = coin_transducer()
    p = coin_program(99)
    w = w_string(99)
    return Example1Report(
        sigma_len=len(encode_std(t)),
        mean_coins=mean_coin_count(99),
        w_len=len(w),
        program_len=len(p),
        output_ok=evaluate(t, p) == w,
    )
