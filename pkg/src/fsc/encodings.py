"""Computable bijective encodings of transducers.

Besides the standard encoding this module provides three alternative
schemes that rebalance code lengths in favour of a chosen family:

``S1``   the prime-output family ``T_n`` gets code ``bin(n)``; every other
         transducer is ``0`` followed by its standard code.
``S1p``  polynomial-time variant: ``T_n`` gets ``bin(n)^† · 1^n`` and every
         other transducer ``0 · σ^† · 1^(2^|σ|)``.
``Snm``  codes ``10`` / ``11`` for an n-state and an m-state transducer
         that print the same witness; everything else padded as in ``S1p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Collection, Iterator

from .codec import (
    DecodeError,
    bin_,
    dagger,
    decode_std,
    encode_std,
    std_bucket,
    std_length,
)
from .core import Transducer, check_bits

MATERIALIZE_LIMIT = 1 << 20


class SchemeError(ValueError):
    """A code is not in the domain of a scheme."""


@dataclass(frozen=True)
class CodeRecord:
    """A code string that may be too long to hold in memory.

    ``head`` is the explicit prefix and ``pad`` the number of trailing
    ``1`` symbols, so the code is ``head + "1" * pad``.
    """

    head: str
    pad: int = 0

    @property
    def length(self) -> int:
        return len(self.head) + self.pad

    @property
    def explicit(self) -> bool:
        return self.length <= MATERIALIZE_LIMIT

    @property
    def bits(self) -> str:
        if not self.explicit:
            raise OverflowError(f"code of length {self.length} is not materialized")
        return self.head + "1" * self.pad

    def describe(self) -> str:
        """The bits when short enough, else ``head+1^pad``."""
        if self.pad == 0:
            return self.head
        if self.length <= 4096:
            return self.bits
        return f"{self.head}+1^{self.pad}"

    def sort_key(self) -> tuple:
        if self.explicit:
            return (self.length, self.bits)
        return (self.length, self.head, self.pad)


def as_record(code: "str | CodeRecord") -> CodeRecord:
    if isinstance(code, CodeRecord):
        return code
    check_bits(code, "code")
    return CodeRecord(code)


# -- primes -------------------------------------------------------------

_primes: list[int] = [2, 3, 5, 7, 11, 13]


def nth_prime(n: int) -> int:
    """The n-th prime, 1-based; the sieve is extended as needed."""
    if n < 1:
        raise ValueError("primes are indexed from 1")
    limit = 2 * _primes[-1]
    while len(_primes) < n:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(limit**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
        _primes[:] = [i for i, flag in enumerate(sieve) if flag]
        limit *= 2
    return _primes[n - 1]


def prime_family(n: int) -> Transducer:
    """``T_n``: state 1 loops ``0/0^{p_n}``, input 1 walks to state n silently."""
    if n < 1:
        raise ValueError("T_n needs n >= 1")
    table = []
    for q in range(1, n + 1):
        table.append((q, "0" * nth_prime(n) if q == 1 else ""))
        table.append((min(q + 1, n), ""))
    return Transducer(tuple(table))


def prime_family_index(t: Transducer) -> int | None:
    """``n`` if ``t`` is ``T_n``, else None."""
    n = t.n
    target, out = t.table[0]
    if target != 1 or out.count("1") or len(out) != nth_prime(n):
        return None
    for q in range(1, n + 1):
        if q > 1 and t.delta(q, 0) != (q, ""):
            return None
        if t.delta(q, 1) != (min(q + 1, n), ""):
            return None
    return n


def _read_dagger(code: str, pos: int = 0) -> tuple[str, int] | None:
    payload = []
    while pos + 2 <= len(code):
        payload.append(code[pos])
        pos += 2
        if code[pos - 1] == "1":
            return "".join(payload), pos
    return None


# -- schemes ------------------------------------------------------------


class EncodingScheme:
    """A decidable domain of codes with a bijection onto all transducers."""

    id: str = ""

    def contains(self, code: "str | CodeRecord") -> bool:
        try:
            self.decode(code)
        except (SchemeError, DecodeError, ValueError, OverflowError):
            return False
        return True

    def decode(self, code: "str | CodeRecord") -> Transducer:
        raise NotImplementedError

    def encode(self, t: Transducer) -> CodeRecord:
        raise NotImplementedError

    def code_length(self, t: Transducer) -> int:
        return self.encode(t).length

    def bucket(self, length: int, outputs: Collection[str] | None = None) -> Iterator[Transducer]:
        """Transducers with code length exactly ``length``.

        ``outputs`` only narrows the standard-encoded branches, never the
        scheme-specific family codes.
        """
        raise NotImplementedError

    def enumerate(self, budget: int, outputs: Collection[str] | None = None) -> Iterator[tuple[Transducer, int]]:
        """All transducers with code length ``<= budget``, by length then code."""
        for length in range(budget + 1):
            items = sorted(self.bucket(length, outputs), key=lambda t: self.encode(t).sort_key())
            for t in items:
                yield t, length

    def __repr__(self):
        return f"<scheme {self.id}>"


class StandardScheme(EncodingScheme):
    id = "s0"

    def decode(self, code):
        return decode_std(as_record(code).bits)

    def encode(self, t):
        return CodeRecord(encode_std(t))

    def code_length(self, t):
        return std_length(t)

    def bucket(self, length, outputs=None):
        return std_bucket(length, outputs)

    def __eq__(self, other):
        return type(other) is StandardScheme

    def __hash__(self):
        return hash("s0")


class _PaddedScheme(EncodingScheme):
    """Shared handling of the ``0 · σ^† · 1^(2^|σ|)`` branch."""

    def _special_index(self, t: Transducer) -> object | None:
        raise NotImplementedError

    @staticmethod
    def padded_length(std_len: int) -> int:
        return 1 + 2 * std_len + (1 << std_len)

    def _encode_padded(self, t: Transducer) -> CodeRecord:
        sigma = encode_std(t)
        return CodeRecord("0" + dagger(sigma), 1 << len(sigma))

    def _decode_padded(self, rec: CodeRecord) -> Transducer:
        # the dagger part ends with a pair "x1"; everything after is padding
        head = rec.head
        parsed = _read_dagger(head, 1) if head.startswith("0") else None
        if parsed is None:
            raise SchemeError("padded branch must be 0 · σ^† · 1^k")
        sigma, pos = parsed
        tail = len(head) - pos + rec.pad
        if set(head[pos:]) - {"1"}:
            raise SchemeError("padding must consist of 1s")
        if tail != 1 << len(sigma):
            raise SchemeError(f"padding length {tail} != 2^{len(sigma)}")
        t = decode_std(sigma)
        if self._special_index(t) is not None:
            raise SchemeError("transducer has a dedicated short code")
        return t

    def _padded_bucket(self, length, outputs):
        std_len = 4
        while self.padded_length(std_len) < length:
            std_len += 2
        if self.padded_length(std_len) == length:
            for t in std_bucket(std_len, outputs):
                if self._special_index(t) is None:
                    yield t


@dataclass(frozen=True)
class PrimeScheme(_PaddedScheme):
    """``S1`` (``padded=False``) and its polynomial-time variant ``S1p``."""

    padded: bool = False

    @property
    def id(self):
        return "s1p" if self.padded else "s1"

    def family_length(self, n: int) -> int:
        b = n.bit_length()
        return 2 * b + n if self.padded else b

    def _special_index(self, t):
        return prime_family_index(t)

    def encode(self, t):
        n = prime_family_index(t)
        if self.padded:
            if n is not None:
                return CodeRecord(dagger(bin_(n)), n)
            return self._encode_padded(t)
        if n is not None:
            return CodeRecord(bin_(n))
        return CodeRecord("0" + encode_std(t))

    def code_length(self, t):
        n = prime_family_index(t)
        if n is not None:
            return self.family_length(n)
        s = std_length(t)
        return self.padded_length(s) if self.padded else s + 1

    def decode(self, code):
        rec = as_record(code)
        if not rec.length:
            raise SchemeError("empty code")
        first = (rec.head or "1")[0]
        if self.padded:
            if first == "0":
                return self._decode_padded(rec)
            parsed = _read_dagger(rec.head)
            if parsed is None:
                raise SchemeError("family code must be bin(n)^† · 1^n")
            digits, pos = parsed
            if set(rec.head[pos:]) - {"1"}:
                raise SchemeError("family code must be bin(n)^† · 1^n")
            pad = len(rec.head) - pos + rec.pad
            if digits[0] != "1":
                raise SchemeError("bin(n) must start with 1")
            n = int(digits, 2)
            if pad != n:
                raise SchemeError(f"family padding {pad} != n = {n}")
            return prime_family(n)
        bits = rec.bits
        if first == "1":
            return prime_family(int(bits, 2))
        t = decode_std(bits[1:])
        if prime_family_index(t) is not None:
            raise SchemeError("T_n must use its family code")
        return t

    def bucket(self, length, outputs=None):
        # codes starting with 0 sort before family codes of equal length
        if self.padded:
            yield from self._padded_bucket(length, outputs)
            for b in range(1, length.bit_length() + 1):
                n = length - 2 * b
                if n >= 1 and n.bit_length() == b:
                    yield prime_family(n)
        else:
            if length >= 1:
                for t in std_bucket(length - 1, outputs):
                    if prime_family_index(t) is None:
                        yield t
                for n in range(1 << (length - 1), 1 << length) if length >= 1 else ():
                    yield prime_family(n)


@dataclass(frozen=True)
class TwinScheme(_PaddedScheme):
    """Codes ``10`` and ``11`` for an n-state and an m-state transducer.

    Both transducers loop ``0/witness`` on state 1 and ``1/ε`` on state 1;
    their extra states are unreachable ε-self-loop sinks.  All other
    transducers use the padded standard code.
    """

    small: int
    large: int
    witness: str = "0" * 64

    def __post_init__(self):
        if not 1 <= self.small < self.large:
            raise ValueError(f"need 1 <= n < m, got n={self.small}, m={self.large}")

    @property
    def id(self):
        return f"snm:{self.small},{self.large}"

    def twin(self, size: int) -> Transducer:
        table = [(1, self.witness), (1, "")]
        for q in range(2, size + 1):
            table += [(q, ""), (q, "")]
        return Transducer(tuple(table))

    def _special_index(self, t):
        if t == self.twin(self.small):
            return "10"
        if t == self.twin(self.large):
            return "11"
        return None

    def encode(self, t):
        special = self._special_index(t)
        if special is not None:
            return CodeRecord(special)
        return self._encode_padded(t)

    def code_length(self, t):
        special = self._special_index(t)
        return 2 if special is not None else self.padded_length(std_length(t))

    def decode(self, code):
        rec = as_record(code)
        if rec.length == 2 and rec.bits in ("10", "11"):
            return self.twin(self.small if rec.bits == "10" else self.large)
        if not rec.head.startswith("0"):
            raise SchemeError("not a code of this scheme")
        return self._decode_padded(rec)

    def bucket(self, length, outputs=None):
        if length == 2:
            yield self.twin(self.small)
            yield self.twin(self.large)
        yield from self._padded_bucket(length, outputs)


S0 = StandardScheme()
S1 = PrimeScheme(padded=False)
S1P = PrimeScheme(padded=True)


def snm_build(n: int, m: int) -> tuple[TwinScheme, str]:
    scheme = TwinScheme(n, m)
    return scheme, scheme.witness


def scheme_from_id(ident: str) -> EncodingScheme:
    if ident == "s0":
        return S0
    if ident == "s1":
        return S1
    if ident == "s1p":
        return S1P
    if ident.startswith("snm:"):
        try:
            n, m = (int(v) for v in ident[4:].split(","))
        except ValueError:
            raise ValueError(f"scheme {ident!r}: expected snm:<n>,<m>") from None
        return TwinScheme(n, m)
    raise ValueError(f"unknown scheme {ident!r} (expected s0, s1, s1p or snm:<n>,<m>)")


def scheme_encode(scheme: EncodingScheme, t: Transducer) -> CodeRecord:
    return scheme.encode(t)


def scheme_enumerate(scheme: EncodingScheme, budget: int, outputs: Collection[str] | None = None):
    return scheme.enumerate(budget, outputs)


@lru_cache(maxsize=None)
def identity_overhead(scheme: EncodingScheme) -> int:
    """Code length of the shortest identity-computing transducer."""
    length = 0
    while True:
        for t in scheme.bucket(length):
            if t.computes_identity():
                return length
        length += 1
