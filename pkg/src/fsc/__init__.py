"""Finite-state complexity of binary strings."""

from .codec import bin_, dagger, decode_std, diamond, encode_std, enumerate_std, is_valid_std
from .core import Transducer, evaluate, identity_transducer, parse_transducer, serialize_transducer
from .encodings import S0, S1, S1P, identity_overhead, scheme_from_id, snm_build
from .search import complexity, minimal_program, scan, state_size_membership

__version__ = "0.1.0"
