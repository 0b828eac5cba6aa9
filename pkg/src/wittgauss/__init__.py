"""Exact Gauss sums over truncated Witt vectors and the identities around them."""

__version__ = "0.1.0"

from .cyclo import CyclotomicInt, ScaledCyclotomic  # noqa: E402
from .ff import FiniteField, make_field  # noqa: E402
from .witt import WittRing, witt_ring  # noqa: E402
from .chars import AddChar, MultChar, enumerate_mult_chars, conductor_exp  # noqa: E402
from .gauss import gauss_sum, dh_verify, closed_form_even, closed_form_odd, local_epsilon  # noqa: E402

__all__ = [
    "CyclotomicInt",
    "ScaledCyclotomic",
    "FiniteField",
    "make_field",
    "WittRing",
    "witt_ring",
    "AddChar",
    "MultChar",
    "enumerate_mult_chars",
    "conductor_exp",
    "gauss_sum",
    "dh_verify",
    "closed_form_even",
    "closed_form_odd",
    "local_epsilon",
]
