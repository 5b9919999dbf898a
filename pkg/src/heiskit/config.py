"""Enumeration bound shared by every exhaustive operation.

The bound defaults to 100 000 elements.  It can be set with the
``HEISKIT_BOUND`` environment variable, with :func:`set_bound`, or
temporarily with the :func:`bound` context manager.  An explicit setting
always wins over the environment.
"""

import contextlib
import os

from .errors import BoundExceeded, InputError

DEFAULT_BOUND = 100_000

# Cayley tables are validated in O(n^3); this caps the order of any table group.
MAX_TABLE_ORDER = 512

_explicit = None


def _parse(value):
    try:
        n = int(value)
    except (TypeError, ValueError):
        raise InputError(f"enumeration bound must be an integer, got {value!r}") from None
    if n < 1:
        raise InputError(f"enumeration bound must be positive, got {n}")
    return n


def get_bound():
    if _explicit is not None:
        return _explicit
    env = os.environ.get("HEISKIT_BOUND")
    if env:
        return _parse(env)
    return DEFAULT_BOUND


def set_bound(n):
    """Set the bound explicitly; ``None`` falls back to the environment/default."""
    global _explicit
    _explicit = None if n is None else _parse(n)


@contextlib.contextmanager
def bound(n):
    global _explicit
    saved = _explicit
    set_bound(n)
    try:
        yield get_bound()
    finally:
        _explicit = saved


def check_bound(size, what="enumeration"):
    limit = get_bound()
    if size > limit:
        raise BoundExceeded(size, limit, what)


def within_bound(size):
    return size <= get_bound()
