"""Backtracking enumeration of small semiheaps, semigroups and monoids.

Cells are filled in row-major order with values tried in increasing order,
so every stream is lexicographically sorted.  After each assignment the
partial table is checked against every law instance whose cells are already
determined, which prunes the search long before a table is complete.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from ..tables import AlgebraError, BinaryTable, Endomap, TernaryTable
from .isomorphism import is_canonical

__all__ = [
    "MAX_EXHAUSTIVE_N",
    "enumerate_semiheaps",
    "enumerate_semigroups",
    "enumerate_monoids",
    "enumerate_endomaps",
    "semiheaps",
    "semigroups",
    "monoids",
    "raw_ternary_tables",
]

MAX_EXHAUSTIVE_N = 3
MAX_BINARY_N = 4

UNSET = -1


class _Quintuples:
    """Index arithmetic for the para-associativity check on a partial table."""

    def __init__(self, n: int):
        q = np.indices((n,) * 5).reshape(5, -1)
        a, b, c, d, e = q
        self.n = n
        self.a, self.b, self.d, self.e = a, b, d, e
        self.abc = (a * n + b) * n + c
        self.dcb = (d * n + c) * n + b
        self.cde = (c * n + d) * n + e

    def consistent(self, T: np.ndarray) -> bool:
        n = self.n
        x, y, z = T[self.abc], T[self.dcb], T[self.cde]
        kx, ky, kz = x >= 0, y >= 0, z >= 0
        left = np.where(kx, T[(np.where(kx, x, 0) * n + self.d) * n + self.e], UNSET)
        mid = np.where(ky, T[(self.a * n + np.where(ky, y, 0)) * n + self.e], UNSET)
        right = np.where(kz, T[(self.a * n + self.b) * n + np.where(kz, z, 0)], UNSET)
        kl, km, kr = left >= 0, mid >= 0, right >= 0
        bad = (kl & km & (left != mid)) | (kl & kr & (left != right)) | (km & kr & (mid != right))
        return not bad.any()


def _check_n(n: int, limit: int, force: bool) -> None:
    if n < 1:
        raise AlgebraError("n must be positive")
    if n > limit and not force:
        raise AlgebraError(f"exhaustive enumeration is limited to n <= {limit} (got {n})")


def enumerate_semiheaps(n: int, up_to_iso: bool = False, force: bool = False) -> Iterator[TernaryTable]:
    """Yield every semiheap on ``{0..n-1}``.

    With ``up_to_iso`` only the lexicographically least member of each
    isomorphism class is yielded, so the stream needs no memory of what it
    has seen.
    """
    _check_n(n, MAX_EXHAUSTIVE_N, force)
    size = n**3
    quint = _Quintuples(n)
    T = np.full(size, UNSET, dtype=np.int64)

    def fill(k: int):
        if k == size:
            t = TernaryTable(T.copy())
            if not up_to_iso or is_canonical(t):
                yield t
            return
        for v in range(n):
            T[k] = v
            if quint.consistent(T):
                yield from fill(k + 1)
        T[k] = UNSET

    yield from fill(0)


def raw_ternary_tables(n: int) -> Iterator[TernaryTable]:
    """Every one of the ``n**(n**3)`` ternary tables, with no pruning."""
    for flat in itertools.product(range(n), repeat=n**3):
        yield TernaryTable(np.array(flat))


class _Triples:
    def __init__(self, n: int):
        a, b, c = np.indices((n,) * 3).reshape(3, -1)
        self.n, self.a, self.c = n, a, c
        self.ab = a * n + b
        self.bc = b * n + c

    def consistent(self, S: np.ndarray) -> bool:
        n = self.n
        x, y = S[self.ab], S[self.bc]
        kx, ky = x >= 0, y >= 0
        left = np.where(kx, S[np.where(kx, x, 0) * n + self.c], UNSET)
        right = np.where(ky, S[self.a * n + np.where(ky, y, 0)], UNSET)
        return not ((left >= 0) & (right >= 0) & (left != right)).any()


def _fill_binary(n: int, S: np.ndarray) -> Iterator[BinaryTable]:
    trip = _Triples(n)
    free = [k for k in range(n * n) if S[k] == UNSET]
    if not trip.consistent(S):
        return

    def fill(i: int):
        if i == len(free):
            yield BinaryTable(S.copy().reshape(n, n))
            return
        k = free[i]
        for v in range(n):
            S[k] = v
            if trip.consistent(S):
                yield from fill(i + 1)
        S[k] = UNSET

    yield from fill(0)


def enumerate_semigroups(n: int, force: bool = False) -> Iterator[BinaryTable]:
    """Every associative binary table on ``{0..n-1}``, lexicographically."""
    _check_n(n, MAX_BINARY_N, force)
    yield from _fill_binary(n, np.full(n * n, UNSET, dtype=np.int64))


def enumerate_monoids(n: int, force: bool = False) -> Iterator[BinaryTable]:
    """Every monoid table on ``{0..n-1}``, grouped by identity element."""
    _check_n(n, MAX_BINARY_N, force)
    for e in range(n):
        S = np.full((n, n), UNSET, dtype=np.int64)
        S[e, :] = np.arange(n)
        S[:, e] = np.arange(n)
        yield from _fill_binary(n, S.reshape(-1))


def enumerate_endomaps(n: int, bijective: bool = False) -> Iterator[Endomap]:
    it = itertools.permutations(range(n)) if bijective else itertools.product(range(n), repeat=n)
    for image in it:
        yield Endomap(image)


# cached materialisations for the exhaustive test suites


@lru_cache(maxsize=None)
def semiheaps(n: int, up_to_iso: bool = False) -> tuple[TernaryTable, ...]:
    return tuple(enumerate_semiheaps(n, up_to_iso))


@lru_cache(maxsize=None)
def semigroups(n: int) -> tuple[BinaryTable, ...]:
    return tuple(enumerate_semigroups(n))


@lru_cache(maxsize=None)
def monoids(n: int) -> tuple[BinaryTable, ...]:
    return tuple(enumerate_monoids(n))
