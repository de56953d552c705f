"""Warps and switches by exhaustive filtering, and warp equivalence by closure."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..biunits import biunit_pairs
from ..laws import _require_associative, is_warp, twist
from ..tables import AlgebraError, BinaryTable, Endomap, TernaryTable, ValidationError
from .enumeration import MAX_EXHAUSTIVE_N, semiheaps

__all__ = [
    "all_endomaps",
    "warp_mask",
    "switch_mask",
    "enumerate_warps",
    "enumerate_switches",
    "bijective_warps",
    "WarpPath",
    "SearchLimitReached",
    "warp_closure",
    "warp_equivalent",
    "CompositionSearch",
    "find_warp_composition_counterexample",
]

MAX_ENDOMAP_N = 4
MAX_PERMUTATION_N = 8


class SearchLimitReached(RuntimeError):
    """The depth limit cut the search before the reachable set was exhausted."""


@lru_cache(maxsize=None)
def all_endomaps(n: int, bijective: bool = False) -> np.ndarray:
    """Every endomap (or permutation) of ``range(n)`` as rows of an array."""
    gen = itertools.permutations(range(n)) if bijective else itertools.product(range(n), repeat=n)
    arr = np.array(list(gen), dtype=np.int64).reshape(-1, n)
    arr.setflags(write=False)
    return arr


def _grids(M: int, n: int):
    m = np.arange(M).reshape(M, 1, 1, 1)
    r = np.arange(n)
    return m, r.reshape(1, n, 1, 1), r.reshape(1, 1, n, 1), r.reshape(1, 1, 1, n)


def warp_mask(t: TernaryTable, maps: np.ndarray) -> np.ndarray:
    """Which rows of ``maps`` are warps of ``t``."""
    if maps.size == 0:
        return np.zeros(0, dtype=bool)
    T, H = t.data, maps
    m, a, b, c = _grids(H.shape[0], t.n)
    lhs = H[m, T[a, H[m, b], c]]
    rhs = T[H[m, a], b, H[m, c]]
    return (lhs == rhs).reshape(H.shape[0], -1).all(axis=1)


def switch_mask(s: BinaryTable, maps: np.ndarray) -> np.ndarray:
    """Which rows of ``maps`` are switches of the associative table ``s``."""
    _require_associative(s)
    if maps.size == 0:
        return np.zeros(0, dtype=bool)
    S, H = s.data, maps
    m, a, b, c = _grids(H.shape[0], s.n)
    lhs = H[m, S[S[a, H[m, b]], c]]
    rhs = S[S[H[m, c], b], H[m, a]]
    return (lhs == rhs).reshape(H.shape[0], -1).all(axis=1)


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise AlgebraError(f"exhaustive map search is limited to n <= {limit} (got {n})")


def enumerate_warps(t: TernaryTable, bijective: bool = False) -> list[Endomap]:
    _guard(t.n, MAX_PERMUTATION_N if bijective else MAX_ENDOMAP_N)
    maps = all_endomaps(t.n, bijective)
    return [Endomap(h) for h in maps[warp_mask(t, maps)]]


def bijective_warps(t: TernaryTable) -> list[Endomap]:
    return enumerate_warps(t, bijective=True)


def enumerate_switches(s: BinaryTable, bijective: bool = False) -> list[Endomap]:
    _guard(s.n, MAX_PERMUTATION_N if bijective else MAX_ENDOMAP_N)
    maps = all_endomaps(s.n, bijective)
    return [Endomap(h) for h in maps[switch_mask(s, maps)]]


@dataclass(frozen=True)
class WarpPath:
    """``tables[i+1]`` is the twist of ``tables[i]`` by the bijective warp ``maps[i]``."""

    maps: tuple[Endomap, ...]
    tables: tuple[TernaryTable, ...]

    def __post_init__(self):
        if len(self.tables) != len(self.maps) + 1:
            raise AlgebraError("a warp path needs one more table than maps")
        for i, phi in enumerate(self.maps):
            src = self.tables[i]
            if not (phi.is_bijective() and is_warp(src, phi, limit=0).holds):
                raise ValidationError(f"step {i} is not a bijective warp")
            if twist(src, phi) != self.tables[i + 1]:
                raise ValidationError(f"step {i} does not twist into the next table")

    def __len__(self) -> int:
        return len(self.maps)

    @property
    def source(self) -> TernaryTable:
        return self.tables[0]

    @property
    def target(self) -> TernaryTable:
        return self.tables[-1]


def _twist_neighbours(t: TernaryTable):
    fp = biunit_pairs(t).fingerprint()
    for phi in bijective_warps(t):
        nxt = twist(t, phi)
        if biunit_pairs(nxt).fingerprint() != fp:
            raise ValidationError("bijective warp twisting changed the biunit fingerprint")
        yield phi, nxt


def _bfs(t1: TernaryTable, target: TernaryTable | None, max_depth: int | None):
    parent: dict[TernaryTable, tuple[TernaryTable, Endomap] | None] = {t1: None}
    queue = deque([(t1, 0)])
    while queue:
        cur, depth = queue.popleft()
        if target is not None and cur == target:
            return parent, cur
        if max_depth is not None and depth >= max_depth:
            if any(nxt not in parent for _, nxt in _twist_neighbours(cur)):
                raise SearchLimitReached(f"depth limit {max_depth} reached")
            continue
        for phi, nxt in _twist_neighbours(cur):
            if nxt not in parent:
                parent[nxt] = (cur, phi)
                queue.append((nxt, depth + 1))
    return parent, None


def warp_closure(t: TernaryTable) -> frozenset[TernaryTable]:
    """Every table reachable from ``t`` by twisting with bijective warps."""
    parent, _ = _bfs(t, None, None)
    return frozenset(parent)


def warp_equivalent(t1: TernaryTable, t2: TernaryTable, max_depth: int | None = None) -> WarpPath | None:
    """A shortest chain of bijective-warp twists from ``t1`` to ``t2``, or ``None``.

    Twists of a finite table form a finite set, so without ``max_depth`` the
    answer is exact.  With a depth limit, :class:`SearchLimitReached` is raised
    rather than answering ``None`` on an unexplored frontier.
    """
    if t1.n != t2.n:
        return None
    if max_depth is not None and max_depth < 1:
        raise AlgebraError("max_depth must be at least 1")
    parent, hit = _bfs(t1, t2, max_depth)
    if hit is None:
        return None
    maps, tables = [], [hit]
    node = hit
    while parent[node] is not None:
        prev, phi = parent[node]
        maps.append(phi)
        tables.append(prev)
        node = prev
    return WarpPath(tuple(reversed(maps)), tuple(reversed(tables)))


@dataclass(frozen=True)
class CompositionSearch:
    """Outcome of the search for warps whose composite is not a warp.

    ``witness`` is ``(t, phi, psi)`` with ``phi`` a warp of ``t``, ``psi`` a
    warp of ``t`` twisted by ``phi`` and ``psi . phi`` not a warp of ``t``.
    ``commuting_failures`` lists commuting pairs whose composite failed; it
    is expected to stay empty.
    """

    witness: tuple[TernaryTable, Endomap, Endomap] | None
    witnesses_found: int
    pairs_checked: int
    commuting_checked: int
    commuting_failures: tuple = field(default=())
    semiheaps_searched: int = 0


def find_warp_composition_counterexample(n_max: int = 3, semiheap_source=None) -> CompositionSearch:
    if n_max > MAX_EXHAUSTIVE_N:
        raise AlgebraError(f"n_max is limited to {MAX_EXHAUSTIVE_N}")
    if semiheap_source is None:
        sources = [t for n in range(1, n_max + 1) for t in semiheaps(n)]
    else:
        sources = list(semiheap_source)
    witness, found, checked, comm, comm_fail = None, 0, 0, 0, []
    for t in sources:
        maps = all_endomaps(t.n)
        for phi in maps[warp_mask(t, maps)]:
            tp = TernaryTable(t.data[:, phi, :])
            psis = maps[warp_mask(tp, maps)]
            composites = psis[:, phi]  # row k is psi_k . phi
            ok = warp_mask(t, composites)
            commuting = (composites == phi[psis]).all(axis=1)
            checked += len(psis)
            comm += int(commuting.sum())
            for k in np.nonzero(commuting & ~ok)[0]:
                comm_fail.append((t, Endomap(phi), Endomap(psis[k])))
            bad = np.nonzero(~ok)[0]
            found += bad.size
            if witness is None and bad.size:
                witness = (t, Endomap(phi), Endomap(psis[bad[0]]))
    return CompositionSearch(witness, found, checked, comm, tuple(comm_fail), len(sources))
