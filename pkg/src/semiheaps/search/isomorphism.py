"""Canonical forms and isomorphism search for small tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..biunits import biunit_pairs, pair_masks
from ..tables import BinaryTable, Endomap, TernaryTable, check_same_carrier

__all__ = [
    "CanonicalForm",
    "relabel",
    "canonical_form",
    "is_canonical",
    "ternar_isomorphic",
    "element_invariants",
]


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def relabel(table, sigma: Endomap):
    """The isomorphic copy in which element ``x`` is renamed ``sigma(x)``."""
    check_same_carrier(table, sigma)
    inv = sigma.inverse().image
    s = sigma.image
    if isinstance(table, TernaryTable):
        return TernaryTable(s[table.data[np.ix_(inv, inv, inv)]])
    return BinaryTable(s[table.data[np.ix_(inv, inv)]])


def _all_relabelings(data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Flattened relabelled tables for every permutation, one row each."""
    n = data.shape[0]
    P = _perms(n)
    inv = np.argsort(P, axis=1)
    k = np.arange(P.shape[0])[:, None]
    if data.ndim == 3:
        idx = data[inv[:, :, None, None], inv[:, None, :, None], inv[:, None, None, :]]
    else:
        idx = data[inv[:, :, None], inv[:, None, :]]
    out = P[k.reshape((-1,) + (1,) * data.ndim), idx]
    return out.reshape(P.shape[0], -1), P


def _lexmin_row(rows: np.ndarray) -> int:
    order = np.lexsort(rows.T[::-1])
    return int(order[0])


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically least relabelling of a table and a permutation achieving it."""

    table: object
    relabeling: Endomap

    def key(self) -> bytes:
        return self.table.key()


def canonical_form(table) -> CanonicalForm:
    rows, P = _all_relabelings(table.data)
    i = _lexmin_row(rows)
    cls = TernaryTable if isinstance(table, TernaryTable) else BinaryTable
    return CanonicalForm(cls(rows[i]), Endomap(P[i]))


def is_canonical(table) -> bool:
    rows, _ = _all_relabelings(table.data)
    flat = table.data.ravel()
    # any relabelling strictly smaller?
    diff = rows != flat
    first = np.argmax(diff, axis=1)
    has = diff.any(axis=1)
    smaller = has & (rows[np.arange(len(rows)), first] < flat[first])
    return not smaller.any()


def element_invariants(t: TernaryTable) -> list[tuple]:
    """Per-element data preserved by every ternar isomorphism."""
    T = t.data
    left, right = pair_masks(t)
    full = left & right
    n = t.n
    preimages = np.bincount(T.ravel(), minlength=n)
    out = []
    for x in range(n):
        out.append((
            bool(left[x, x]), bool(right[x, x]),
            int(left[x].sum()), int(left[:, x].sum()),
            int(right[x].sum()), int(right[:, x].sum()),
            int(full[x].sum()),
            int(T[x, x, x] == x),
            int(preimages[x]),
            int((T[x, :, x] == x).sum()),
            int((T[x, x, :] == np.arange(n)).sum()),
        ))
    return out


def ternar_isomorphic(t1: TernaryTable, t2: TernaryTable) -> Endomap | None:
    """A bijection ``f`` with ``f([a,b,c]) = [f a, f b, f c]``, or ``None``.

    Backtracks one element at a time; candidates must share the per-element
    invariants, and the biunit-pair fingerprints must agree up front since
    isomorphisms carry biunit pairs to biunit pairs.
    """
    if t1.n != t2.n:
        return None
    n = t1.n
    if biunit_pairs(t1).fingerprint() != biunit_pairs(t2).fingerprint():
        return None
    inv1, inv2 = element_invariants(t1), element_invariants(t2)
    if sorted(inv1) != sorted(inv2):
        return None
    cands = [[y for y in range(n) if inv2[y] == inv1[x]] for x in range(n)]
    A, B = t1.data, t2.data
    f = [-1] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        # every triple through x whose entries are all mapped
        mapped = [y for y in range(n) if f[y] >= 0]
        for a in mapped:
            for b in mapped:
                for c in mapped:
                    if x not in (a, b, c):
                        continue
                    v = A[a, b, c]
                    img = B[f[a], f[b], f[c]]
                    if f[v] >= 0:
                        if f[v] != img:
                            return False
                    elif used[img]:
                        return False
        return True

    def search(x: int) -> bool:
        if x == n:
            return True
        for y in cands[x]:
            if used[y]:
                continue
            f[x], used[y] = y, True
            if consistent(x) and search(x + 1):
                return True
            f[x], used[y] = -1, False
        return False

    if not search(0):
        return None
    phi = Endomap(f)
    assert np.array_equal(phi.image[A], B[np.ix_(phi.image, phi.image, phi.image)])
    return phi
