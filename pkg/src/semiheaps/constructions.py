"""Factories for concrete groups, semigroups, semiheaps and diheaps.

Relations and cubic matrices are encoded as integers.  A relation
``R ⊆ A x B`` has bit ``i*|B| + j`` set when ``(i, j) ∈ R``.  A cubic matrix
``a`` of size ``N`` has bit ``i*N*N + j*N + k`` equal to ``a_ijk``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .biunits import biunit_pairs, classify
from .laws import antihomomorphism_report, is_semiheap, switch_bracket
from .tables import (
    AlgebraError,
    BinaryTable,
    ElementError,
    Endomap,
    PreconditionError,
    TernaryTable,
    ValidationError,
)

__all__ = [
    "LazyTernar",
    "Relation",
    "cyclic_group",
    "klein_group",
    "symmetric_group",
    "direct_product",
    "group_by_name",
    "constant_semigroup",
    "constant_ternar",
    "group_heap",
    "involuted_semigroup_semiheap",
    "boolean_matrix_monoid",
    "boolean_transpose",
    "relation_semiheap",
    "cyclic_sum_diheap",
    "odd_residues",
    "odd_residue_labels",
    "cubic_matrix_semiheap",
]

# Set to False to skip the self-checks on factory outputs.
VALIDATE = __debug__
DENSE_RELATION_LIMIT = 4


@dataclass(frozen=True)
class LazyTernar:
    """A ternar too large to tabulate; the bracket is evaluated on demand.

    ``bracket_many`` takes three equal-shape integer arrays and returns the
    elementwise bracket, so the law checkers can treat it like a table.
    """

    n: int
    bracket_many: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
    distinguished: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for key, v in self.distinguished.items():
            if not (0 <= v < self.n):
                raise ElementError(f"distinguished element {key}={v} out of range")

    def __call__(self, a: int, b: int, c: int) -> int:
        out = self.bracket_many(np.array([a]), np.array([b]), np.array([c]))
        return int(out[0])


# groups and semigroups


def cyclic_group(n: int) -> BinaryTable:
    if n < 1:
        raise AlgebraError("n must be positive")
    r = np.arange(n)
    return BinaryTable((r[:, None] + r[None, :]) % n)


def symmetric_group(k: int) -> BinaryTable:
    """Permutations of ``range(k)`` in lexicographic order; ``p.q`` applies ``q`` first."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return BinaryTable(np.array(table).reshape(m, m))


def direct_product(g: BinaryTable, h: BinaryTable) -> BinaryTable:
    """Pairs ``(x, y)`` encoded as ``x * h.n + y``."""
    G, H, m = g.data, h.data, h.n
    table = G[:, None, :, None] * m + H[None, :, None, :]
    return BinaryTable(table.reshape(g.n * m, g.n * m))


def klein_group() -> BinaryTable:
    return direct_product(cyclic_group(2), cyclic_group(2))


def group_by_name(name: str) -> BinaryTable:
    """``z<n>``, ``klein`` (alias ``z2xz2``) or ``s<k>``."""
    key = name.lower()
    if key in ("klein", "z2xz2", "v4"):
        return klein_group()
    if key.startswith("z") and key[1:].isdigit():
        return cyclic_group(int(key[1:]))
    if key.startswith("s") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    raise AlgebraError(f"unknown group {name!r}")


def constant_semigroup(n: int, c: int) -> BinaryTable:
    if not (0 <= c < n):
        raise ElementError(f"constant {c} not in 0..{n - 1}")
    return BinaryTable(np.full((n, n), c))


def constant_ternar(n: int, c: int = 0) -> TernaryTable:
    if not (0 <= c < n):
        raise ElementError(f"constant {c} not in 0..{n - 1}")
    return TernaryTable(np.full((n, n, n), c))


# semiheaps from groups and involuted semigroups


def group_heap(g: BinaryTable) -> TernaryTable:
    """``[a,b,c] = a b^-1 c``."""
    if not g.is_group():
        raise PreconditionError("group_heap needs a group")
    inv = g.inverses()
    t = switch_bracket(g, Endomap([inv[x] for x in range(g.n)]))
    if VALIDATE and not classify(t).heap:
        raise ValidationError("group heap is not a heap")
    return t


def involuted_semigroup_semiheap(s: BinaryTable, star: Endomap) -> TernaryTable:
    """``[a,b,c] = a b* c`` for an antihomomorphic involution ``*``."""
    if not s.is_associative():
        raise PreconditionError("semigroup is not associative")
    if not star.is_involution():
        raise PreconditionError("star is not an involution")
    if not antihomomorphism_report(s, s, star, limit=0).holds:
        raise PreconditionError("star is not an antihomomorphism")
    t = switch_bracket(s, star)
    if VALIDATE and not is_semiheap(t):
        raise ValidationError("involuted semigroup bracket is not a semiheap")
    return t


def _bool_matrices(k: int) -> np.ndarray:
    """All ``k x k`` Boolean matrices, indexed by their bit encoding."""
    codes = np.arange(2 ** (k * k))
    bits = (codes[:, None] >> np.arange(k * k)) & 1
    return bits.reshape(-1, k, k)


def _encode(bits: np.ndarray) -> np.ndarray:
    flat = bits.reshape(bits.shape[0], -1).astype(np.int64)
    return flat @ (1 << np.arange(flat.shape[1], dtype=np.int64))


def boolean_matrix_monoid(k: int) -> BinaryTable:
    """``k x k`` Boolean matrices under the Boolean product."""
    mats = _bool_matrices(k)
    prod = (np.einsum("xij,yjl->xyil", mats, mats) > 0).astype(np.int64)
    m = mats.shape[0]
    return BinaryTable(_encode(prod.reshape(m * m, k, k)).reshape(m, m))


def boolean_transpose(k: int) -> Endomap:
    mats = _bool_matrices(k)
    return Endomap(_encode(mats.transpose(0, 2, 1)))


# relations


@dataclass(frozen=True)
class Relation:
    """A relation between ``range(source)`` and ``range(target)``."""

    source: int
    target: int
    bits: int

    def __post_init__(self):
        if not (0 <= self.bits < 1 << (self.source * self.target)):
            raise ElementError("relation bitset out of range")

    @classmethod
    def from_pairs(cls, source: int, target: int, pairs) -> "Relation":
        bits = 0
        for i, j in pairs:
            bits |= 1 << (i * target + j)
        return cls(source, target, bits)

    def pairs(self) -> set[tuple[int, int]]:
        return {(i, j) for i in range(self.source) for j in range(self.target)
                if self.bits >> (i * self.target + j) & 1}

    def matrix(self) -> np.ndarray:
        idx = np.arange(self.source * self.target)
        return ((self.bits >> idx) & 1).reshape(self.source, self.target).astype(np.int64)

    def transpose(self) -> "Relation":
        return Relation.from_pairs(self.target, self.source, {(j, i) for i, j in self.pairs()})

    def then(self, other: "Relation") -> "Relation":
        """Diagrammatic composite: ``x ~ z`` iff ``x self y`` and ``y other z`` for some ``y``."""
        if self.target != other.source:
            raise AlgebraError("relation composition mismatch")
        return Relation.from_pairs(self.source, other.target,
                                   {(x, z) for x, y in self.pairs() for y2, z in other.pairs() if y == y2})


def _relation_bracket_many(size_a: int, size_b: int):
    width = size_a * size_b
    weights = 1 << np.arange(width, dtype=np.int64)

    def decode(x):
        x = np.asarray(x, dtype=np.int64)
        return ((x[..., None] >> np.arange(width)) & 1).reshape(*x.shape, size_a, size_b)

    def bracket_many(a, b, c):
        ra, rb, rc = decode(a), decode(b), decode(c)
        out = (ra @ np.swapaxes(rb, -1, -2) @ rc) > 0
        return out.reshape(*out.shape[:-2], width).astype(np.int64) @ weights

    return bracket_many


def relation_semiheap(size_a: int, size_b: int, lazy: bool | None = None):
    """All relations ``A -> B`` with ``[R1,R2,R3] = R1 R2^T R3`` (Boolean matrix product).

    Dense when ``|A||B| <= 4`` (at most 16 elements), otherwise a
    :class:`LazyTernar` unless ``lazy=False`` is forced, which raises.
    """
    if size_a < 1 or size_b < 1:
        raise AlgebraError("relation sets must be non-empty")
    width = size_a * size_b
    n = 2**width
    bracket_many = _relation_bracket_many(size_a, size_b)
    if lazy is None:
        lazy = width > DENSE_RELATION_LIMIT
    if lazy:
        return LazyTernar(n, bracket_many, {"empty": 0, "full": n - 1}, f"Rel({size_a},{size_b})")
    if width > DENSE_RELATION_LIMIT:
        raise AlgebraError(f"|A||B| = {width} exceeds the dense limit {DENSE_RELATION_LIMIT}")
    a, b, c = np.indices((n, n, n))
    t = TernaryTable(bracket_many(a, b, c))
    if VALIDATE and not is_semiheap(t):
        raise ValidationError("relation bracket is not a semiheap")
    return t


# diheaps and friends


def cyclic_sum_diheap(n: int) -> TernaryTable:
    """``[a,b,c] = a + b + c mod n``; every ``a`` pairs with ``-a``."""
    if n < 1:
        raise AlgebraError("n must be positive")
    a, b, c = np.indices((n, n, n))
    t = TernaryTable((a + b + c) % n)
    if VALIDATE and not classify(t).diheap:
        raise ValidationError("cyclic sum is not a diheap")
    return t


def odd_residue_labels(m: int) -> list[int]:
    """Element ``i`` of :func:`odd_residues` stands for the residue ``2i + 1``."""
    return [2 * i + 1 for i in range(m)]


def odd_residues(m: int) -> TernaryTable:
    """Odd residues mod ``2m`` under ``a + b + c``, relabelled ``2i+1 -> i``."""
    if m < 1:
        raise AlgebraError("m must be positive")
    a, b, c = np.indices((m, m, m))
    # (2a+1) + (2b+1) + (2c+1) = 2(a+b+c+1) + 1
    t = TernaryTable((a + b + c + 1) % m)
    if VALIDATE and not (is_semiheap(t) and len(biunit_pairs(t).support()) == m):
        raise ValidationError("odd residues do not form a diheap")
    return t


def _cubic_bracket_many(N: int, scalars: str):
    width = N**3
    weights = 1 << np.arange(width, dtype=np.int64)

    def decode(x):
        x = np.asarray(x, dtype=np.int64)
        # rows are (i, j), columns k
        return ((x[..., None] >> np.arange(width)) & 1).reshape(*x.shape, N * N, N)

    def bracket_many(a, b, c):
        ma, mb, mc = decode(a), decode(b), decode(c)
        # sum_{p,q,r} a_ijp b_qrp c_qrk  ==  A B^T C with A, B, C of shape (N^2, N)
        out = ma @ np.swapaxes(mb, -1, -2) @ mc
        out = out % 2 if scalars == "z2" else (out > 0)
        return out.reshape(*out.shape[:-2], width).astype(np.int64) @ weights

    return bracket_many


def cubic_matrix_semiheap(N: int, scalars: Literal["boolean", "z2"] = "z2") -> LazyTernar:
    """Cubic ``N x N x N`` matrices over the Booleans or Z_2.

    Distinguished elements ``I`` (``delta_ijk``) and ``iota`` (``delta_ik``).
    """
    if N < 1:
        raise AlgebraError("N must be positive")
    if scalars not in ("boolean", "z2"):
        raise AlgebraError(f"unknown scalars {scalars!r}")
    I = sum(1 << (i * N * N + i * N + i) for i in range(N))
    iota = sum(1 << (i * N * N + j * N + i) for i in range(N) for j in range(N))
    return LazyTernar(2 ** (N**3), _cubic_bracket_many(N, scalars), {"I": I, "iota": iota},
                      f"cubic({N},{scalars})")
