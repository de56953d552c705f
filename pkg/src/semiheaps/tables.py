"""Dense operation tables on the carrier {0, ..., n-1}.

Every structure in the package is stored as an immutable numpy array:
ternary tables as ``(n, n, n)``, binary tables as ``(n, n)`` and unary maps
as ``(n,)``.  Arrays are indexed row-major, so ``t.data[a, b, c]`` is the
bracket ``[a, b, c]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "AlgebraError",
    "CarrierMismatch",
    "ElementError",
    "PreconditionError",
    "ValidationError",
    "LawReport",
    "TernaryTable",
    "BinaryTable",
    "Endomap",
    "check_same_carrier",
]

DEFAULT_WITNESS_LIMIT = 10


class AlgebraError(ValueError):
    """Base class for rejected inputs."""


class CarrierMismatch(AlgebraError):
    pass


class ElementError(AlgebraError):
    pass


class PreconditionError(AlgebraError):
    """An operation was called outside its domain (e.g. not a semiheap)."""


class ValidationError(RuntimeError):
    """A property guaranteed by construction failed to hold.

    Raised by the self-checks inside the correspondence maps; seeing one means
    there is a bug, not bad input.
    """


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _cube_root(size: int) -> int:
    n = round(size ** (1 / 3))
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and cand**3 == size:
            return cand
    raise AlgebraError(f"flat ternary table of length {size} is not a cube")


def _square_root(size: int) -> int:
    n = round(size**0.5)
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and cand**2 == size:
            return cand
    raise AlgebraError(f"flat binary table of length {size} is not a square")


@dataclass(frozen=True)
class LawReport:
    """Outcome of a law check.

    ``violations`` holds at most ``limit`` witness tuples, lexicographically
    sorted.  ``total_violations`` counts every failing tuple, and ``checked``
    counts the tuples examined.  Sampled checks also record their seed.
    """

    law: str
    violations: tuple = ()
    total_violations: int = 0
    checked: int = 0
    seed: int | None = None

    @property
    def holds(self) -> bool:
        return self.total_violations == 0

    def __bool__(self) -> bool:
        return self.holds

    def as_dict(self) -> dict:
        out = {
            "law": self.law,
            "holds": self.holds,
            "checked": self.checked,
            "total_violations": self.total_violations,
            "violations": [list(map(int, v)) if isinstance(v, tuple) else v for v in self.violations],
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_mask(cls, law: str, bad: np.ndarray, limit: int = DEFAULT_WITNESS_LIMIT, seed=None):
        """Build a report from a boolean array indexed by the witness tuple."""
        count = int(np.count_nonzero(bad))
        wit = ()
        if count and limit:
            # np.argwhere walks in C order, which is lexicographic
            idx = np.argwhere(bad)[:limit]
            wit = tuple(tuple(int(v) for v in row) for row in idx)
        return cls(law, wit, count, int(bad.size), seed)

    @classmethod
    def combine(cls, law: str, reports: Iterable["LawReport"], limit: int = DEFAULT_WITNESS_LIMIT):
        reports = list(reports)
        wit = []
        for r in reports:
            wit.extend((r.law, *v) if isinstance(v, tuple) else (r.law, v) for v in r.violations)
        return cls(
            law,
            tuple(wit[:limit]),
            sum(r.total_violations for r in reports),
            sum(r.checked for r in reports),
        )


def _check_range(arr: np.ndarray, n: int, what: str) -> None:
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ElementError(f"{what} has entries outside 0..{n - 1}")


class TernaryTable:
    """A ternar: a total ternary operation on ``{0..n-1}``."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim == 1:
            n = _cube_root(arr.size)
            arr = arr.reshape(n, n, n)
        if arr.ndim != 3 or not (arr.shape[0] == arr.shape[1] == arr.shape[2]) or arr.shape[0] < 1:
            raise AlgebraError(f"ternary table must have shape (n, n, n), got {arr.shape}")
        _check_range(arr, arr.shape[0], "ternary table")
        object.__setattr__(self, "data", _frozen(arr))

    def __setattr__(self, name, value):
        raise AttributeError("TernaryTable is immutable")

    @classmethod
    def from_function(cls, n: int, bracket: Callable[[int, int, int], int]) -> "TernaryTable":
        r = range(n)
        return cls([[[bracket(a, b, c) for c in r] for b in r] for a in r])

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def __call__(self, a: int, b: int, c: int) -> int:
        return int(self.data[a, b, c])

    def bracket_many(self, a, b, c) -> np.ndarray:
        return self.data[a, b, c]

    def flat(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.data.ravel())

    def key(self) -> bytes:
        return self.data.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, TernaryTable) and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"TernaryTable(n={self.n}, {list(self.flat())})"

    def check_element(self, *xs: int) -> None:
        for x in xs:
            if not (0 <= int(x) < self.n):
                raise ElementError(f"element {x} not in carrier of size {self.n}")


class BinaryTable:
    """A total binary operation.  The identity element, if any, is discovered.

    Passing ``identity`` only cross-checks it against the discovered one.
    """

    __slots__ = ("data", "identity")

    def __init__(self, data, identity: int | None = None):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim == 1:
            n = _square_root(arr.size)
            arr = arr.reshape(n, n)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise AlgebraError(f"binary table must have shape (n, n), got {arr.shape}")
        n = arr.shape[0]
        _check_range(arr, n, "binary table")
        found = _find_identity(arr)
        if identity is not None and identity != found:
            raise AlgebraError(f"declared identity {identity} does not act as identity (found {found})")
        object.__setattr__(self, "data", _frozen(arr))
        object.__setattr__(self, "identity", found)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryTable is immutable")

    @classmethod
    def from_function(cls, n: int, op: Callable[[int, int], int]) -> "BinaryTable":
        return cls([[op(a, b) for b in range(n)] for a in range(n)])

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def __call__(self, a: int, b: int) -> int:
        return int(self.data[a, b])

    def product(self, *xs: int) -> int:
        """Left-to-right product of ``xs``; the empty product is the identity."""
        if not xs:
            if self.identity is None:
                raise PreconditionError("empty product without identity")
            return self.identity
        acc = int(xs[0])
        for x in xs[1:]:
            acc = int(self.data[acc, x])
        return acc

    def flat(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.data.ravel())

    def key(self) -> bytes:
        return self.data.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryTable) and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"BinaryTable(n={self.n}, identity={self.identity}, {list(self.flat())})"

    def associativity(self, limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
        s = self.data
        bad = s[s, :] != s[:, s]  # (ab)c vs a(bc); axes (a, b, c)
        return LawReport.from_mask("associativity", bad, limit)

    def is_associative(self) -> bool:
        return self.associativity(limit=0).holds

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.data, self.data.T))

    def inverses(self) -> dict[int, int]:
        """Map each invertible element to its two-sided inverse."""
        e = self.identity
        if e is None:
            return {}
        s = self.data
        out = {}
        for a in range(self.n):
            cands = np.nonzero((s[a, :] == e) & (s[:, a] == e))[0]
            if cands.size:
                out[a] = int(cands[0])
        return out

    def is_monoid(self) -> bool:
        return self.identity is not None and self.is_associative()

    def is_group(self) -> bool:
        return self.is_monoid() and len(self.inverses()) == self.n

    def power(self, a: int, k: int) -> int:
        """``a**k`` for any integer ``k``; negative powers need ``a`` invertible."""
        if k < 0:
            inv = self.inverses()
            if a not in inv:
                raise PreconditionError(f"element {a} is not invertible")
            a, k = inv[a], -k
        acc = self.product()
        for _ in range(k):
            acc = int(self.data[acc, a])
        return acc


def _find_identity(arr: np.ndarray) -> int | None:
    n = arr.shape[0]
    elems = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e, :], elems) and np.array_equal(arr[:, e], elems):
            return e
    return None


class Endomap:
    """A total map of ``{0..n-1}`` to itself.

    ``f @ g`` is the composite ``f ∘ g`` (apply ``g`` first).
    """

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int] | np.ndarray):
        arr = np.asarray(image, dtype=np.int64)
        if arr.ndim != 1 or arr.size < 1:
            raise AlgebraError(f"endomap must be a non-empty 1-d sequence, got shape {arr.shape}")
        _check_range(arr, arr.size, "endomap")
        object.__setattr__(self, "image", _frozen(arr))

    def __setattr__(self, name, value):
        raise AttributeError("Endomap is immutable")

    @classmethod
    def identity(cls, n: int) -> "Endomap":
        return cls(np.arange(n))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int], int]) -> "Endomap":
        return cls([f(x) for x in range(n)])

    @property
    def n(self) -> int:
        return self.image.size

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __matmul__(self, other: "Endomap") -> "Endomap":
        check_same_carrier(self, other)
        return Endomap(self.image[other.image])

    def __eq__(self, other) -> bool:
        return isinstance(other, Endomap) and np.array_equal(self.image, other.image)

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def __repr__(self) -> str:
        return f"Endomap({self.as_tuple()})"

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.image)

    def is_bijective(self) -> bool:
        return np.unique(self.image).size == self.n

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.n)))

    def is_involution(self) -> bool:
        return (self @ self).is_identity()

    def inverse(self) -> "Endomap":
        if not self.is_bijective():
            raise PreconditionError(f"{self} is not a bijection")
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.image] = np.arange(self.n)
        return Endomap(inv)

    def preimage(self, y: int) -> list[int]:
        return [int(x) for x in np.nonzero(self.image == y)[0]]


def check_same_carrier(*objs) -> int:
    sizes = {o.n for o in objs}
    if len(sizes) != 1:
        raise CarrierMismatch(f"carrier sizes differ: {sorted(sizes)}")
    return sizes.pop()
