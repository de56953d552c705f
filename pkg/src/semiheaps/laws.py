"""Law checkers, curryings, twists, warps and switches."""

from __future__ import annotations

from typing import Literal

import numpy as np

from .tables import (
    DEFAULT_WITNESS_LIMIT,
    BinaryTable,
    ElementError,
    Endomap,
    LawReport,
    PreconditionError,
    TernaryTable,
    ValidationError,
    check_same_carrier,
)

__all__ = [
    "check_semiheap",
    "is_semiheap",
    "reverse",
    "is_abelian",
    "curry_binary",
    "shift",
    "twist",
    "is_twist",
    "is_warp",
    "is_switch",
    "switch_bracket",
    "semiheap_from_switch",
    "homomorphism_report",
    "antihomomorphism_report",
    "ternar_homomorphism_report",
    "DEFAULT_SEED",
    "DEFAULT_SAMPLES",
]

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 10_000
# n**5 above this needs sampling
EXHAUSTIVE_QUINTUPLE_LIMIT = 5_000_000

Position = Literal["left", "middle", "right"]
ShiftKind = Literal["lambda", "mu", "rho"]


def _axes(n: int, k: int) -> list[np.ndarray]:
    """``k`` broadcastable index grids over ``range(n)``."""
    r = np.arange(n)
    return [r.reshape((1,) * i + (n,) + (1,) * (k - i - 1)) for i in range(k)]


def check_semiheap(t, limit: int = DEFAULT_WITNESS_LIMIT, samples: int | None = None,
                   seed: int = DEFAULT_SEED) -> LawReport:
    """Check ``[[a,b,c],d,e] = [a,[d,c,b],e] = [a,b,[c,d,e]]``.

    Dense tables are checked on all ``n**5`` quintuples.  Any other object with
    ``n`` and a vectorised ``bracket_many(a, b, c)`` (e.g. a lazy ternar) is
    checked exhaustively when small, otherwise on ``samples`` pseudorandom
    quintuples drawn with ``seed``.  Witnesses are quintuples ``(a,b,c,d,e)``.
    """
    n = t.n
    if isinstance(t, TernaryTable) and samples is None:
        T = t.data
        a, b, c, d, e = _axes(n, 5)
        outer_left = T[T]
        middle = T[a, T[d, c, b], e]
        outer_right = T[a, b, T[c, d, e]]
        bad = (outer_left != middle) | (outer_left != outer_right)
        return LawReport.from_mask("semiheap", bad, limit)

    if samples is None and n**5 <= EXHAUSTIVE_QUINTUPLE_LIMIT:
        quint = np.indices((n,) * 5).reshape(5, -1).T
        used_seed = None
    else:
        rng = np.random.default_rng(seed)
        quint = rng.integers(0, n, size=(samples or DEFAULT_SAMPLES, 5), dtype=np.int64)
        used_seed = seed
    a, b, c, d, e = quint.T
    br = t.bracket_many
    lhs = br(br(a, b, c), d, e)
    mid = br(a, br(d, c, b), e)
    rhs = br(a, b, br(c, d, e))
    bad = (lhs != mid) | (lhs != rhs)
    failing = quint[bad]
    if failing.size:
        failing = failing[np.lexsort(failing.T[::-1])]
    wit = tuple(tuple(int(v) for v in row) for row in failing[:limit])
    return LawReport("semiheap", wit, int(bad.sum()), int(bad.size), used_seed)


def is_semiheap(t: TernaryTable) -> bool:
    return check_semiheap(t, limit=0).holds


def reverse(t: TernaryTable) -> TernaryTable:
    """``[a,b,c] -> [c,b,a]``."""
    return TernaryTable(t.data.transpose(2, 1, 0))


def is_abelian(t: TernaryTable) -> bool:
    return bool(np.array_equal(t.data, t.data.transpose(2, 1, 0)))


def curry_binary(t: TernaryTable, position: Position, a: int) -> BinaryTable:
    """Fix one argument of the bracket.

    ``left`` gives ``x, y -> [a,x,y]``, ``middle`` the a-retract
    ``x, y -> [x,a,y]``, ``right`` gives ``x, y -> [x,y,a]``.
    """
    t.check_element(a)
    if position == "left":
        return BinaryTable(t.data[a, :, :])
    if position == "middle":
        return BinaryTable(t.data[:, a, :])
    if position == "right":
        return BinaryTable(t.data[:, :, a])
    raise ValueError(f"unknown position {position!r}")


def shift(t: TernaryTable, kind: ShiftKind, a: int, b: int) -> Endomap:
    """The unary curryings ``lambda_ab(x) = [a,b,x]``, ``mu_ab(x) = [a,x,b]``, ``rho_ab(x) = [x,a,b]``."""
    t.check_element(a, b)
    if kind == "lambda":
        return Endomap(t.data[a, b, :])
    if kind == "mu":
        return Endomap(t.data[a, :, b])
    if kind == "rho":
        return Endomap(t.data[:, a, b])
    raise ValueError(f"unknown shift kind {kind!r}")


def twist(t: TernaryTable, phi: Endomap) -> TernaryTable:
    """``[a,b,c]_phi = [a, phi(b), c]``; no law is assumed."""
    check_same_carrier(t, phi)
    return TernaryTable(t.data[:, phi.image, :])


def is_twist(t: TernaryTable, phi: Endomap) -> bool:
    if not is_semiheap(t):
        raise PreconditionError("is_twist is defined for semiheaps only")
    return is_semiheap(twist(t, phi))


def is_warp(t: TernaryTable, eta: Endomap, limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    """Check ``eta([a, eta(b), c]) = [eta(a), b, eta(c)]`` on all triples."""
    check_same_carrier(t, eta)
    h = eta.image
    T = t.data
    lhs = h[T[:, h, :]]
    rhs = T[np.ix_(h, np.arange(t.n), h)]
    return LawReport.from_mask("warp", lhs != rhs, limit)


def _require_associative(s: BinaryTable) -> None:
    if not s.is_associative():
        rep = s.associativity(limit=1)
        raise PreconditionError(f"binary table is not associative, e.g. at {rep.violations[0]}")


def is_switch(s: BinaryTable, phi: Endomap, limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    """Check ``phi(a . phi(b) . c) = phi(c) . b . phi(a)`` on all triples."""
    check_same_carrier(s, phi)
    _require_associative(s)
    S, f = s.data, phi.image
    a, b, c = _axes(s.n, 3)
    lhs = f[S[S[a, f[b]], c]]
    rhs = S[S[f[c], b], f[a]]
    return LawReport.from_mask("switch", lhs != rhs, limit)


def switch_bracket(s: BinaryTable, phi: Endomap) -> TernaryTable:
    """``[a,b,c]^phi = a . phi(b) . c`` without any validation."""
    check_same_carrier(s, phi)
    S, f = s.data, phi.image
    a, b, c = _axes(s.n, 3)
    return TernaryTable(S[S[a, f[b]], c])


def semiheap_from_switch(s: BinaryTable, phi: Endomap) -> TernaryTable:
    rep = is_switch(s, phi, limit=1)
    if not rep.holds:
        raise PreconditionError(f"{phi} is not a switch, e.g. at {rep.violations[0]}")
    t = switch_bracket(s, phi)
    if __debug__ and not is_semiheap(t):
        raise ValidationError("switch bracket is not a semiheap")
    return t


def homomorphism_report(src: BinaryTable, dst: BinaryTable, f: Endomap,
                        limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    """``f(x . y) = f(x) * f(y)`` for all pairs."""
    check_same_carrier(src, dst, f)
    h = f.image
    bad = h[src.data] != dst.data[np.ix_(h, h)]
    return LawReport.from_mask("homomorphism", bad, limit)


def antihomomorphism_report(src: BinaryTable, dst: BinaryTable, f: Endomap,
                            limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    """``f(x . y) = f(y) * f(x)`` for all pairs."""
    check_same_carrier(src, dst, f)
    h = f.image
    bad = h[src.data] != dst.data[np.ix_(h, h)].T
    return LawReport.from_mask("antihomomorphism", bad, limit)


def ternar_homomorphism_report(src: TernaryTable, dst: TernaryTable, f: Endomap,
                               limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    check_same_carrier(src, dst, f)
    h = f.image
    bad = h[src.data] != dst.data[np.ix_(h, h, h)]
    return LawReport.from_mask("ternar homomorphism", bad, limit)


def check_elements(n: int, *xs: int) -> None:
    for x in xs:
        if not (0 <= int(x) < n):
            raise ElementError(f"element {x} not in carrier of size {n}")
