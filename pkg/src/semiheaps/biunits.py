"""Biunit pairs and the structure they force on a semiheap."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .laws import (
    antihomomorphism_report,
    curry_binary,
    homomorphism_report,
    is_abelian,
    is_semiheap,
    is_warp,
    shift,
    twist,
)
from .tables import (
    DEFAULT_WITNESS_LIMIT,
    Endomap,
    LawReport,
    PreconditionError,
    TernaryTable,
    ValidationError,
)

__all__ = [
    "BiunitPairReport",
    "Classification",
    "biunit_pairs",
    "classify",
    "partner_involution",
    "currying_group",
    "CurryingGroup",
    "biunit_pair_product_closure",
    "two_pair_isomorphism",
    "TwoPairIsomorphism",
    "pair_masks",
]


def pair_masks(t: TernaryTable) -> tuple[np.ndarray, np.ndarray]:
    """Boolean ``(n, n)`` masks of left pairs (``[a,b,x] = x``) and right pairs (``[x,a,b] = x``)."""
    T = t.data
    r = np.arange(t.n)
    left = (T == r[None, None, :]).all(axis=2)
    right = (T == r[:, None, None]).all(axis=0)
    return left, right


def _pairs(mask: np.ndarray) -> tuple[tuple[int, int], ...]:
    return tuple((int(a), int(b)) for a, b in np.argwhere(mask))


@dataclass(frozen=True)
class BiunitPairReport:
    """Every ordered pair of a ternar, classified.

    A pair ``(a, b)`` is reported exactly as found: left means
    ``[a,b,x] = x`` for all ``x``, right means ``[x,a,b] = x``.
    """

    left_pairs: tuple[tuple[int, int], ...]
    right_pairs: tuple[tuple[int, int], ...]
    full_pairs: tuple[tuple[int, int], ...]
    biunit_elements: tuple[int, ...]

    def fingerprint(self) -> tuple[int, int, int]:
        return (len(self.left_pairs), len(self.right_pairs), len(self.full_pairs))

    def is_full(self, a: int, b: int) -> bool:
        return (a, b) in self.full_pairs

    def partners(self, a: int) -> list[int]:
        return [y for x, y in self.full_pairs if x == a]

    def support(self) -> tuple[int, ...]:
        """Elements that are the first coordinate of some full pair."""
        return tuple(sorted({a for a, _ in self.full_pairs}))

    def left_biunits(self) -> tuple[int, ...]:
        return tuple(a for a, b in self.left_pairs if a == b)

    def right_biunits(self) -> tuple[int, ...]:
        return tuple(a for a, b in self.right_pairs if a == b)

    def as_dict(self) -> dict:
        return {
            "left_pairs": [list(p) for p in self.left_pairs],
            "right_pairs": [list(p) for p in self.right_pairs],
            "full_pairs": [list(p) for p in self.full_pairs],
            "biunit_elements": list(self.biunit_elements),
        }


def biunit_pairs(t: TernaryTable) -> BiunitPairReport:
    left, right = pair_masks(t)
    full = left & right
    return BiunitPairReport(
        _pairs(left),
        _pairs(right),
        _pairs(full),
        tuple(int(a) for a in np.nonzero(np.diag(full))[0]),
    )


@dataclass(frozen=True)
class Classification:
    semiheap: bool
    abelian: bool
    heap: bool
    diheap: bool

    def as_dict(self) -> dict:
        return {"semiheap": self.semiheap, "abelian": self.abelian, "heap": self.heap, "diheap": self.diheap}


def classify(t: TernaryTable) -> Classification:
    semi = is_semiheap(t)
    rep = biunit_pairs(t)
    heap = semi and len(rep.biunit_elements) == t.n
    diheap = semi and len(rep.support()) == t.n
    return Classification(semi, is_abelian(t), heap, diheap)


def _require_full_pair(t: TernaryTable, a: int, b: int, rep: BiunitPairReport | None = None) -> BiunitPairReport:
    t.check_element(a, b)
    rep = rep or biunit_pairs(t)
    if not rep.is_full(a, b):
        raise PreconditionError(f"({a}, {b}) is not a biunit pair")
    return rep


def partner_involution(t: TernaryTable) -> Endomap:
    """The map sending ``a`` to its unique biunit partner, for a diheap.

    Self-checks that it is an involutive warp and that twisting by it gives a
    heap.
    """
    if not classify(t).diheap:
        raise PreconditionError("partner_involution needs a diheap")
    rep = biunit_pairs(t)
    image = []
    for a in range(t.n):
        ps = rep.partners(a)
        if len(ps) != 1:
            raise ValidationError(f"element {a} has partners {ps}; expected exactly one")
        image.append(ps[0])
    psi = Endomap(image)
    if not psi.is_involution():
        raise ValidationError("partner map is not an involution")
    if not is_warp(t, psi, limit=0).holds:
        raise ValidationError("partner map is not a warp")
    if not classify(twist(t, psi)).heap:
        raise ValidationError("twist by the partner map is not a heap")
    return psi


@dataclass(frozen=True)
class CurryingGroup:
    pair: tuple[int, int]
    generators: dict
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)


def _close(gens: list[Endomap]) -> frozenset:
    n = gens[0].n
    ident = Endomap.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = g @ f
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


def currying_group(t: TernaryTable, pair: tuple[int, int]) -> CurryingGroup:
    """Close ``{Id, mu_aa, mu_bb, mu_ab, mu_ba}`` under composition.

    Besides the group axioms this checks the identities tying the one- and
    two-sided shifts of the pair together::

        mu_aa mu_bb = mu_ab^2 = mu_ba^2 = lambda_ab = rho_ab = Id
        rho_aa = mu_aa mu_ab = mu_ba mu_aa      rho_bb = mu_bb mu_ba = mu_ab mu_bb
        lambda_aa = mu_ab mu_aa = mu_aa mu_ba   lambda_bb = mu_ba mu_bb = mu_bb mu_ab
        lambda_aa lambda_bb = rho_aa rho_bb = Id
    """
    a, b = pair
    _require_full_pair(t, a, b)
    mu = {k: shift(t, "mu", *k) for k in [(a, a), (b, b), (a, b), (b, a)]}
    for k, f in mu.items():
        if not f.is_bijective():
            raise ValidationError(f"mu_{k} is not a bijection")
    ident = Endomap.identity(t.n)
    lam = lambda x, y: shift(t, "lambda", x, y)  # noqa: E731
    rho = lambda x, y: shift(t, "rho", x, y)  # noqa: E731
    m_aa, m_bb, m_ab, m_ba = mu[(a, a)], mu[(b, b)], mu[(a, b)], mu[(b, a)]
    identities = {
        "mu_aa.mu_bb = Id": m_aa @ m_bb == ident,
        "mu_ab^2 = Id": m_ab @ m_ab == ident,
        "mu_ba^2 = Id": m_ba @ m_ba == ident,
        "lambda_ab = Id": lam(a, b) == ident,
        "rho_ab = Id": rho(a, b) == ident,
        "rho_aa = mu_aa.mu_ab": rho(a, a) == m_aa @ m_ab,
        "rho_aa = mu_ba.mu_aa": rho(a, a) == m_ba @ m_aa,
        "rho_bb = mu_bb.mu_ba": rho(b, b) == m_bb @ m_ba,
        "rho_bb = mu_ab.mu_bb": rho(b, b) == m_ab @ m_bb,
        "lambda_aa = mu_ab.mu_aa": lam(a, a) == m_ab @ m_aa,
        "lambda_aa = mu_aa.mu_ba": lam(a, a) == m_aa @ m_ba,
        "lambda_bb = mu_ba.mu_bb": lam(b, b) == m_ba @ m_bb,
        "lambda_bb = mu_bb.mu_ab": lam(b, b) == m_bb @ m_ab,
        "lambda_aa.lambda_bb = Id": lam(a, a) @ lam(b, b) == ident,
        "rho_aa.rho_bb = Id": rho(a, a) @ rho(b, b) == ident,
    }
    failed = [k for k, ok in identities.items() if not ok]
    if failed:
        raise ValidationError(f"currying identities fail for pair {pair}: {failed}")

    elements = _close([m_aa, m_bb, m_ab, m_ba])
    for f in elements:
        if f.inverse() not in elements:
            raise ValidationError("closure is missing an inverse")
        for g in elements:
            if f @ g not in elements:
                raise ValidationError("closure is not closed")
    for shifted in (lam(a, a), lam(b, b), rho(a, a), rho(b, b)):
        if shifted not in elements:
            raise ValidationError("a one-sided shift of the pair is outside the group")
    gens = {"Id": ident, "mu_aa": m_aa, "mu_bb": m_bb, "mu_ab": m_ab, "mu_ba": m_ba}
    return CurryingGroup(pair, gens, elements)


def biunit_pair_product_closure(t: TernaryTable, pairs=None, side: str = "left",
                                limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    """Bracket pairs componentwise and test the result stays a pair of the same kind.

    ``side`` is ``left``, ``right`` or ``full``; ``pairs`` defaults to every
    pair of that kind.  Witnesses are ``(p1, p2, p3, image)``.  With
    ``side="support"`` the check is instead that the elements having a full
    partner are closed under the bracket (witnesses ``(x, y, z)``).
    """
    left, right = pair_masks(t)
    T = t.data
    if side == "support":
        support = (left & right).any(axis=1)
        elems = np.nonzero(support)[0]
        sub = T[np.ix_(elems, elems, elems)]
        bad = ~support[sub]
        rep = LawReport.from_mask("support closure", bad, limit)
        wit = tuple(tuple(int(elems[i]) for i in w) for w in rep.violations)
        return LawReport(rep.law, wit, rep.total_violations, rep.checked)
    mask = {"left": left, "right": right, "full": left & right}[side]
    if pairs is None:
        pairs = _pairs(mask)
    else:
        pairs = [tuple(map(int, p)) for p in pairs]
        for p in pairs:
            if not mask[p]:
                raise PreconditionError(f"{p} is not a {side} biunit pair")
    wit = []
    total = 0
    for p1, p2, p3 in itertools.product(pairs, repeat=3):
        img = (int(T[p1[0], p2[0], p3[0]]), int(T[p1[1], p2[1], p3[1]]))
        if not mask[img]:
            total += 1
            if len(wit) < limit:
                wit.append((p1, p2, p3, img))
    return LawReport(f"{side} pair product closure", tuple(wit), total, len(pairs) ** 3)


@dataclass(frozen=True)
class TwoPairIsomorphism:
    iso: Endomap
    checks: dict

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.checks.values())


def two_pair_isomorphism(t: TernaryTable, p1: tuple[int, int], p2: tuple[int, int]) -> TwoPairIsomorphism:
    """Monoid isomorphism ``lambda_da : (S, <>_a, b) -> (S, <>_c, d)`` for pairs ``(a,b)``, ``(c,d)``.

    Also checks ``lambda_da . mu_bb = mu_dd . lambda_ad^-1`` and the
    anti-automorphism facts for each pair ``(x, y)``: ``mu_xy`` and ``mu_yx``
    reverse both retracts ``<>_x`` and ``<>_y``, and ``mu_xx`` is an
    anti-isomorphism ``<>_x -> <>_y``.  Any failure raises ``ValidationError``.
    """
    a, b = p1
    c, d = p2
    rep = _require_full_pair(t, a, b)
    _require_full_pair(t, c, d, rep)
    lam_da = shift(t, "lambda", d, a)
    src = curry_binary(t, "middle", a)
    dst = curry_binary(t, "middle", c)
    checks: dict[str, LawReport] = {}
    checks["hom"] = homomorphism_report(src, dst, lam_da)
    checks["identity"] = LawReport("identity", () if lam_da(b) == d else ((b,),), int(lam_da(b) != d), 1)
    checks["bijective"] = LawReport("bijective", (), int(not lam_da.is_bijective()), 1)
    lam_ad = shift(t, "lambda", a, d)
    if lam_ad.is_bijective():
        lhs = lam_da @ shift(t, "mu", b, b)
        rhs = shift(t, "mu", d, d) @ lam_ad.inverse()
        bad = lhs.image != rhs.image
        checks["switch relation"] = LawReport.from_mask("switch relation", bad)
    else:
        checks["switch relation"] = LawReport("switch relation", (("lambda_ad not bijective",),), 1, 1)
    for x, y in {p1, p2}:
        rx = curry_binary(t, "middle", x)
        ry = curry_binary(t, "middle", y)
        for name, f in ((f"mu_{x}{y}", shift(t, "mu", x, y)), (f"mu_{y}{x}", shift(t, "mu", y, x))):
            checks[f"{name} anti-aut <>_{x}"] = antihomomorphism_report(rx, rx, f)
            checks[f"{name} anti-aut <>_{y}"] = antihomomorphism_report(ry, ry, f)
        m_xx = shift(t, "mu", x, x)
        checks[f"mu_{x}{x} anti-iso <>_{x}-><>_{y}"] = antihomomorphism_report(rx, ry, m_xx)
        checks[f"mu_{x}{x} bijective"] = LawReport("bijective", (), int(not m_xx.is_bijective()), 1)
    out = TwoPairIsomorphism(lam_da, checks)
    if not out.holds:
        bad = [k for k, r in checks.items() if not r.holds]
        raise ValidationError(f"two-pair isomorphism checks failed: {bad}")
    return out
