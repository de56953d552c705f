"""Semiheaps with a biunit pair versus monoids with a bijective switch.

``omega`` sends ``(S, (a, b))`` to the a-retract ``(S, <>_a)`` with identity
``b`` and switch ``mu_bb``; ``lambda_corr`` sends a monoid with bijective
switch ``phi`` to ``(S, [x,y,z] = x phi(y) z)`` with the pair
``(phi^-1(1), 1)``.  Both maps re-derive every property they rely on and
raise :class:`ValidationError` if one fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biunits import biunit_pairs
from .laws import (
    antihomomorphism_report,
    curry_binary,
    homomorphism_report,
    is_semiheap,
    is_switch,
    shift,
    switch_bracket,
)
from .tables import (
    DEFAULT_WITNESS_LIMIT,
    BinaryTable,
    Endomap,
    LawReport,
    PreconditionError,
    TernaryTable,
    ValidationError,
    check_same_carrier,
)

__all__ = [
    "SwitchMonoid",
    "omega",
    "lambda_corr",
    "involuted_monoid_of_biunit",
    "biunit_isomorphism",
    "check_switch_monoid_laws",
]


@dataclass(frozen=True)
class SwitchMonoid:
    """A monoid together with a switch; both laws are checked on construction."""

    monoid: BinaryTable
    switch: Endomap

    def __post_init__(self):
        check_same_carrier(self.monoid, self.switch)
        if self.monoid.identity is None:
            raise PreconditionError("switch monoid needs an identity element")
        rep = is_switch(self.monoid, self.switch, limit=1)
        if not rep.holds:
            raise PreconditionError(f"{self.switch} is not a switch, e.g. at {rep.violations[0]}")

    @property
    def n(self) -> int:
        return self.monoid.n

    @property
    def identity(self) -> int:
        return self.monoid.identity


def _reconstruction_report(t: TernaryTable, retract: BinaryTable, f: Endomap) -> LawReport:
    """``[x,y,z] = x <> f(y) <> z`` for all triples."""
    rebuilt = switch_bracket(retract, f)
    return LawReport.from_mask("reconstruction", rebuilt.data != t.data)


def omega(t: TernaryTable, pair: tuple[int, int]) -> SwitchMonoid:
    a, b = (int(x) for x in pair)
    t.check_element(a, b)
    if not is_semiheap(t):
        raise PreconditionError("omega needs a semiheap")
    if not biunit_pairs(t).is_full(a, b):
        raise PreconditionError(f"({a}, {b}) is not a biunit pair")
    retract = curry_binary(t, "middle", a)
    if retract.identity != b:
        raise ValidationError(f"{b} is not the identity of the {a}-retract")
    if not retract.is_associative():
        raise ValidationError(f"the {a}-retract is not associative")
    mu_bb = shift(t, "mu", b, b)
    if not is_switch(retract, mu_bb, limit=0).holds:
        raise ValidationError("mu_bb is not a switch of the retract")
    if not mu_bb.is_bijective():
        raise ValidationError("mu_bb is not a bijection")
    if mu_bb(a) != b:
        raise ValidationError(f"mu_bb(a) = {mu_bb(a)}, expected {b}")
    if not _reconstruction_report(t, retract, mu_bb).holds:
        raise ValidationError("the retract and mu_bb do not rebuild the bracket")
    return SwitchMonoid(retract, mu_bb)


def lambda_corr(m: SwitchMonoid) -> tuple[TernaryTable, tuple[int, int]]:
    phi = m.switch
    if not phi.is_bijective():
        raise PreconditionError("lambda_corr needs a bijective switch")
    one = m.identity
    pair = (phi.inverse()(one), one)
    t = switch_bracket(m.monoid, phi)
    if not is_semiheap(t):
        raise ValidationError("switch bracket is not a semiheap")
    if not biunit_pairs(t).is_full(*pair):
        raise ValidationError(f"{pair} is not a biunit pair of the switch bracket")
    return t, pair


def involuted_monoid_of_biunit(t: TernaryTable, e: int) -> SwitchMonoid:
    """The retract at a biunit ``e`` with involution ``mu_ee``."""
    t.check_element(e)
    if not is_semiheap(t):
        raise PreconditionError("needs a semiheap")
    if e not in biunit_pairs(t).biunit_elements:
        raise PreconditionError(f"{e} is not a biunit element")
    m = omega(t, (e, e))
    mu = m.switch
    if not mu.is_involution():
        raise ValidationError("mu_ee is not an involution")
    if not antihomomorphism_report(m.monoid, m.monoid, mu, limit=0).holds:
        raise ValidationError("mu_ee is not an antihomomorphism")
    return m


def biunit_isomorphism(t: TernaryTable, e: int, u: int) -> Endomap:
    """``rho_eu(x) = [x,e,u]`` as an isomorphism of involuted monoids at ``e`` and ``u``."""
    src = involuted_monoid_of_biunit(t, e)
    dst = involuted_monoid_of_biunit(t, u)
    rho = shift(t, "rho", e, u)
    if not rho.is_bijective():
        raise ValidationError("rho_eu is not a bijection")
    if not homomorphism_report(src.monoid, dst.monoid, rho, limit=0).holds:
        raise ValidationError("rho_eu is not a monoid homomorphism")
    if rho(e) != u:
        raise ValidationError("rho_eu does not send e to u")
    if rho @ src.switch != dst.switch @ rho:
        raise ValidationError("rho_eu does not intertwine the involutions")
    return rho


def _order(m: BinaryTable, u: int) -> int:
    one, x, k = m.identity, u, 1
    while x != one:
        x = m(x, u)
        k += 1
        if k > m.n:
            raise PreconditionError(f"{u} has no finite order in the unit group")
    return k


def check_switch_monoid_laws(m: SwitchMonoid, u: int, limit: int = DEFAULT_WITNESS_LIMIT) -> LawReport:
    """Check the six consequences of ``phi(u) = 1`` for a switch ``phi`` of a monoid.

    1. ``phi`` is an involutive antihomomorphism exactly when ``u = 1``.
    2. ``u`` is invertible with inverse ``phi(1)``.
    3. ``phi(ab) = phi(b) u phi(a)`` and ``phi(a) phi(b) = phi(b u^-1 a)``.
    4. ``phi(a) u^-1 = phi(u^-1 a)``, ``u^-1 phi(a) = phi(a u^-1)``,
       ``phi(u a) = phi(a) u``, ``phi(a u) = u phi(a)``.
    5. ``phi(u^k) = u^(k-1)`` for ``|k|`` up to the order of ``u``.
    6. ``phi`` is a bijection.

    Witnesses are prefixed with the item label, e.g. ``("3a", a, b)``.
    """
    S = m.monoid.data
    f = m.switch.image
    one = m.identity
    n = m.n
    if not (0 <= u < n) or f[u] != one:
        raise PreconditionError(f"phi({u}) must equal the identity {one}")
    reports = []

    def item(label, bad):
        reports.append(LawReport.from_mask(label, np.asarray(bad), limit))

    anti = bool(antihomomorphism_report(m.monoid, m.monoid, m.switch, limit=0).holds)
    invol = m.switch.is_involution()
    item("1", np.array([(anti and invol) != (u == one)]))

    u_inv = int(f[one])
    item("2", np.array([S[u, u_inv] != one, S[u_inv, u] != one]))

    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    item("3a", f[S[a, b]] != S[S[f[b], u], f[a]])
    item("3b", S[f[a], f[b]] != f[S[S[b, u_inv], a]])

    x = np.arange(n)
    item("4a", S[f[x], u_inv] != f[S[u_inv, x]])
    item("4b", S[u_inv, f[x]] != f[S[x, u_inv]])
    item("4c", f[S[u, x]] != S[f[x], u])
    item("4d", f[S[x, u]] != S[u, f[x]])

    if reports[1].holds:
        order = _order(m.monoid, u)
        bad_k = [k for k in range(-order, order + 1)
                 if f[m.monoid.power(u, k)] != m.monoid.power(u, k - 1)]
        reports.append(LawReport("5", tuple((k,) for k in bad_k[:limit]), len(bad_k), 2 * order + 1))
    else:
        reports.append(LawReport("5", (("u not invertible",),), 1, 1))

    item("6", np.array([not m.switch.is_bijective()]))
    return LawReport.combine("switch monoid laws", reports, limit)
