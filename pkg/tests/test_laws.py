import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import literal_semiheap, literal_switch, literal_warp
from semiheaps import (
    BinaryTable,
    Endomap,
    PreconditionError,
    TernaryTable,
    check_semiheap,
    curry_binary,
    is_abelian,
    is_semiheap,
    is_switch,
    is_twist,
    is_warp,
    reverse,
    semiheap_from_switch,
    shift,
    switch_bracket,
    twist,
)
from semiheaps.constructions import (
    constant_semigroup,
    constant_ternar,
    cyclic_group,
    cyclic_sum_diheap,
    group_heap,
    klein_group,
    symmetric_group,
)
from semiheaps.search import semiheaps

C4 = cyclic_sum_diheap(4)
Z3 = group_heap(cyclic_group(3))
S3 = group_heap(symmetric_group(3))


def test_semiheap_examples():
    assert check_semiheap(C4).holds
    assert check_semiheap(C4).checked == 4**5
    assert check_semiheap(Z3).holds
    bad = TernaryTable.from_function(2, lambda a, b, c: 1 - c)
    rep = check_semiheap(bad)
    assert not rep.holds
    assert rep.violations
    assert not literal_semiheap(bad.flat(), 2)
    # every witness really violates the law
    for a, b, c, d, e in rep.violations:
        x = bad(bad(a, b, c), d, e)
        assert x != bad(a, bad(d, c, b), e) or x != bad(a, b, bad(c, d, e))


def test_witness_limit():
    bad = TernaryTable.from_function(2, lambda a, b, c: 1 - c)
    assert len(check_semiheap(bad, limit=3).violations) == 3
    assert check_semiheap(bad, limit=0).violations == ()


def test_reverse_and_abelian():
    assert reverse(C4) == C4
    assert is_abelian(C4)
    assert is_abelian(group_heap(klein_group()))
    assert not is_abelian(S3)
    r = reverse(S3)
    assert r != S3 and is_semiheap(r)
    for a, b, c in itertools.product(range(6), repeat=3):
        assert r(a, b, c) == S3(c, b, a)


@settings(max_examples=50)
@given(st.lists(st.integers(0, 2), min_size=27, max_size=27))
def test_reverse_is_an_involution(flat):
    t = TernaryTable(flat)
    assert reverse(reverse(t)) == t


def test_reverse_of_semiheap_is_semiheap():
    for t in semiheaps(3):
        assert is_semiheap(reverse(t))


def test_curryings():
    assert curry_binary(Z3, "middle", 0) == cyclic_group(3)
    ret = curry_binary(Z3, "middle", 1)
    assert ret.is_associative() and ret.identity == 1
    left = curry_binary(C4, "left", 2)
    assert all(left(x, y) == (2 + x + y) % 4 for x in range(4) for y in range(4))
    right = curry_binary(C4, "right", 3)
    assert right(1, 2) == 2
    with pytest.raises(ValueError):
        curry_binary(C4, "centre", 0)


def test_shifts():
    assert shift(C4, "mu", 1, 3).is_identity()
    assert shift(Z3, "lambda", 0, 0).is_identity()
    assert shift(C4, "rho", 1, 1).as_tuple() == (2, 3, 0, 1)
    with pytest.raises(ValueError):
        shift(C4, "nu", 0, 0)


def test_twist_examples():
    ident = Endomap.identity(4)
    assert twist(C4, ident) == C4
    plus2 = Endomap([2, 3, 0, 1])
    t = twist(C4, plus2)
    assert all(t(a, b, c) == (a + b + c + 2) % 4 for a, b, c in itertools.product(range(4), repeat=3))
    assert is_twist(C4, plus2)
    mu00 = shift(Z3, "mu", 0, 0)
    assert twist(Z3, mu00) == cyclic_sum_diheap(3)


def test_is_twist_rejects_non_semiheap():
    bad = TernaryTable.from_function(2, lambda a, b, c: 1 - c)
    with pytest.raises(PreconditionError):
        is_twist(bad, Endomap.identity(2))


def test_non_twist_exists_at_n2():
    found = [(t, f) for t in semiheaps(2) for f in itertools.product(range(2), repeat=2)
             if not is_twist(t, Endomap(f))]
    assert found
    for t, f in found:
        assert not literal_semiheap(t.data[:, list(f), :].ravel().tolist(), 2)


def test_warp_examples():
    for t in (C4, Z3, S3):
        for e in range(t.n):
            assert is_warp(t, shift(t, "lambda", e, e)).holds
            assert is_warp(t, shift(t, "rho", e, e)).holds
    assert is_warp(C4, shift(C4, "mu", 1, 1)).holds
    mu = shift(S3, "mu", 0, 0)
    assert mu.is_bijective()
    rep = is_warp(S3, mu)
    assert not rep.holds and rep.violations


def test_warp_agrees_with_oracle_at_n2():
    for t in semiheaps(2):
        for f in itertools.product(range(2), repeat=2):
            assert is_warp(t, Endomap(f)).holds == literal_warp(t.flat(), 2, f)


def test_switch_examples():
    z3 = cyclic_group(3)
    assert is_switch(z3, Endomap([0, 2, 1])).holds
    assert is_switch(cyclic_group(4), Endomap.identity(4)).holds


def test_constant_semigroup_switches_are_the_maps_fixing_the_constant():
    # phi(a phi(b) c) = phi(c0) and phi(c) b phi(a) = c0, so the law is phi(c0) = c0
    for n, c in ((2, 0), (3, 1)):
        s = constant_semigroup(n, c)
        for f in itertools.product(range(n), repeat=n):
            assert is_switch(s, Endomap(f)).holds == (f[c] == c)
            # the bracket is constant whatever f is, hence always a semiheap
            assert switch_bracket(s, Endomap(f)) == constant_ternar(n, c)
    assert not is_switch(constant_semigroup(2, 0), Endomap([1, 0])).holds
    assert not is_switch(constant_semigroup(3, 1), Endomap([2, 2, 2])).holds


def test_more_switch_examples():
    assert is_switch(cyclic_group(4), Endomap.identity(4)).holds
    # on a nonabelian group the identity is not a switch
    assert not is_switch(symmetric_group(3), Endomap.identity(6)).holds


def test_switch_needs_associativity():
    with pytest.raises(PreconditionError):
        is_switch(BinaryTable([[1, 1], [0, 0]]), Endomap.identity(2))


def test_switch_agrees_with_oracle():
    for s in (cyclic_group(3), symmetric_group(3)):
        for f in itertools.islice(itertools.product(range(s.n), repeat=s.n), 0, None, 97):
            assert is_switch(s, Endomap(f)).holds == literal_switch(s.flat(), s.n, f)


def test_semiheap_from_switch_examples():
    assert semiheap_from_switch(cyclic_group(3), Endomap([0, 2, 1])) == Z3
    assert semiheap_from_switch(cyclic_group(4), Endomap.identity(4)) == C4
    assert semiheap_from_switch(constant_semigroup(2, 0), Endomap([0, 0])) == constant_ternar(2, 0)
    with pytest.raises(PreconditionError):
        semiheap_from_switch(symmetric_group(3), Endomap.identity(6))


def test_switch_bracket_is_literal():
    s = symmetric_group(3)
    inv = s.inverses()
    phi = Endomap([inv[x] for x in range(6)])
    t = switch_bracket(s, phi)
    for a, b, c in itertools.product(range(6), repeat=3):
        assert t(a, b, c) == s(s(a, phi(b)), c)


class _LazyCube:
    """A lazy wrapper around a dense table, to exercise the sampled path."""

    def __init__(self, t):
        self.n, self._T = t.n, t.data

    def bracket_many(self, a, b, c):
        return self._T[a, b, c]


def test_lazy_exhaustive_matches_dense():
    for t in (C4, TernaryTable.from_function(2, lambda a, b, c: 1 - c)):
        dense, lazy = check_semiheap(t), check_semiheap(_LazyCube(t))
        assert dense.holds == lazy.holds
        assert dense.total_violations == lazy.total_violations
        assert dense.violations == lazy.violations
        assert lazy.seed is None


def test_sampled_check_records_seed_and_is_deterministic():
    bad = TernaryTable.from_function(3, lambda a, b, c: (a + 2 * c) % 3)
    r1 = check_semiheap(bad, samples=500, seed=11)
    r2 = check_semiheap(_LazyCube(bad), samples=500, seed=11)
    assert r1.seed == 11 and r1 == r2
    assert r1.checked == 500
    assert list(r1.violations) == sorted(r1.violations)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), min_size=8, max_size=8))
def test_n2_agrees_with_literal(flat):
    assert check_semiheap(TernaryTable(flat)).holds == literal_semiheap(flat, 2)
