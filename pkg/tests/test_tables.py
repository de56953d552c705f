import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiheaps import (
    AlgebraError,
    BinaryTable,
    CarrierMismatch,
    ElementError,
    Endomap,
    LawReport,
    TernaryTable,
)
from semiheaps.constructions import cyclic_group, symmetric_group
from semiheaps.tables import check_same_carrier


def test_ternary_table_accepts_flat_and_cube():
    flat = list(range(2)) * 4
    t = TernaryTable(flat)
    assert t.n == 2
    assert TernaryTable(np.array(flat).reshape(2, 2, 2)) == t
    assert t(0, 1, 1) == flat[3]
    assert t.flat() == tuple(flat)


@pytest.mark.parametrize("bad", [[0] * 7, [0, 0, 0, 0, 0, 0, 0, 2], [[0, 1], [1, 0]]])
def test_ternary_table_rejects_bad_shapes_and_entries(bad):
    with pytest.raises(AlgebraError):
        TernaryTable(bad)


def test_tables_are_immutable():
    t = TernaryTable([0] * 8)
    with pytest.raises(ValueError):
        t.data[0, 0, 0] = 1
    with pytest.raises(AttributeError):
        t.data = None


def test_equal_tables_hash_equal():
    a = TernaryTable([0, 1] * 4)
    b = TernaryTable(np.array([0, 1] * 4))
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


def test_check_element():
    t = TernaryTable([0] * 8)
    t.check_element(0, 1)
    with pytest.raises(ElementError):
        t.check_element(2)


def test_binary_identity_discovery_and_cross_check():
    z3 = cyclic_group(3)
    assert z3.identity == 0
    assert BinaryTable(z3.data, identity=0).identity == 0
    with pytest.raises(AlgebraError):
        BinaryTable(z3.data, identity=1)
    assert BinaryTable(np.zeros((2, 2), dtype=int)).identity is None


def test_binary_associativity_report():
    # x * y = (x + 1) mod 2 is not associative: (0*0)*0 = 0, 0*(0*0) = 1
    s = BinaryTable([[1, 1], [0, 0]])
    rep = s.associativity()
    assert not rep.holds
    assert rep.violations[0] == (0, 0, 0)
    assert cyclic_group(4).is_associative()


def test_group_inverses_and_powers():
    s3 = symmetric_group(3)
    assert s3.is_group() and not s3.is_commutative()
    inv = s3.inverses()
    for x in range(6):
        assert s3(x, inv[x]) == s3.identity
    z5 = cyclic_group(5)
    assert z5.power(2, 3) == 1
    assert z5.power(2, -1) == 3
    assert z5.power(2, 0) == 0


def test_endomap_composition_order():
    f = Endomap([1, 2, 0])
    g = Endomap([0, 0, 1])
    # (f @ g)(x) = f(g(x))
    assert (f @ g).as_tuple() == (1, 1, 2)
    assert f.inverse() @ f == Endomap.identity(3)
    assert not g.is_bijective()
    with pytest.raises(AlgebraError):
        g.inverse()
    assert Endomap([1, 0]).is_involution()
    assert g.preimage(0) == [0, 1]


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatch):
        check_same_carrier(TernaryTable([0] * 8), Endomap([0, 0, 0]))


def test_law_report_witnesses_are_sorted_and_bounded():
    bad = np.zeros((3, 3), dtype=bool)
    bad[2, 0] = bad[0, 2] = bad[1, 1] = True
    rep = LawReport.from_mask("x", bad, limit=2)
    assert rep.violations == ((0, 2), (1, 1))
    assert rep.total_violations == 3 and rep.checked == 9
    assert not rep
    assert LawReport.from_mask("x", ~bad & False)


@given(st.lists(st.integers(0, 2), min_size=27, max_size=27))
def test_flat_round_trip(flat):
    t = TernaryTable(flat)
    assert TernaryTable(t.flat()) == t
    assert t.key() == TernaryTable(np.array(flat)).key()
