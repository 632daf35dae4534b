import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermsrg.gf import (FieldError, FieldTable, absolute_trace, frobenius, gf_q2, in_subfield,
                        is_irreducible, is_square_in_subfield, make_field, norm,
                        search_primitive_poly, trace)

QS = (2, 3, 4, 5, 7, 8, 9)


@pytest.mark.parametrize("q", QS)
def test_field_axioms_exhaustive(q):
    F = gf_q2(q)
    Q = F.order
    assert Q == q * q
    idx = np.arange(Q)
    # additive and multiplicative groups
    assert all(sorted(F.add_table[a]) == list(idx) for a in idx)
    assert all(sorted(F.mul_table[a]) == list(idx) for a in idx[1:])
    assert np.all(F.add_table[idx, F.neg_table] == 0)
    assert np.all(F.mul_table[idx[1:], F.inv_table[1:]] == 1)
    # commutativity and distributivity
    assert np.array_equal(F.add_table, F.add_table.T)
    assert np.array_equal(F.mul_table, F.mul_table.T)
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
    lhs = F.mul_table[a, F.add_table[b, c]]
    rhs = F.add_table[F.mul_table[a, b], F.mul_table[a, c]]
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("q", QS)
def test_index_encoding_is_power_of_generator(q):
    F = gf_q2(q)
    g = 2
    x = 1
    for k in range(F.order - 1):
        assert x == k + 1
        x = int(F.mul(x, g))
    assert x == 1


@pytest.mark.parametrize("q", QS)
def test_frobenius_conjugation_and_norm(q):
    F = gf_q2(q)
    conj = F.power_map(q)
    nrm = F.power_map(q + 1)
    sub = set(F.subfield_indices(q).tolist())
    assert len(sub) == q
    # conjugation is an involutive automorphism fixing exactly GF(q)
    assert np.array_equal(conj[conj], np.arange(F.order))
    assert {int(x) for x in np.nonzero(conj == np.arange(F.order))[0]} == sub
    # the norm maps onto GF(q) and each nonzero value has q+1 preimages
    assert set(nrm.tolist()) == sub
    vals, cnt = np.unique(nrm[1:], return_counts=True)
    assert np.all(cnt == q + 1)


def test_element_wrapper_matches_tables():
    F = gf_q2(3)
    a, b = F.element(5), F.element(7)
    assert (a + b).value == F.add(5, 7)
    assert (a * b).value == F.mul(5, 7)
    assert (a / b) * b == a
    assert a ** (F.order - 1) == F.one
    assert frobenius(frobenius(a, 3), 3) == a
    assert in_subfield(norm(a, 3), 3) and in_subfield(trace(a, 3), 3)


def test_square_and_trace_in_subfield():
    F = gf_q2(3)
    sub = [F.element(int(i)) for i in F.subfield_indices(3)]
    squares = {x * x for x in sub}
    for y in sub:
        assert is_square_in_subfield(y, 3) == (y in squares)
    F2 = gf_q2(4)
    sub2 = [F2.element(int(i)) for i in F2.subfield_indices(4)]
    assert sorted(absolute_trace(y, 4) for y in sub2) == [0, 0, 1, 1]


@pytest.mark.parametrize("p,m", [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2)])
def test_shipped_polynomial_is_lexicographic_primitive(p, m):
    F = make_field(p, m)
    assert list(F.modulus_poly) == search_primitive_poly(p, m)


def test_bad_modulus_rejected():
    with pytest.raises(FieldError):
        FieldTable(2, 2, (1, 0, 1))  # x^2+1 = (x+1)^2 over GF(2)
    assert not is_irreducible([1, 0, 1], 2)
    with pytest.raises(ZeroDivisionError):
        gf_q2(2).inv(0)


@given(st.sampled_from(QS), st.data())
def test_power_laws(q, data):
    F = gf_q2(q)
    a = data.draw(st.integers(1, F.order - 1))
    e1 = data.draw(st.integers(-50, 50))
    e2 = data.draw(st.integers(-50, 50))
    assert F.mul(F.power(a, e1), F.power(a, e2)) == F.power(a, e1 + e2)
    assert F.power(F.power(a, e1), e2) == F.power(a, e1 * e2)


@given(st.sampled_from(QS), st.data())
def test_code_roundtrip(q, data):
    F = gf_q2(q)
    c = data.draw(st.integers(0, F.order - 1))
    assert F.to_int(F.from_int(c)) == c


def test_tables_are_read_only():
    F = gf_q2(3)
    with pytest.raises(ValueError):
        F.add_table[0, 0] = 1
