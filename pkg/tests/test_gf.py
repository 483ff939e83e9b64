"""Field arithmetic: exhaustive axioms for small q, square-class
structure, the Frobenius group, and the built-in modulus table."""

import numpy as np
import pytest

from scheme_forge.gf import (
    CONWAY_POLYNOMIALS,
    GF,
    FieldMismatchError,
    NoInvolutionError,
    field,
)

SMALL_Q = [5, 7, 9, 13, 25, 27, 49]


def test_gf7_basics():
    f = field(7)
    assert f.add(3, 5) == 1
    assert f.inv(3) == 5
    assert f.mul(3, 5) == 1


def test_gf9_conway_arithmetic():
    f = field(9)
    x = f((0, 1))
    assert x + f((1, 2)) == f.one()          # x + (2x+1) = 1
    assert x * x == f((1, 1))                # x^2 = x + 1 under x^2+2x+2
    for g in range(9):
        assert f.add(0, g) == g


@pytest.mark.parametrize("q", SMALL_Q)
def test_lagrange(q):
    f = field(q)
    for v in range(1, q):
        assert f.pow(v, q - 1) == 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    f = field(q)
    a = np.arange(q)
    # commutativity and identity from the tables
    assert np.array_equal(f.ADD, f.ADD.T)
    assert np.array_equal(f.MUL, f.MUL.T)
    assert np.array_equal(f.ADD[0], a)
    assert np.array_equal(f.MUL[1], a)
    # associativity and distributivity over all q^3 triples
    A, B, C = a[:, None, None], a[None, :, None], a[None, None, :]
    assert np.array_equal(f.ADD[f.ADD[A, B], C], f.ADD[A, f.ADD[B, C]])
    assert np.array_equal(f.MUL[f.MUL[A, B], C], f.MUL[A, f.MUL[B, C]])
    assert np.array_equal(f.MUL[A, f.ADD[B, C]], f.ADD[f.MUL[A, B], f.MUL[A, C]])
    # additive and multiplicative inverses
    assert all(f.add(v, f.neg(v)) == 0 for v in range(q))
    assert all(f.mul(v, f.inv(v)) == 1 for v in range(1, q))


@pytest.mark.parametrize("q", SMALL_Q)
def test_square_class_structure(q):
    f = field(q)
    squares = [v for v in range(1, q) if f.is_square(v)]
    assert len(squares) == (q - 1) // 2
    for v in range(1, q):
        assert f.is_square(f.mul(v, v))
    # multiplicativity: square(xy) = square(x) XNOR square(y)
    for x in range(1, q):
        for y in range(1, q):
            assert f.is_square(f.mul(x, y)) == (f.is_square(x) == f.is_square(y))


def test_is_square_examples():
    f9 = field(9)
    assert f9.is_square(f9.neg(1))           # q = 1 mod 4 forces -1 square
    f7 = field(7)
    # oracle: 3^((7-1)/2) = 27 = 6 = -1 mod 7
    assert pow(3, 3, 7) == 7 - 1
    assert not f7.is_square(3)


@pytest.mark.parametrize("q", SMALL_Q + [81, 121, 125, 169])
def test_legendre_criterion_for_two(q):
    f = field(q)
    predicted = ((-1) ** ((f.p * f.p - 1) // 8)) ** f.m == 1
    assert f.is_square(f(2).val if f.m == 1 else 2) == predicted


@pytest.mark.parametrize("q", SMALL_Q)
def test_frobenius_is_automorphism(q):
    f = field(q)
    for j in range(f.m):
        fr = f.FROB[j]
        assert np.array_equal(fr[f.ADD], f.ADD[fr[:, None], fr[None, :]])
        assert np.array_equal(fr[f.MUL], f.MUL[fr[:, None], fr[None, :]])
    # the automorphism group has order m: j-th power of Frobenius is
    # identity exactly when j = 0
    for j in range(1, f.m):
        assert not np.array_equal(f.FROB[j], f.FROB[0])


def test_involution():
    f = field(9)
    for v in range(9):
        assert f.sigma(f.sigma(v)) == v
        assert f.sigma(v) == f.pow(v, 3)
    assert sum(1 for v in range(9) if f.sigma(v) == v) == 3  # the prime subfield
    with pytest.raises(NoInvolutionError):
        field(7).sigma(1)
    with pytest.raises(NoInvolutionError):
        field(27).sigma(1)


def test_primitive_element_gf7():
    f = field(7)
    # oracle: 2 has order 3, so 3 is the least generator
    assert sorted({pow(2, k, 7) for k in range(1, 7)}) == [1, 2, 4]
    assert len({pow(3, k, 7) for k in range(1, 7)}) == 6
    assert f.primitive_element() == 3


def test_primitive_element_gf9_is_x():
    f = field(9)
    x = f((0, 1)).val
    # oracle: direct powering, order must be exactly 8
    acc, order = x, 1
    while acc != 1:
        acc = f.mul(acc, x)
        order += 1
    assert order == 8
    assert f.primitive_element() == x


@pytest.mark.parametrize("q", SMALL_Q + [81, 121, 125, 169])
def test_fixed_nonsquare(q):
    f = field(q)
    assert not f.is_square(f.fixed_nonsquare())
    assert f.fixed_nonsquare() == f.primitive_element()


def test_conway_table_entries_are_primitive():
    for q, mod in CONWAY_POLYNOMIALS.items():
        f = field(q)
        assert f.modulus == mod
        x = f.from_coeffs([0, 1])
        acc, order = x, 1
        while acc != 1:
            acc = f.mul(acc, x)
            order += 1
        assert order == q - 1, f"x is not primitive mod the stored polynomial for q={q}"


def test_canonical_order_is_low_degree_lex():
    f = field(9)
    ordered = [f.coeffs(v) for v in f.elements()]
    assert ordered == sorted(ordered)


def test_custom_modulus():
    f = field(9, modulus=(1, 0, 1))  # x^2 + 1, irreducible mod 3
    assert f.q == 9
    x = f.from_coeffs([0, 1])
    assert f.mul(x, x) == f.neg(1)
    with pytest.raises(ValueError):
        field(9, modulus=(2, 0, 1))  # x^2 + 2 = (x+1)(x+2) mod 3
    with pytest.raises(ValueError):
        field(9, modulus=(1, 1))  # wrong degree


def test_rejects_bad_q():
    for q in (4, 8, 16, 64):  # even
        with pytest.raises(ValueError):
            GF(q)
    with pytest.raises(ValueError):
        GF(3)  # too small
    with pytest.raises(ValueError):
        GF(12)  # not a prime power


def test_element_wrapper_errors():
    f7, f9 = field(7), field(9)
    with pytest.raises(FieldMismatchError):
        f7(3) + f9(3)
    with pytest.raises(ZeroDivisionError):
        f7.inv(0)
    with pytest.raises(ZeroDivisionError):
        f9(0).inverse()
    with pytest.raises(ValueError):
        f7.is_square(0)


def test_element_wrapper_operators():
    f = field(25)
    g = f.element_from_code(f.primitive_element())
    assert (g * g.inverse()) == f.one()
    assert g - g == f.zero()
    assert (g**24) == f.one()
    assert g ** (-1) == g.inverse()
    assert 1 / g == g.inverse()
    assert sorted([f.one(), g, f.zero()]) == [f.zero(), min(f.one(), g), max(f.one(), g)]


def test_serialization_roundtrip():
    f = field(49)
    for v in range(49):
        assert f.from_coeffs(f.coeffs(v)) == v
