from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homalg.exact import (
    LinearMap,
    ShapeError,
    StructureTensor,
    Vector,
    apply_bilinear,
    compose,
    map_power,
    scalar_arith,
)

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def test_scalar_arith_examples():
    assert scalar_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert scalar_arith(Fraction(2, 4), Fraction(0, 1), "add") == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        scalar_arith(Fraction(1), Fraction(0), "div")


def test_scalar_arith_lowest_terms():
    r = scalar_arith(Fraction(2, 4), Fraction(1, 4), "add")
    assert (r.numerator, r.denominator) == (3, 4)


@given(rationals, rationals)
def test_scalar_round_trip(a, b):
    if b != 0:
        assert scalar_arith(scalar_arith(a, b, "mul"), b, "div") == a


def test_apply_bilinear_unit_tensor():
    t = StructureTensor.square_from_rule(2, {(0, 0): [1, 0]})
    e1 = Vector.basis(2, 0)
    assert apply_bilinear(t, e1, e1) == e1


def test_apply_bilinear_zero_vector():
    t = StructureTensor.square_from_rule(2, {(0, 0): [1, 0], (1, 1): [0, 1]})
    assert apply_bilinear(t, Vector.zero(2), Vector.basis(2, 1)).is_zero()


def test_apply_bilinear_truncated_polynomials():
    # K[x]/(x^2): e1 = 1, e2 = x, so x.x = 0
    t = StructureTensor.square_from_rule(2, {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]})
    x = Vector.basis(2, 1)
    assert apply_bilinear(t, x, x).is_zero()


def test_apply_bilinear_shape_error():
    t = StructureTensor.zero(2)
    with pytest.raises(ShapeError):
        t.apply(Vector.zero(3), Vector.zero(2))


def test_compose_identity_unit():
    f = LinearMap([[1, 2], [3, 4]])
    assert compose(LinearMap.identity(2), f) == f
    assert compose(f, LinearMap.identity(2)) == f


def test_map_power_examples():
    d = LinearMap.diagonal([2, 3])
    assert map_power(d, 2) == LinearMap.diagonal([4, 9])
    assert compose(d, d) == LinearMap.diagonal([4, 9])
    assert map_power(d, 0) == LinearMap.identity(2)


@given(st.integers(0, 4), st.integers(0, 4))
def test_map_power_additive(m, n):
    f = LinearMap([[1, 1], [0, 1]])
    assert map_power(f, m + n) == compose(map_power(f, m), map_power(f, n))


def vectors(dim):
    return st.lists(rationals, min_size=dim, max_size=dim).map(Vector)


@given(vectors(3), vectors(3), vectors(3), rationals)
def test_bilinearity_first_slot(x, z, y, s):
    t = StructureTensor.square_from_rule(
        3, {(0, 0): [1, 0, 0], (0, 1): [0, 2, 0], (2, 1): [0, 0, Fraction(1, 2)]}
    )
    left = t.apply(x + z.scale(s), y)
    right = t.apply(x, y) + t.apply(z, y).scale(s)
    assert left == right


@given(vectors(3), vectors(3), vectors(3), rationals)
def test_bilinearity_second_slot(x, y, w, s):
    t = StructureTensor.square_from_rule(
        3, {(1, 1): [1, 1, 0], (2, 0): [0, 0, 3]}
    )
    assert t.apply(x, y + w.scale(s)) == t.apply(x, y) + t.apply(x, w).scale(s)


def test_compose_associative():
    a = LinearMap([[1, 2], [0, 1]])
    b = LinearMap([[0, 1], [1, 0]])
    c = LinearMap([[1, 0], [5, 2]])
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_vector_equality_cross_denominator():
    assert Vector([Fraction(1, 2), 0]) == Vector([Fraction(2, 4), 0])
    assert Vector([Fraction(1, 2)]) != Vector([Fraction(1, 3)])


def test_tensor_opposite_and_push():
    t = StructureTensor.square_from_rule(2, {(0, 1): [0, 1]})
    assert t.opposite().coeff(1, 0, 1) == 1
    phi = LinearMap.diagonal([2, 3])
    assert t.push(phi).coeff(0, 1, 1) == 3


def test_linear_map_tensor_row_major():
    a = LinearMap.diagonal([1, 2])
    b = LinearMap.diagonal([3, 4])
    k = a.tensor(b)
    assert k == LinearMap.diagonal([3, 4, 6, 8])
