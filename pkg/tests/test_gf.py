"""Field-layer tests: axioms, table correctness against a slow oracle, parsing."""

from __future__ import annotations

import pytest

from mdslab.gf import (
    Field,
    NonPrimeError,
    ReducibleModulusError,
    UnsupportedSizeError,
    default_modulus,
    is_prime,
    parse_field,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
FERMAT_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37,
                 41, 43, 47, 49, 53, 59, 61, 64]


def slow_mul(f: Field, a: int, b: int) -> int:
    """Independent oracle: schoolbook polynomial product reduced mod modulus."""
    p, m = f.p, f.m
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    conv = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            conv[i + j] = (conv[i + j] + x * y) % p
    # long division by the modulus, highest power first
    for t in range(2 * m - 2, m - 1, -1):
        c = conv[t]
        if c:
            conv[t] = 0
            for i in range(m):
                conv[t - m + i] = (conv[t - m + i] - c * f.modulus[i]) % p
    return sum(conv[i] * p**i for i in range(m))


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_mul_table_matches_polynomial_oracle(q):
    f = Field.from_order(q)
    for a in f.elements():
        for b in f.elements():
            assert f.mul(a, b) == slow_mul(f, a, b)


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_add_table_matches_digitwise_oracle(q):
    f = Field.from_order(q)
    p, m = f.p, f.m
    for a in f.elements():
        for b in f.elements():
            expect = sum((((a // p**i) + (b // p**i)) % p) * p**i for i in range(m))
            assert f.add(a, b) == expect
            assert f.sub(f.add(a, b), b) == a


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    f = Field.from_order(q)
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a != 0:
            assert f.mul(a, f.inv(a)) == 1
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", FERMAT_ORDERS)
def test_unit_group_order_and_inverse_power(q):
    f = Field.from_order(q)
    for a in range(1, q):
        assert f.pow(a, q - 1) == 1
        assert f.inv(a) == f.pow(a, q - 2)


def test_enumeration_is_canonical():
    assert list(Field.from_order(4).elements()) == [0, 1, 2, 3]
    assert list(Field.from_order(7).elements()) == list(range(7))
    f = Field.from_order(9)
    assert len(set(f.elements())) == 9
    # index 2 is the class of x in any extension field under base-p digits
    assert Field.from_order(4).coeffs(2) == (0, 1)
    assert Field.from_order(8).coeffs(5) == (1, 0, 1)


def test_default_modulus_choices():
    assert Field.from_order(4).modulus == (1, 1, 1)    # x^2+x+1
    assert Field.from_order(8).modulus == (1, 1, 0, 1)  # x^3+x+1
    assert Field.from_order(9).modulus == (1, 0, 1)     # x^2+1
    assert Field.from_order(7).modulus == (0, 1)
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)     # x^4+x+1 is the first hit


def test_gf4_identities():
    f = Field.from_order(4)
    w = 2  # class of x
    assert f.add(w, w) == 0
    assert f.mul(w, w) == 3          # w^2 = w+1, forced by the modulus
    assert f.inv(w) == 3             # w*(w+1) = 1
    assert f.add(1, w) == 3


def test_gf8_power_chain():
    f = Field.from_order(8)
    g = 2  # class of x
    powers = [f.pow(g, e) for e in range(8)]
    # 1, g, g^2, then g^3 = g+1 and onward per the modulus
    assert powers == [1, 2, 4, 3, 6, 7, 5, 1]
    assert f.mul(g, 4) == 3
    assert f.inv(g) == 5


def test_primitive_elements():
    assert Field.from_order(4).primitive_element() == 2
    assert Field.from_order(8).primitive_element() == 2
    assert Field.from_order(7).primitive_element() == 3
    assert Field.from_order(9).primitive_element() == 4  # x+1; x itself has order 4
    f = Field.from_order(13)
    g = f.primitive_element()
    assert f.multiplicative_order(g) == 12
    for a in range(1, g):
        assert f.multiplicative_order(a) < 12


def test_zero_power_conventions():
    f = Field.from_order(7)
    assert f.pow(0, 0) == 1
    assert f.pow(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        f.pow(0, -1)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    assert f.pow(3, -1) == f.inv(3)


def test_construction_errors():
    with pytest.raises(NonPrimeError):
        Field(6, 1)
    with pytest.raises(NonPrimeError):
        Field.from_order(12)
    with pytest.raises(UnsupportedSizeError):
        Field.from_order(2048)
    with pytest.raises(ReducibleModulusError):
        Field(2, 2, [1, 0, 1])  # x^2+1 = (x+1)^2 over GF(2)
    with pytest.raises(ValueError):
        Field(2, 2, [1, 1])  # not degree 2


def test_parse_and_format_round_trip():
    f = parse_field("gf(8)")
    assert f is Field.from_order(8)
    assert parse_field("gf(2^3):1,1,0,1") == f
    assert parse_field(f.spec_string()) == f
    assert parse_field("gf(49)").q == 49
    assert parse_field("GF(7)").q == 7
    with pytest.raises(ValueError):
        parse_field("gf(seven)")

    assert f.parse_element("g^4") == 6
    assert f.parse_element("g") == 2
    assert f.parse_element("g^0") == 1
    assert f.parse_element("5") == 5
    assert f.parse_element([1, 0, 1]) == 5
    assert f.parse_element("g^-1") == f.inv(2)
    for a in f.elements():
        assert f.parse_element(f.format_element(a)) == a
        assert f.parse_element(f.coeffs(a)) == a
    assert f.format_element(0) == "0"
    assert f.format_element(1) == "1"
    assert f.format_element(2) == "g"
    assert f.format_element(3) == "g^3"
    assert f.format_element(3, "digits") == "(1,1,0)"

    f7 = parse_field("gf(7)")
    assert f7.format_element(5) == "5"
    assert f7.parse_element(-1) == 6
    with pytest.raises(ValueError):
        f.parse_element(9)
    with pytest.raises(ValueError):
        f.parse_element([2, 0, 0])


def test_field_identity_semantics():
    a = Field.from_order(8)
    b = Field(2, 3)
    assert a == b and hash(a) == hash(b)
    assert a != Field(2, 3, [1, 0, 1, 1])  # the other cubic
    assert a != Field.from_order(9)


def test_cap_boundary_field_smoke():
    f = Field.from_order(1024)
    assert (f.p, f.m) == (2, 10)
    for a in (1, 2, 513, 1023):
        assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, f.q - 1) == 1
    assert f.mul(3, 5) == slow_mul(f, 3, 5)


def test_is_prime():
    assert [n for n in range(2, 32) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
