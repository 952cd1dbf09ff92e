import pytest

from fracsemi import poly
from oracles import poly_product_set


def test_parse_and_format():
    assert poly.parse("x^3+x+1") == 0b1011
    assert poly.parse("x^7 + x + 1") == 0b10000011
    assert poly.parse("1101") == 0b1011
    assert poly.to_str(0b1011) == "x^3+x+1"
    assert poly.to_str(0b11) == "x+1"
    with pytest.raises(ValueError):
        poly.parse("x^3+y")


def test_irreducible_agrees_with_product_table():
    products = poly_product_set(8)
    for p in range(2, 1 << 9):
        assert poly.is_irreducible(p) == (p not in products), poly.to_str(p)


def test_known_irreducibles():
    assert poly.is_irreducible(0b1011)
    assert poly.is_irreducible(0b10000011)
    assert not poly.is_irreducible(0b101)  # (x+1)^2


def test_companion_columns():
    c = poly.companion(0b1011)
    assert c.row_strings() == ["001", "101", "010"]


def test_divmod():
    q, r = poly.divmod_(0b10000011, 0b1011)
    assert poly.mul(q, 0b1011) ^ r == 0b10000011
    assert poly.degree(r) < 3
