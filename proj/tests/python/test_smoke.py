import pytest

import loewy


def test_depth_of_one_at_omega():
    a = loewy.Algebra("q", "w", 1)
    assert a.one().depth() == "w"
    assert a.zero().depth() is None


def test_quasi_inverse_is_reflexive():
    a = loewy.Algebra("f3", "w+1", 2)
    x = a.eval("<e[0]*2 + e[5], e[3] + 1>")
    s = x.quasi_inverse()
    assert x * s * x == x
    assert s * x * s == s


def test_arithmetic_matches_expression():
    a = loewy.Algebra("f2(x)", "2")
    assert a.eval("e[0]") * a.eval("e[1] + x") == a.eval("e[0]*(e[1] + x)")
    assert str(a.eval("e[0] - e[0]")) == str(a.zero())


def test_basis_coords_and_augmentation():
    a = loewy.Algebra("q", "2")
    x = a.eval("e[0]*3 + 1")
    assert x.augmentation() == "4"
    assert x.basis_coords() == {"U": "1", "C0.U": "3"}


def test_dimension_sequence():
    d = loewy.dimension_sequence(loewy.Algebra("q", "w*2+1", 3))
    assert d["loewy_length"] == "w*2+2"
    assert d["top_dim"] == 3


def test_cli_examples():
    assert loewy.search_mult_basis(2, 2) == []
    assert loewy.baer_socle_inclusion("aleph:0", "aleph:0").startswith("Fails(")


def test_errors_raise():
    with pytest.raises(loewy.LoewyError):
        loewy.Algebra("q", "1").eval("e[0] +")
    with pytest.raises(loewy.LoewyError):
        loewy.Algebra("q", "1", 2).eval("e[0]")
    with pytest.raises(loewy.LoewyError):
        loewy.Algebra("q", "1").eval("1") + loewy.Algebra("q", "2").eval("1")


def test_selftest_subset():
    results = loewy.selftest([7, 9])
    assert len(results) == 2
    assert all(ok for _, ok in results)
