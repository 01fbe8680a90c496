"""Smoke test for the pseudodiff_py extension module.

Build and run from the workspace root:

    cargo build --release -p pseudodiff-py
    cp target/release/libpseudodiff_py.so python/pseudodiff_py.so
    python3 -m pytest python/smoke_test.py
"""

import pytest

import pseudodiff_py as pd


def test_multiply():
    assert pd.multiply("(1)*D^1", "(x)*D^0") == "(x + O(x^12)) * D^1 + (1 + O(x^11)) * D^0"


def test_invert_of_d():
    assert pd.invert("(1)*D^1", prec_x=4).startswith("(1 + O(x^4)) * D^-1")


def test_fractional_relation():
    assert pd.bc_relation("(1)*D^1", "frac((1)*D^2+(1)*D^0;(1)*D^1)") == "z*w - z^2 - 1"


def test_elliptic_relations():
    assert pd.elliptic_relation("0", "0", "1", "2") == "w^2 - 4*z^3"
    assert pd.elliptic_relation("-6", "6", "1", "2") == "w^2 - 4*z^3 - 6*z + 6"


def test_errors():
    with pytest.raises(ValueError):
        pd.elliptic_relation("0", "0", "1", "3")
    with pytest.raises(pd.UnknownAtPrecision):
        pd.bc_relation("(1)*D^2", "(1)*D^3", nmax=1)


def test_selftest_criterion():
    [(cid, name, passed, detail)] = pd.selftest(4)
    assert cid == 4 and passed, detail
