# Copyright (c) Saturator contributors.
# SPDX-License-Identifier: Apache-2.0
import pytest

import saturator


def test_qe_eliminates_the_quantifier():
    assert saturator.qe("E v. (P2(v) & a < v & v < b)") == "P2(a + 1) & a + 1 < b | P2(a) & a + 2 < b"


def test_decide():
    assert saturator.decide("E v. (P3(v) & 0 < v & v < 5)")
    assert not saturator.decide("E x. (0 < x & x < 1)")


def test_tree_check():
    report = saturator.tree_check("pr", 6)
    assert report["passed"]
    assert report["nodes"] == 126


def test_cli_roundtrip():
    code, result = saturator.cli("decide", "--sig", "og", "A x. E y. x < y")
    assert code == 0
    assert result == {"v": 1, "value": True}


def test_cli_errors():
    code, result = saturator.cli("qe", "E v. (a <")
    assert code == 1
    assert result["error"]["kind"] == "parse"
    code, result = saturator.cli("--budget-search", "2", "rcf-decide", "--real", "rational:1/2", "--mode", "direct", "v < 1")
    assert code == 0


def test_library_errors_raise():
    with pytest.raises(saturator.Error):
        saturator.decide("E v. (")
