from __future__ import annotations

import json
from fractions import Fraction

import pytest

from loophom.corpus import CP2, CP2_SHARP_CP2, S3xS4, S4, X3, Y2
from loophom.report import (
    GAMMA_CAVEAT,
    ReportConfig,
    build_report,
    decimal_str,
    hilbert_three_way,
    low_rank_ranks,
    moore_report,
    rational_ranks,
    smallest_positive_root,
    sphere_decomposition,
)


class TestDecimal:
    @pytest.mark.parametrize("x,text", [
        (Fraction(1, 3), "0.333333"), (Fraction(2, 3), "0.666667"),
        (Fraction(-5, 2), "-2.500000"), (Fraction(7), "7.000000"),
    ])
    def test_rendering(self, x, text):
        assert decimal_str(x) == text

    def test_places(self):
        assert decimal_str(Fraction(1, 20), 4) == "0.0500"


class TestRoot:
    def test_golden(self):
        lo, hi = smallest_positive_root([1, -3, 1])
        # root is (3 - sqrt 5)/2; check it squares correctly
        assert hi - lo <= Fraction(1, 10 ** 15)
        mid = (lo + hi) / 2
        assert abs(mid * mid - 3 * mid + 1) < Fraction(1, 10 ** 12)

    def test_no_root(self):
        assert smallest_positive_root([1, 1]) is None


class TestHilbert:
    def test_x3(self, x3):
        t = hilbert_three_way(x3, 5)
        assert t["dims"] == [1, 3, 8, 21, 55, 144]
        assert t["agreement"] and t["pbw_reconstruction"]
        assert t["provenance"][3] == "series+avoiding-words+oracle"

    def test_oracle_limit(self, y2):
        t = hilbert_three_way(y2, 10, oracle_limit=4)
        assert t["routes"]["oracle"][5] is None
        assert t["provenance"][5] == "series+avoiding-words"
        assert t["oracle_limit"] == 4


class TestDecomposition:
    def test_x3(self, x3):
        dec = sphere_decomposition(x3, 5)
        assert dec.multiplicities == {2: 3, 3: 2, 4: 5, 5: 10}
        assert rational_ranks(dec) == {2: 3, 3: 5, 4: 5, 5: 10}
        assert dec.caveat == GAMMA_CAVEAT

    def test_y2(self, y2):
        dec = sphere_decomposition(y2, 7)
        assert dec.multiplicities == {3: 2, 4: 2, 5: 1, 6: 3, 7: 3}
        assert dec.witnesses[5] == [(1, 2)]
        ranks = rational_ranks(dec)
        # pi_7 picks up the Whitehead squares of the two S^4 summands
        assert ranks[7] == 3 + 2
        assert ranks[3] == 2 and ranks[4] == 2

    def test_tiny(self, x3):
        assert sphere_decomposition(x3, 1).multiplicities == {}

    def test_json_keys(self, x3):
        data = sphere_decomposition(x3, 4).to_json()
        assert set(data) == {"max_sphere_dim", "multiplicities", "witnesses", "caveat"}


class TestMoore:
    def test_x3(self, x3):
        dec = sphere_decomposition(x3, 9)
        hil = hilbert_three_way(x3, 9)["dims"]
        rep = moore_report(dec, hil, x3)
        assert rep["populated"] and rep["gaps"] == []
        assert rep["window"] == [1, 8]
        assert rep["growth_reference"] == "2.618034"
        assert rep["tail_converged"]

    def test_y2_window_step(self, y2):
        dec = sphere_decomposition(y2, 9)
        hil = hilbert_three_way(y2, 9)["dims"]
        rep = moore_report(dec, hil, y2)
        assert rep["step"] == 1
        assert rep["window"][0] == 2
        assert rep["populated"]


class TestLowRankRanks:
    def test_sphere(self):
        assert low_rank_ranks("sphere", (4,), 8) == {2: 0, 3: 0, 4: 1, 5: 0, 6: 0, 7: 1, 8: 0}

    def test_james(self):
        ranks = low_rank_ranks("james", (2,), 6)
        assert ranks[2] == 1 and ranks[5] == 1 and sum(ranks.values()) == 2

    def test_connected_sum(self):
        ranks = low_rank_ranks("connected-sum-james", (2,), 6)
        assert ranks[2] == 2 and ranks[3] == 2


class TestBuildReport:
    def test_keys(self):
        doc = build_report(X3, ReportConfig(max_degree=6))
        assert set(doc) == {"input_echo", "validation", "presentation", "hilbert", "lie_dims",
                            "decomposition", "rational_ranks", "classification", "moore", "caveats"}
        assert doc["lie_dims"] == [3, 2, 5, 10, 24, 50]
        assert doc["decomposition"]["brackets"]["3"] == ["[u1,u3]", "[u2,u3]"]

    def test_low_rank(self):
        for desc, label in ((S4, "S^4"), (CP2, "J_2 S^2"), (S3xS4, "S^3 x S^4"),
                            (CP2_SHARP_CP2, "#^2 J_2(2)")):
            doc = build_report(desc, ReportConfig(max_degree=8))
            assert doc["classification"]["label"] == label
            assert doc["presentation"] is None
            assert doc["moore"]["applicable"] is False

    def test_deterministic(self):
        cfg = ReportConfig(max_degree=7)
        a = json.dumps(build_report(Y2, cfg), sort_keys=True)
        b = json.dumps(build_report(Y2, cfg), sort_keys=True)
        assert a == b

    def test_json_serializable(self):
        json.dumps(build_report(X3, ReportConfig(max_degree=5)))
