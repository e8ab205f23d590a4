"""Codec roundtrips and malformed-input rejection."""
from fractions import Fraction

import pytest
from hypothesis import given, settings

from polytropes.arrangement import (
    Covector,
    CovectorPoset,
    PointConfig,
    covector_decomposition,
)
from polytropes.dag import WeightedDag, weighted_transitive_reduction
from polytropes.jsonio import (
    batch_from_csv,
    batch_to_csv,
    batch_to_json,
    covector_to_json,
    dag_from_json,
    dag_to_dot,
    dag_to_json,
    facets_to_json,
    matrix_from_json,
    matrix_to_json,
    poset_to_json,
    report_to_json,
    subdivision_to_json,
)
from polytropes.mlbn import (
    NoiseSpec,
    SampleBatch,
    estimate_kleene,
    identifiability_report,
    sample,
)
from polytropes.polytrope import facet_description
from polytropes.semiring import TropMatrix
from polytropes.subdivision import fundamental_polytope, regular_subdivision, weight_heights
from strategies import nonneg_matrices, weighted_dags

F = Fraction


def kappa3(a, b, c) -> WeightedDag:
    return WeightedDag.from_edges(3, [(1, 2, a), (2, 3, b), (1, 3, c)])


class TestMatrixCodec:
    def test_golden(self):
        m = TropMatrix.from_rows([[0, F(1, 2)], ["inf", -3]])
        assert matrix_to_json(m) == {
            "n": 2,
            "entries": [["0", "1/2"], ["inf", "-3"]],
        }

    @given(nonneg_matrices(max_n=4))
    @settings(max_examples=80, deadline=None)
    def test_roundtrip(self, m):
        assert matrix_from_json(matrix_to_json(m)) == m

    def test_integer_entries_accepted(self):
        m = matrix_from_json({"n": 1, "entries": [[7]]})
        assert m[0, 0] == 7

    @pytest.mark.parametrize(
        "obj,msg",
        [
            ([], "matrix must be"),
            ({"entries": [["0"]]}, "matrix n"),
            ({"n": 2, "entries": "xx"}, "nonempty list"),
            ({"n": 2, "entries": []}, "nonempty list"),
            ({"n": 2, "entries": [["0"]]}, "row 0"),
            ({"n": 1, "entries": [[None]]}, "entry \\(0,0\\)"),
            ({"n": 1, "entries": [["3/0"]]}, "entry \\(0,0\\)"),
            ({"n": 1, "entries": [["zz"]]}, "entry \\(0,0\\)"),
        ],
    )
    def test_rejects(self, obj, msg):
        with pytest.raises(ValueError, match=msg):
            matrix_from_json(obj)


class TestDagCodec:
    def test_golden(self):
        g = kappa3(1, F(1, 2), 3)
        assert dag_to_json(g) == {
            "n": 3,
            "edges": [
                {"from": 1, "to": 2, "w": "1"},
                {"from": 1, "to": 3, "w": "3"},
                {"from": 2, "to": 3, "w": "1/2"},
            ],
        }

    @given(weighted_dags(max_n=5))
    @settings(max_examples=80, deadline=None)
    def test_roundtrip(self, g):
        assert dag_from_json(dag_to_json(g)) == g

    @pytest.mark.parametrize(
        "obj,msg",
        [
            ({"n": 2}, "edges must be a list"),
            ({"n": 2, "edges": [{}]}, "'from'"),
            ({"n": 2, "edges": [{"from": 1, "to": 2}]}, "weight"),
            (
                {"n": 2, "edges": [{"from": 1, "to": 2, "w": "inf"}]},
                "must be finite",
            ),
            (
                {"n": 2, "edges": [{"from": 2, "to": 1, "w": "1"}, {"from": 1, "to": 2, "w": "1"}]},
                "cycle",
            ),
        ],
    )
    def test_rejects(self, obj, msg):
        with pytest.raises(ValueError, match=msg):
            dag_from_json(obj)

    def test_dot_golden(self):
        assert dag_to_dot(kappa3(1, 1, 2)) == (
            "digraph {\n"
            "  1;\n"
            "  2;\n"
            "  3;\n"
            '  1 -> 2 [label="1"];\n'
            '  1 -> 3 [label="2"];\n'
            '  2 -> 3 [label="1"];\n'
            "}\n"
        )

    def test_dot_declares_isolated_nodes(self):
        assert "  2;" in dag_to_dot(WeightedDag.from_edges(2, []))


class TestCovectorCodec:
    def test_covector(self):
        cov = Covector.from_edges(2, 3, [(1, 1), (2, 3)])
        assert covector_to_json(cov) == {
            "d": 3,
            "n": 2,
            "edges": [[1, 1], [2, 3]],
        }

    def test_empty_poset(self):
        assert poset_to_json(CovectorPoset.build([])) == {
            "covectors": [],
            "hasse": [],
        }

    def test_poset_indices_follow_order(self):
        star = TropMatrix.from_rows([[0, "inf", "inf"], [1, 0, "inf"], [2, 1, 0]])
        poset = covector_decomposition(PointConfig(star))
        out = poset_to_json(poset)
        assert (out["d"], out["n"]) == (3, 3)
        assert len(out["covectors"]) == len(poset)
        for lo, hi in out["hasse"]:
            a = set(map(tuple, out["covectors"][lo]))
            b = set(map(tuple, out["covectors"][hi]))
            assert a < b


def test_facets_golden():
    fd = facet_description(kappa3(1, 1, 3))
    assert facets_to_json(fd) == {
        "edges": [
            {"from": 1, "to": 2, "bound": "1"},
            {"from": 2, "to": 3, "bound": "1"},
        ]
    }


def test_subdivision_golden():
    g = kappa3(1, 1, 1)
    sub = regular_subdivision(fundamental_polytope(g), weight_heights(g))
    out = subdivision_to_json(sub)
    assert out["points"][0] == ["0", "0", "0"]
    assert out["points"][1] == ["-1", "1", "0"]
    assert out["cells"] == [[0, 1, 2], [0, 2, 3]]
    assert out["heights"] == ["0", "1", "1", "1"]


class TestBatchCodec:
    def test_json_shape(self):
        batch = SampleBatch(2, ((F(1, 2), F(0)), (F(-1), F(3))))
        assert batch_to_json(batch) == {
            "n": 2,
            "count": 2,
            "rows": [["1/2", "0"], ["-1", "3"]],
        }

    def test_csv_golden(self):
        batch = SampleBatch(2, ((F(1, 2), F(0)),))
        assert batch_to_csv(batch) == "x1,x2\n1/2,0\n"

    def test_csv_roundtrip(self):
        g = kappa3(1, 1, 3)
        batch = sample(g, NoiseSpec(), 25, seed=4)
        assert batch_from_csv(batch_to_csv(batch)) == batch

    def test_csv_header_optional(self):
        assert batch_from_csv("1,2\n3,4\n") == SampleBatch(
            2, ((F(1), F(2)), (F(3), F(4)))
        )

    @pytest.mark.parametrize(
        "text,msg",
        [
            ("", "empty"),
            ("x1,x2\n", "no observations"),
            ("x1,x2\n1,zz\n", "row 0"),
            ("x1,x2\n1,2\n3\n", "length"),
        ],
    )
    def test_rejects(self, text, msg):
        with pytest.raises(ValueError, match=msg):
            batch_from_csv(text)


def test_report_golden():
    g = kappa3(1, 1, 3)
    est = estimate_kleene(sample(g, NoiseSpec("constant", (0.0,)), 1, seed=0))
    out = report_to_json(identifiability_report(g, est))
    assert out["edges"][1] == {
        "from": 1,
        "to": 3,
        "w": "3",
        "star_w": "2",
        "estimate": "0",
        "identifiable": False,
    }
    assert [e["identifiable"] for e in out["edges"]] == [True, False, True]


def test_reduction_roundtrips_through_json():
    g = kappa3(1, 1, 3)
    flat = weighted_transitive_reduction(g)
    assert dag_from_json(dag_to_json(flat)) == flat
