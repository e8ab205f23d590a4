"""DAG class enumeration and central triangulation counting."""
import math
import time
from fractions import Fraction

import pytest

from oracles import labeled_dag_count, same_up_to_relabeling
from polytropes.dag import WeightedDag, automorphisms, canonical_form
from polytropes.enumeration import (
    BudgetExceededError,
    _families_equivalent,
    _witness_family,
    configuration_symmetries,
    count_generic_types,
    enumerate_central_subdivisions,
    enumerate_central_triangulations,
    enumerate_dags,
    enumerate_transitive_dags,
    table_report,
    triangulation_orbits,
    triangulation_types,
)
from polytropes.subdivision import (
    fundamental_polytope,
    is_central,
    is_regular,
    is_triangulation,
    regular_subdivision,
    subdivision_equal,
)

F = Fraction


def unit(n, edges) -> WeightedDag:
    return WeightedDag.from_edges(n, [(j, i, 1) for j, i in edges])


K3 = unit(3, [(1, 2), (1, 3), (2, 3)])
K4 = unit(4, [(j, i) for j in range(1, 5) for i in range(j + 1, 5)])


class TestEnumerateDags:
    @pytest.mark.parametrize(
        "n,count", [(1, 1), (2, 2), (3, 6), (4, 31), (5, 302)]
    )
    def test_class_counts(self, n, count):
        assert len(enumerate_dags(n)) == count

    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
    def test_transitive_counts(self, n, count):
        assert len(enumerate_transitive_dags(n)) == count

    def test_representatives_are_distinct(self):
        reps = enumerate_dags(4)
        assert len({canonical_form(g) for g in reps}) == len(reps)

    def test_no_pair_is_isomorphic(self):
        reps = enumerate_dags(3)
        for a in reps:
            for b in reps:
                if a is not b:
                    assert not same_up_to_relabeling(3, a.edges, b.edges)

    def test_orbit_counting_reaches_every_labeled_dag(self):
        """Burnside bookkeeping: class sizes n!/|Aut| sum to the labeled count."""
        for n in (3, 4):
            reps = enumerate_dags(n)
            total = sum(
                math.factorial(n) // len(automorphisms(g)) for g in reps
            )
            assert total == labeled_dag_count(n)

    def test_range_validation(self):
        with pytest.raises(ValueError, match="1 <= n <= 6"):
            enumerate_dags(0)
        with pytest.raises(ValueError, match="1 <= n <= 6"):
            enumerate_dags(7)

    def test_deadline_in_the_past(self):
        with pytest.raises(BudgetExceededError):
            enumerate_dags(4, deadline=time.monotonic() - 1)


class TestCentralTriangulations:
    def test_triangle_graph_has_one(self):
        tri = enumerate_central_triangulations(K3)
        assert [t.cells for t in tri] == [((0, 1, 2), (0, 2, 3))]
        sub = tri[0]
        assert is_central(sub) and is_triangulation(sub)
        assert sub.heights is not None and sub.heights[0] == 0
        again = regular_subdivision(sub.point_list, sub.heights)
        assert again.cells == sub.cells

    def test_single_node(self):
        tri = enumerate_central_triangulations(unit(1, []))
        assert [t.cells for t in tri] == [((0,),)]

    def test_results_are_central_regular_triangulations(self):
        for g in enumerate_dags(4):
            for sub in enumerate_central_triangulations(g):
                assert is_central(sub)
                assert is_triangulation(sub)
                witness = is_regular(sub.point_list, sub.cells, validate=False)
                assert witness is not None

    def test_full_graph_counts(self):
        tri = enumerate_central_triangulations(K4)
        assert len(tri) == 2
        assert len(triangulation_orbits(K4, tri)) == 2

    def test_orbit_folding(self):
        g = unit(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
        tri = enumerate_central_triangulations(g)
        orbits = triangulation_orbits(g, tri)
        assert len(tri) == 2
        assert len(orbits) == 1
        assert sorted(len(o) for o in orbits) == [2]

    def test_orbits_partition(self):
        for g in enumerate_dags(4):
            tri = enumerate_central_triangulations(g)
            orbits = triangulation_orbits(g, tri)
            assert sum(len(o) for o in orbits) == len(tri)


class TestTriangulationTypes:
    def test_full_k4_orbits_stay_distinct(self):
        # the two K4 triangulations are combinatorially different polytropes
        tri = enumerate_central_triangulations(K4)
        classes = triangulation_types(K4, tri)
        assert len(classes) == 2

    def test_types_partition_and_coarsen_orbits(self):
        for g in enumerate_dags(4):
            tri = enumerate_central_triangulations(g)
            orbits = triangulation_orbits(g, tri)
            classes = triangulation_types(g, tri)
            assert sum(len(c) for c in classes) == len(tri)
            assert 0 <= len(classes) <= len(orbits)

    def test_family_invariant_under_relabeling(self):
        # feeding a root-permuted copy of the same triangulation through the
        # family test must report equivalence
        tri = enumerate_central_triangulations(K4)
        f0 = _witness_family(K4, tri[0])
        f1 = _witness_family(K4, tri[1])
        assert _families_equivalent(f0, f0, 4)
        assert not _families_equivalent(f0, f1, 4)

    def test_transpose_blindness(self):
        # a chain and its reversal give transposed star matrices; their
        # bounded families must be identified
        g = unit(3, [(1, 2), (2, 3)])
        tri = enumerate_central_triangulations(g)
        fam = _witness_family(g, tri[0])
        flipped = frozenset(
            frozenset((i, j) for j, i in cov) for cov in fam
        )
        assert _families_equivalent(fam, flipped, 3)


class TestCentralSubdivisions:
    def test_triangle_graph_has_two(self):
        subs = enumerate_central_subdivisions(K3)
        assert [s.cells for s in subs] == [
            ((0, 1, 2), (0, 2, 3)),
            ((0, 1, 2, 3),),
        ]
        assert all(is_central(s) for s in subs)

    def test_contains_the_weight_induced_one_when_central(self):
        g = WeightedDag.from_edges(3, [(1, 2, 1), (1, 3, 2), (2, 3, 1)])
        induced = regular_subdivision(
            fundamental_polytope(g), (F(0), F(1), F(2), F(1))
        )
        subs = enumerate_central_subdivisions(g)
        assert any(subdivision_equal(s, induced) for s in subs)

    def test_size_limit(self):
        with pytest.raises(ValueError, match="n <= 3"):
            enumerate_central_subdivisions(K4)


class TestSymmetries:
    def test_triangle_graph(self):
        perms = configuration_symmetries(K3, fundamental_polytope(K3))
        assert len(perms) == 2
        identity = list(range(4))
        assert identity in perms
        other = next(p for p in perms if p != identity)
        # reversal swaps the two chain roots and fixes 0 and the long root
        assert other == [0, 3, 2, 1]

    def test_full_k4(self):
        perms = configuration_symmetries(K4, fundamental_polytope(K4))
        assert len(perms) == 2
        assert all(p[0] == 0 for p in perms)


class TestTable:
    @pytest.mark.parametrize(
        "n,expected", [(1, (1, 1, 1)), (2, (2, 2, 2)), (3, (6, 6, 5))]
    )
    def test_small_rows(self, n, expected):
        assert count_generic_types(n) == expected

    def test_fourth_row(self):
        report = table_report(4)
        assert (
            report["triangulations"],
            report["dags"],
            report["transitive"],
        ) == (32, 31, 16)
        assert report["triangulations_raw"] == 37
        assert len(report["classes"]) == 31

    def test_report_shape(self):
        report = table_report(2)
        assert set(report) == {
            "n",
            "classes",
            "triangulations",
            "triangulations_raw",
            "dags",
            "transitive",
        }
        for c in report["classes"]:
            assert c.raw >= c.orbits >= c.types >= 1

    def test_workers_agree(self):
        solo = table_report(3, workers=1)
        multi = table_report(3, workers=2)
        assert solo == multi

    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceededError):
            table_report(4, budget=0.0)
