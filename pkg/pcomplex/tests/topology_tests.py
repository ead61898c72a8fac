import unittest

from pcomplex.complex import SimplicialComplex, order_complex
from pcomplex.exceptions import InvalidInputError
from pcomplex.posets import AbstractPoset, poset_join
from pcomplex.topology import (
    PRESENTED,
    TRIVIAL,
    GroupPresentation,
    abelianization,
    canonical_relator,
    certify,
    components,
    cyclic_reduce,
    free_rank_of,
    free_reduce,
    fundamental_group,
    homology,
    invert,
    join_free_rank,
    pi1_presentation,
    split_free_factor,
    tietze_simplify,
    wreath_free_rank,
)

CIRCLE = SimplicialComplex(3, [(0, 1), (1, 2), (0, 2)])
DISK = SimplicialComplex(3, [(0, 1, 2)])
TWO_CIRCLES = SimplicialComplex(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
# six-vertex real projective plane
PROJECTIVE_PLANE = SimplicialComplex(
    6,
    [
        (0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
        (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5),
    ],
)
# two triangles glued along an edge plus a pendant edge
MIXED = SimplicialComplex(5, [(0, 1, 2), (1, 2, 3), (3, 4)])


class TestWords(unittest.TestCase):
    def test_reductions(self):
        self.assertEqual(free_reduce((1, -1, 2)), (2,))
        self.assertEqual(free_reduce((1, 2, -2, -1)), ())
        self.assertEqual(cyclic_reduce((1, 2, -1)), (2,))
        self.assertEqual(cyclic_reduce((-3, 1, 2, 3)), (1, 2))
        self.assertEqual(invert((1, -2)), (2, -1))

    def test_canonical_relator(self):
        self.assertEqual(canonical_relator((2, 3, 1)), canonical_relator((1, 2, 3)))
        self.assertEqual(canonical_relator((3, 1, 2)), canonical_relator(invert((1, 2, 3))))
        self.assertNotEqual(canonical_relator((1, 2, 3)), canonical_relator((1, 3, 2)))
        self.assertEqual(canonical_relator(()), ())

    def test_normalized_drops_duplicates(self):
        P = GroupPresentation(2, [(1, 2), (2, 1), (-1, 1), (-2, -1)])
        self.assertEqual(P.normalized().relators, [(1, 2)])

    def test_bad_generator_index(self):
        with self.assertRaises(InvalidInputError):
            GroupPresentation(1, [(1, 2)])
        with self.assertRaises(InvalidInputError):
            GroupPresentation(1, [(0,)])


class TestPresentations(unittest.TestCase):
    def test_abelianization(self):
        self.assertEqual(abelianization(GroupPresentation(1, [(1, 1)])), (0, [2]))
        self.assertEqual(abelianization(GroupPresentation(2, [(1, 2, -1, -2)])), (2, []))
        self.assertEqual(abelianization(GroupPresentation(2, [])), (2, []))
        six_four = GroupPresentation(2, [(1,) * 6, (2,) * 4])
        self.assertEqual(abelianization(six_four), (0, [2, 12]))

    def test_tietze_eliminates(self):
        simplified = tietze_simplify(GroupPresentation(2, [(1, 2)]))
        self.assertEqual((simplified.generator_count, simplified.relators), (1, []))
        self.assertEqual(certify(simplified), "free(1)")
        self.assertEqual(certify(tietze_simplify(GroupPresentation(1, [(1,)]))), TRIVIAL)

    def test_tietze_keeps_commutator(self):
        P = GroupPresentation(2, [(1, 2, -1, -2)])
        self.assertEqual(tietze_simplify(P), P)
        self.assertEqual(certify(P), PRESENTED)

    def test_tietze_preserves_abelianization(self):
        cases = [
            GroupPresentation(3, [(1, 2), (3, 3)]),
            GroupPresentation(3, [(1, 2, -3), (2, 2, 3, 3), (1, 1)]),
            GroupPresentation(4, [(1, 2, 3), (2, 3, 4, 4), (4, 1, -2)]),
            pi1_presentation(PROJECTIVE_PLANE, 0),
        ]
        for P in cases:
            self.assertEqual(abelianization(tietze_simplify(P)), abelianization(P))

    def test_relator_length_cap_blocks_elimination(self):
        P = GroupPresentation(3, [(1, 2, 3)])
        self.assertEqual(tietze_simplify(P, max_length=2).generator_count, 3)
        self.assertEqual(tietze_simplify(P).generator_count, 2)

    def test_split_free_factor(self):
        P = tietze_simplify(GroupPresentation(3, [(1, 2), (3, 3)]))
        free, residual = split_free_factor(P)
        self.assertEqual(free, 1)
        self.assertEqual(residual.generator_count, 1)
        self.assertEqual(residual.relators, [(1, 1)])
        self.assertEqual(certify(P), PRESENTED)
        self.assertEqual(abelianization(P), (1, [2]))

    def test_free_rank_of(self):
        self.assertEqual(free_rank_of(TRIVIAL), 0)
        self.assertEqual(free_rank_of("free(16)"), 16)
        self.assertIsNone(free_rank_of(PRESENTED))


class TestFundamentalGroup(unittest.TestCase):
    def test_components(self):
        component_map = components(TWO_CIRCLES)
        self.assertEqual(component_map.count, 2)
        self.assertEqual(component_map.members, [[0, 1, 2], [3, 4, 5]])
        self.assertEqual(component_map.labels, [0, 0, 0, 1, 1, 1])

    def test_simplices_are_bucketed_by_component(self):
        K = SimplicialComplex(6, [(0, 1, 2), (3, 4), (4, 5), (3, 5)])
        component_map = components(K)
        self.assertEqual(component_map.edges, [[(0, 1), (0, 2), (1, 2)], [(3, 4), (3, 5), (4, 5)]])
        self.assertEqual(component_map.triangles, [[(0, 1, 2)], []])
        disk = pi1_presentation(K, 0, component_map)
        circle = pi1_presentation(K, 1, component_map)
        self.assertEqual((disk.generator_count, disk.relators), (1, [(1,)]))
        self.assertEqual((circle.generator_count, circle.relators), (1, []))
        self.assertEqual(fundamental_group(K).statuses, [TRIVIAL, "free(1)"])

    def test_circle_and_disk(self):
        self.assertEqual(fundamental_group(CIRCLE).statuses, ["free(1)"])
        self.assertEqual(fundamental_group(DISK).statuses, [TRIVIAL])
        raw = pi1_presentation(DISK, 0)
        self.assertEqual((raw.generator_count, raw.relators), (1, [(1,)]))

    def test_components_agree(self):
        report = fundamental_group(TWO_CIRCLES)
        self.assertEqual(report.component_count, 2)
        self.assertEqual(report.statuses, ["free(1)", "free(1)"])
        self.assertTrue(report.abelianizations_agree)
        self.assertEqual(report.export()["components"], 2)

    def test_projective_plane(self):
        (component,) = fundamental_group(PROJECTIVE_PLANE).per_component
        self.assertEqual(component.status, PRESENTED)
        self.assertEqual((component.abelianization_rank, component.torsion), (0, [2]))

    def test_euler_bookkeeping(self):
        for K in (CIRCLE, DISK, PROJECTIVE_PLANE, MIXED):
            raw = pi1_presentation(K, 0)
            self.assertEqual(raw.generator_count - raw.relator_count, 1 - K.euler_characteristic())

    def test_missing_component(self):
        with self.assertRaises(InvalidInputError):
            pi1_presentation(CIRCLE, 1)

    def test_join_rank_law(self):
        for a in range(1, 4):
            for b in range(1, 5):
                K = order_complex(poset_join(AbstractPoset.antichain(a), AbstractPoset.antichain(b)))
                expected = join_free_rank(a, b)
                status = fundamental_group(K).statuses[0]
                self.assertEqual(free_rank_of(status), expected, (a, b))

    def test_threads_do_not_change_results(self):
        self.assertEqual(
            fundamental_group(TWO_CIRCLES, threads=1).export(),
            fundamental_group(TWO_CIRCLES, threads=2).export(),
        )

    def test_closed_form_ranks(self):
        self.assertEqual(join_free_rank(5, 5), 16)
        self.assertEqual(wreath_free_rank(5, 60), 256)


class TestHomology(unittest.TestCase):
    def test_simple_spaces(self):
        self.assertEqual(homology(SimplicialComplex(1, [(0,)]), 0).betti, [1])
        self.assertEqual(homology(CIRCLE, 1).betti, [1, 1])
        self.assertEqual(homology(DISK, 2).betti, [1, 0, 0])
        self.assertEqual(homology(TWO_CIRCLES, 1).betti, [2, 2])
        self.assertEqual(homology(DISK, 2).reduced_betti(), [0, 0, 0])

    def test_projective_plane_torsion(self):
        H = homology(PROJECTIVE_PLANE, 2)
        self.assertEqual(H.betti, [1, 0, 0])
        self.assertEqual(H.torsion, [[], [2], []])
        self.assertFalse(H.export()["reduced"])

    def test_euler_characteristic_from_betti(self):
        for K in (CIRCLE, DISK, TWO_CIRCLES, PROJECTIVE_PLANE, MIXED):
            H = homology(K, K.dimension)
            self.assertEqual(
                sum((-1) ** k * b for k, b in enumerate(H.betti)), K.euler_characteristic()
            )

    def test_degree_out_of_range(self):
        with self.assertRaises(InvalidInputError):
            homology(CIRCLE, 2)
        with self.assertRaises(InvalidInputError):
            homology(CIRCLE, -1)


if __name__ == "__main__":
    unittest.main(verbosity=2, buffer=True)
