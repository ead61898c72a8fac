import json
import unittest
from unittest.mock import patch

import pcomplex.subgroups as subgroups
from pcomplex.exceptions import (
    InvalidInputError,
    InvariantViolationError,
    NotAPrimeError,
    PrimeDoesNotDivideOrderError,
)
from pcomplex.groupspec import alternating_group, symmetric_group
from pcomplex.pipeline import CONTRACTIBLE, analyze, check_invariants, sylow_count
from pcomplex.subgroups import sylow


class TestAnalyze(unittest.TestCase):
    def test_a5_at_two(self):
        analysis = analyze("alternating:5", 2, homology_dim=1, check=True)
        report = analysis.report
        self.assertEqual(report["components"], 5)
        self.assertEqual(analysis.status, "trivial")
        self.assertEqual(report["homology"]["betti"], [5, 0])
        self.assertEqual(report["euler"], 5)
        self.assertEqual(
            report["group"],
            {"degree": 5, "order": 60, "sylow_order": 4, "p_core_order": 1, "p_rank": 2},
        )
        self.assertEqual(report["poset"], {"size": 20, "relations": 15, "orders": {"2": 15, "4": 5}})
        self.assertIsNone(report["prediction"])

    def test_sylow_is_grown_once_per_analysis(self):
        with patch("pcomplex.subgroups._grow_sylow", wraps=subgroups._grow_sylow) as grow:
            analysis = analyze("alternating:5", 2, "sp")
        self.assertEqual(grow.call_count, 1)
        self.assertIs(sylow(analysis.group, 2), sylow(analysis.group, 2))
        self.assertEqual(analysis.report["group"]["sylow_order"], 4)

    def test_s4_is_contractible(self):
        analysis = analyze("symmetric:4", 2, homology_dim=1, check=True)
        self.assertEqual(analysis.report["prediction"], CONTRACTIBLE)
        self.assertEqual(analysis.report["components"], 1)
        self.assertEqual(analysis.status, "trivial")
        self.assertEqual(analysis.homology.reduced_betti(), [0, 0])

    def test_poset_kinds_agree_on_a5(self):
        counts = {
            kind: analyze("alternating:5", 2, kind).report["components"]
            for kind in ("quillen", "sp", "bouc")
        }
        self.assertEqual(set(counts.values()), {5})

    def test_truncation_is_reported(self):
        analysis = analyze("symmetric:4", 2, "sp", truncation=0)
        self.assertEqual(analysis.report["truncation"], 0)
        self.assertIsNone(analysis.report["prediction"])
        self.assertEqual(analysis.report["poset"]["size"], 9)

    def test_reports_do_not_depend_on_threads(self):
        single = analyze("alternating:5", 2, homology_dim=1, threads=1).report
        several = analyze("alternating:5", 2, homology_dim=1, threads=4).report
        self.assertEqual(json.dumps(single, sort_keys=True), json.dumps(several, sort_keys=True))

    def test_bad_input(self):
        with self.assertRaises(NotAPrimeError):
            analyze("alternating:5", 4)
        with self.assertRaises(InvalidInputError):
            analyze("alternating:5", 2, "brown")
        with self.assertRaises(PrimeDoesNotDivideOrderError):
            analyze("alternating:5", 7)

    def test_check_invariants_catches_disagreement(self):
        analysis = analyze("alternating:5", 2, homology_dim=1)
        analysis.pi1.per_component[0].abelianization_rank += 1
        with self.assertRaises(InvariantViolationError) as ctx:
            check_invariants(analysis)
        self.assertEqual(ctx.exception.exit_code, 4)

    def test_sylow_count(self):
        self.assertEqual(sylow_count(alternating_group(5), 2), 5)
        self.assertEqual(sylow_count(alternating_group(5), 5), 6)
        self.assertEqual(sylow_count(symmetric_group(4), 3), 4)


if __name__ == "__main__":
    unittest.main(verbosity=2, buffer=True)
