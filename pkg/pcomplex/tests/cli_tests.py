import copy
import json
import os
import tempfile
import unittest
from unittest.mock import patch

import pcomplex.settings as settings
from pcomplex.pcomplex_cli.analysis.analysis import FAIL, PASS, run_check
from pcomplex.pcomplex_cli.pcomplex_cli import PComplexCLI


def run_cli(*argv) -> int:
    return PComplexCLI(argv=list(argv)).main()


class TestRun(unittest.TestCase):
    def setUp(self):
        self.saved = copy.deepcopy(settings.settings)

    def tearDown(self):
        settings.settings.clear()
        settings.settings.update(self.saved)

    def test_default_command(self):
        self.assertEqual(run_cli("--group", "alternating:5", "--prime", "2"), 0)

    def test_run_subcommand_with_json(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "a5.json")
            code = run_cli(
                "run", "--group", "alternating:5", "--prime", "2",
                "--homology", "1", "--json", path, "--check-invariants",
            )
            self.assertEqual(code, 0)
            with open(path) as file:
                report = json.load(file)
        self.assertEqual(report["components"], 5)
        self.assertEqual(report["homology"]["betti"], [5, 0])
        self.assertEqual(report["poset_kind"], "quillen")

    def test_invalid_input_exit_code(self):
        self.assertEqual(run_cli("--group", "alternating:5", "--prime", "4"), 2)
        self.assertEqual(run_cli("--group", "alternatin:5", "--prime", "2"), 2)
        self.assertEqual(run_cli("--prime", "2"), 2)

    def test_cap_exit_code(self):
        code = run_cli("--group", "alternating:5", "--prime", "2", "--cap-chains", "1")
        self.assertEqual(code, 3)

    def test_argparse_errors_exit_two(self):
        with self.assertRaises(SystemExit) as ctx:
            run_cli("--group", "alternating:5", "--poset", "brown")
        self.assertEqual(ctx.exception.code, 2)

    def test_global_flags_reach_settings(self):
        run_cli("--group", "symmetric:4", "--prime", "2", "--threads", "2", "--cap-orbit", "5000")
        self.assertEqual(settings.settings["threads"], 2)
        self.assertEqual(settings.cap("orbit"), 5000)


class TestVerify(unittest.TestCase):
    def setUp(self):
        self.saved = copy.deepcopy(settings.settings)

    def tearDown(self):
        settings.settings.clear()
        settings.settings.update(self.saved)

    def test_single_row(self):
        self.assertEqual(run_cli("verify", "--only", "a5_quillen_p2"), 0)

    def test_unknown_row(self):
        self.assertEqual(run_cli("verify", "--only", "no_such_row"), 2)

    def test_mismatch_fails_the_row(self):
        cli = PComplexCLI(argv=["verify"])
        check = next(c for c in cli.verify.config.checks if c.name == "s4_quillen_p2")
        check.expect.components = 2
        results = {row["property"]: row["result"] for row in run_check(check)}
        self.assertEqual(results["components"], FAIL)
        self.assertEqual(results["status"], PASS)

    def test_missing_data_fails_the_row(self):
        cli = PComplexCLI(argv=["verify"])
        check = next(c for c in cli.verify.config.checks if c.name == "j1_bouc_p2")
        with tempfile.TemporaryDirectory() as directory:
            absent = os.path.join(directory, "j1.txt")
            with patch("pcomplex.groupspec.data_path", return_value=absent):
                (row,) = run_check(check)
                code = run_cli("verify", "--only", "j1_bouc_p2")
        self.assertEqual((row["property"], row["result"]), ("data", FAIL))
        self.assertEqual(code, 1)

    def test_long_rows_need_extended(self):
        long_rows = {"j1_bouc_p2", "a10_bouc_p3", "m12_bouc_p2"}
        default = {check.name for check in PComplexCLI(argv=["verify"]).verify.selected_checks()}
        self.assertTrue({"a4_quillen_p2", "a8_quillen_p2", "s8_quillen_p3", "m11_quillen_p2"} <= default)
        self.assertFalse(long_rows & default)
        cli = PComplexCLI(argv=["verify", "--extended"])
        cli.verify.apply_arguments(cli.args)
        self.assertTrue(long_rows <= {check.name for check in cli.verify.selected_checks()})

    def test_default_suite(self):
        cli = PComplexCLI(argv=["verify"])
        for check in cli.verify.config.checks:
            if check.level != "default":
                continue
            for row in run_check(check):
                self.assertEqual(row["result"], PASS, row)


if __name__ == "__main__":
    unittest.main(verbosity=2, buffer=True)
