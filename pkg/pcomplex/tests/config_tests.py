import copy
import os
import pathlib
import unittest

import pcomplex.settings as settings
from pcomplex.app_loader import (
    apply_settings,
    create_cli_config_from_cli_from_data,
    instantiate_configs_in_dict,
)
from pcomplex.config_registrar import CLIConfig, Config
from pcomplex.exceptions import (
    InvalidInputError,
    NamingConventionException,
    NotAPrimeError,
)
from pcomplex.extension import Extension
from pcomplex.pcomplex_cli.analysis.configs import (
    CapsConfig,
    CheckConfig,
    ExpectConfig,
    PredictionConfig,
    RunConfig,
    VerifyConfig,
)
from pcomplex.tests.cli_test_configs import (
    GroupFamilyConfig,
    PrimeHintConfig,
    TestExtensionConfig,
)
from pcomplex.utils import load_yaml


class TestConfigLoading(unittest.TestCase):
    def setUp(self) -> None:
        cli_config_path = os.path.join(
            pathlib.Path(__file__).parent.resolve(), "cli_config.yml"
        )
        apps_path = pathlib.Path(__file__).parent.resolve().parent.resolve()
        self.cli_config_yaml_data = load_yaml(cli_config_path)
        self.cli_config = create_cli_config_from_cli_from_data(
            self.cli_config_yaml_data, apps_path
        )
        self.test_extension = Extension()
        self.test_extension.cli_config = self.cli_config
        self.test_extension.config = self.cli_config.test_extension

    def test_run_extension_readies_then_runs_main(self):
        calls = []

        class Recorder(Extension):
            def ready(self):
                calls.append("ready")

            def main(self):
                calls.append("main")
                return 7

        self.assertEqual(Recorder().run_extension(), 7)
        self.assertEqual(calls, ["ready", "main"])

    def test_main_is_required(self):
        with self.assertRaises(NotImplementedError):
            Extension().run_extension()

    def test_create_cli_config_from_cli_from_data(self):
        self.assertEqual(type(self.cli_config), CLIConfig)

    def test_extension_config_create(self):
        self.assertEqual(TestExtensionConfig, type(self.cli_config.test_extension))

    def test_get_extension_config(self):
        self.assertEqual(
            self.cli_config.get_extension_config("test_extension"),
            self.cli_config.test_extension,
        )
        self.assertEqual(type(self.cli_config.get_extension_config("missing")), Config)

    def test_static_var_available(self):
        self.assertEqual(self.test_extension.config.static_var, "static_var_test")
        self.assertEqual(
            self.cli_config.get_extension_config("test_extension").static_var,
            "static_var_test",
        )

    def test_plural_list_becomes_singular_configs(self):
        families = self.cli_config.test_extension.group_families
        self.assertEqual(type(families[0]), GroupFamilyConfig)
        self.assertEqual(families[0].degrees, [5, 6, 7])
        self.assertEqual(type(families[0].prime_hint), PrimeHintConfig)
        self.assertEqual(families[0].prime_hint.prime, 2)

    def test_plain_lists_stay_lists(self):
        self.assertEqual(self.cli_config.test_extension.libraries, ["pandas", "networkx"])

    def test_singular_list_of_mappings_is_rejected(self):
        with self.assertRaises(NamingConventionException):
            instantiate_configs_in_dict({"verify": {"check": [{"name": "a5"}]}})

    def test_close_match_message(self):
        with self.assertRaises(AttributeError) as ctx:
            self.cli_config.test_extension.static_vr
        self.assertIn("static_var", str(ctx.exception))

    def test_run_config(self):
        run = self.cli_config.run
        self.assertEqual(type(run), RunConfig)
        self.assertEqual((run.group, run.prime, run.poset), ("alternating:5", 3, "bouc"))
        self.assertIsNone(run.truncate)
        self.assertEqual(type(run.caps), CapsConfig)
        self.assertEqual(run.caps.chains, 500)
        self.assertIsNone(run.caps.orbit)

    def test_checks(self):
        verify = self.cli_config.verify
        self.assertEqual(type(verify), VerifyConfig)
        (check,) = verify.checks
        self.assertEqual(type(check), CheckConfig)
        self.assertEqual(check.poset, "quillen")
        self.assertEqual(check.level, "default")
        self.assertEqual(type(check.expect), ExpectConfig)
        self.assertEqual(check.expect.betti, [1, 0])
        self.assertIsNone(check.expect.status)
        self.assertEqual(type(check.prediction), PredictionConfig)
        self.assertEqual(check.prediction.factors, ["cyclic:2", "cyclic:2"])

    def test_to_dict(self):
        exported = self.cli_config.run.to_dict()
        self.assertEqual(exported["caps"]["relator_length"], 40)
        self.assertEqual(exported["group"], "alternating:5")


class TestRunConfigValidation(unittest.TestCase):
    def setUp(self):
        self.saved = copy.deepcopy(settings.settings)
        self.config = RunConfig()
        self.config.group = "symmetric:4"
        self.config.prime = 2
        self.config.poset = "quillen"

    def tearDown(self):
        settings.settings.clear()
        settings.settings.update(self.saved)

    def test_valid(self):
        self.config.validate()

    def test_prime_must_be_prime(self):
        self.config.prime = 9
        with self.assertRaises(NotAPrimeError):
            self.config.validate()

    def test_group_required(self):
        self.config.group = None
        with self.assertRaises(InvalidInputError):
            self.config.validate()

    def test_unknown_poset(self):
        self.config.poset = "brown"
        with self.assertRaises(InvalidInputError):
            self.config.validate()

    def test_caps_positive(self):
        self.config.caps.orbit = 0
        with self.assertRaises(InvalidInputError) as ctx:
            self.config.validate()
        self.assertIn("run.caps.orbit", str(ctx.exception))

    def test_negative_truncation(self):
        self.config.truncate = -1
        with self.assertRaises(InvalidInputError):
            self.config.validate()

    def test_caps_apply_to_settings(self):
        self.config.caps.chains = 7
        self.config.caps.apply()
        self.assertEqual(settings.cap("chains"), 7)
        self.assertEqual(settings.cap("orbit"), self.saved["caps"]["orbit"])

    def test_apply_settings_merges_caps(self):
        apply_settings({"debug": True, "caps": {"matrix": 10}, "apps": ["analysis"]})
        self.assertTrue(settings.settings["debug"])
        self.assertEqual(settings.cap("matrix"), 10)
        self.assertEqual(settings.cap("chains"), self.saved["caps"]["chains"])
        self.assertNotIn("apps", settings.settings)


if __name__ == "__main__":
    unittest.main(verbosity=2, buffer=True)
