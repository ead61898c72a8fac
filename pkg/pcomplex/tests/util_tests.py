import json
import os
import shutil
import unittest

from pcomplex import utils


class TestUtils(unittest.TestCase):
    def test_write_content(self):
        file_path = os.path.join("temp", "file.tst")

        # Should have actually been created don't forget to tear down
        utils.write_content("test content", file_path)
        self.assertTrue(os.path.exists(file_path))

        # Tearing down
        shutil.rmtree(os.path.dirname(file_path))

    def test_write_report_json(self):
        file_path = os.path.join("temp", "report.json")
        self.assertTrue(utils.write_content({"b": [1, 2], "a": 1}, file_path))
        with open(file_path) as file:
            self.assertEqual(json.load(file), {"a": 1, "b": [1, 2]})
        self.assertTrue(utils.read_file(file_path).startswith('{\n  "a": 1'))
        shutil.rmtree(os.path.dirname(file_path))

    def test_unsupported_content_is_not_saved(self):
        file_path = os.path.join("temp", "table.csv")
        self.assertFalse(utils.write_content(42, file_path))
        self.assertFalse(os.path.exists(file_path))
        shutil.rmtree(os.path.dirname(file_path))

    def test_is_snake_case(self):
        self.assertTrue(utils.is_snake_case("_is_snake_case"))
        self.assertFalse(utils.is_snake_case("NotSnakeCase"))
        self.assertTrue(utils.is_snake_case("is_snake_"))
        self.assertFalse(utils.is_snake_case("NOTSNAKE"))

    def test_change_to_snake_case(self):
        self.assertEqual(utils.change_to_snake_case("camelCase"), "camel_case")
        self.assertEqual(utils.change_to_snake_case("PascalCase"), "pascal_case")
        self.assertEqual(utils.change_to_snake_case("UPPERCASE"), "uppercase")
        self.assertEqual(utils.change_to_snake_case("RunConfig"), "run_config")

    def test_is_plural(self):
        self.assertTrue(utils.is_plural("checks"))
        self.assertTrue(utils.is_plural("families"))
        self.assertFalse(utils.is_plural("check"))

    def test_make_singular(self):
        self.assertEqual(utils.make_singular("checks"), "check")
        self.assertEqual(utils.make_singular("families"), "family")

    def test_format_abelian(self):
        self.assertEqual(utils.format_abelian({"rank": 0, "torsion": []}), "0")
        self.assertEqual(utils.format_abelian({"rank": 16, "torsion": []}), "Z^16")
        self.assertEqual(utils.format_abelian({"rank": 1, "torsion": [2, 4]}), "Z^1 + Z/2 + Z/4")

    def test_progress_is_silent_by_default(self):
        self.assertEqual(list(utils.progress(range(3), desc="test")), [0, 1, 2])


if __name__ == "__main__":
    unittest.main(verbosity=2, buffer=True)
