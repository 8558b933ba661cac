import configparser
import os
import sys
import unittest
from tempfile import TemporaryDirectory
from unittest.mock import MagicMock, mock_open, patch

import pytest

from brauerkit.config import Config
from brauerkit.reproduce import FAIL, PASS, SKIPPED, CaseResult
from brauerkit.utils import (
    format_results,
    format_timings,
    read_config,
    read_file,
    write_report,
)

RESULTS = [
    CaseResult("char 2 model height", "3", "3", PASS, 0.25),
    CaseResult("fermat quartic law over Z", "x + y - 24*x^4*y + O(11)",
               "x + y + O(11)", FAIL, 1.5),
    CaseResult("char 5 model height", "1", "1", SKIPPED, 0.1),
]


class TestReadConfig:
    def test_read_config_success(self, config_file_path):
        config = read_config(config_file_path)
        assert isinstance(config, Config)
        assert (config.prime, config.order, config.hmax) == (5, 11, 1)
        assert config.slow is False

    def test_read_config_file_not_found(self):
        with pytest.raises(FileNotFoundError):
            read_config("non_existent_config.ini")

    def test_sections_and_relative_report(self):
        with TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "run.ini")
            with open(path, "w") as f:
                f.write("[DEFAULT]\nprime=3\n[golden]\nreport=out.pdf\n")
            config = read_config(path)
        assert config.prime == 3
        assert os.path.isabs(config.report)
        assert config.report.endswith("out.pdf")

    @patch(
        "configparser.ConfigParser.read",
        side_effect=configparser.Error("Mocked error"),
    )
    def test_read_config_parsing_error(self, mock_read, config_file_path):
        with pytest.raises(Exception) as exc_info:
            read_config(config_file_path)

        assert "Error reading the config file" in str(exc_info.value)


class TestReadFile(unittest.TestCase):
    @patch("builtins.open", new_callable=mock_open, read_data="[ring]\n")
    @patch("os.path.isfile", return_value=True)
    def test_read_file_success(self, mock_isfile, mock_open):
        content = read_file("job.ini")
        self.assertEqual(content, "[ring]\n")
        mock_open.assert_called_once_with("job.ini", "r", encoding="utf-8")

    @patch("os.path.isfile", return_value=False)
    def test_read_file_not_found(self, mock_isfile):
        with self.assertRaises(FileNotFoundError):
            read_file("non_existent.ini")


class TestFormatResults(unittest.TestCase):
    def test_short_rows_fit_the_table(self):
        lines = format_results(RESULTS[:1]).splitlines()
        self.assertTrue(lines[0].startswith("case"))
        self.assertTrue(lines[2].startswith("char 2 model height"))
        self.assertTrue(lines[2].endswith(PASS))

    def test_long_values_go_below(self):
        table = format_results(RESULTS[1:2])
        self.assertIn("(below)", table)
        self.assertIn("    expected: x + y - 24*x^4*y + O(11)", table)
        self.assertIn("    got:      x + y + O(11)", table)

    def test_timings(self):
        lines = format_timings(RESULTS).splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].endswith("1.500"))


class TestWriteReport(unittest.TestCase):
    def test_without_weasyprint(self):
        with patch.dict(sys.modules, {"weasyprint": None}):
            self.assertFalse(write_report(RESULTS, "report.pdf"))

    def test_with_weasyprint(self):
        weasyprint = MagicMock()
        with patch.dict(sys.modules, {"weasyprint": weasyprint}):
            self.assertTrue(write_report(RESULTS, "report.pdf"))
        html = weasyprint.HTML.call_args.kwargs["string"]
        self.assertIn("char 2 model height", html)
        self.assertIn("1 passed, 1 failed, 1 skipped by order.", html)
        weasyprint.HTML.return_value.write_pdf.assert_called_once_with(
            "report.pdf"
        )
