import json
import os
import sys
import unittest
from io import StringIO
from unittest.mock import patch

import pytest

from brauerkit.__main__ import build_job, build_parser, main
from brauerkit.catalog import FERMAT_QUARTIC
from brauerkit.config import Config
from brauerkit.errors import JobError
from brauerkit.jobs import DOUBLE_PLANE, ELLIPTIC
from brauerkit.reproduce import CHAR2_LAW, FAIL, PASS, CaseResult

JOBS_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "jobs")


@pytest.mark.usefixtures("config_file_cls")
class TestBrauerkitMain(unittest.TestCase):
    @patch("sys.stdout", new_callable=StringIO)
    @patch("brauerkit.__main__.logger")
    def test_stienstra_ci_subcommand(self, mock_logger, mock_stdout):
        testargs = [
            "brauerkit", "stienstra-ci", "-e", FERMAT_QUARTIC,
            "--outputs", "height",
            "--config", self.config_file,  # type: ignore
        ]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 0)
        self.assertEqual(mock_stdout.getvalue(), "height: 1\n")
        mock_logger.debug.assert_called_once()

    @patch("sys.stdout", new_callable=StringIO)
    def test_machine_format(self, mock_stdout):
        testargs = [
            "brauerkit", "stienstra-ci", "-e", FERMAT_QUARTIC,
            "--outputs", "height", "--format", "machine",
        ]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 0)
        self.assertEqual(json.loads(mock_stdout.getvalue())["height"], "1")

    @patch("sys.stderr", new_callable=StringIO)
    def test_bad_equation_exits_with_two(self, mock_stderr):
        testargs = ["brauerkit", "stienstra-ci", "-e", "x0^4 + $"]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 2)
        self.assertTrue(mock_stderr.getvalue().startswith("algebra: "))

    @patch("sys.stdout", new_callable=StringIO)
    def test_artin_catalog_subcommand(self, mock_stdout):
        testargs = [
            "brauerkit", "artin", "--catalog", "char2_model",
            "-N", "9", "--outputs", "fgl",
        ]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 0)
        self.assertEqual(
            mock_stdout.getvalue().splitlines()[0], "law: " + CHAR2_LAW
        )

    @patch("sys.stdout", new_callable=StringIO)
    def test_height_job_file(self, mock_stdout):
        testargs = [
            "brauerkit", "height", "-j", os.path.join(JOBS_DIR, "fermat.ini"),
        ]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 0)
        self.assertEqual(mock_stdout.getvalue(), "height: 1\n")

    @patch("sys.stderr", new_callable=StringIO)
    def test_height_needs_a_surface(self, mock_stderr):
        with patch.object(sys, "argv", ["brauerkit", "height"]):
            self.assertEqual(main(), 1)
        self.assertTrue(mock_stderr.getvalue().startswith("cli: "))

    @patch("sys.stderr", new_callable=StringIO)
    def test_unknown_catalog_surface(self, mock_stderr):
        testargs = ["brauerkit", "height", "--catalog", "cubic_fourfold"]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 1)
        self.assertIn("catalog: unknown surface", mock_stderr.getvalue())

    @patch("sys.stderr", new_callable=StringIO)
    def test_missing_job_file(self, mock_stderr):
        testargs = ["brauerkit", "height", "-j", "no_such_job.ini"]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 1)

    @patch("brauerkit.__main__.argparse.ArgumentParser.print_help")
    @patch("brauerkit.__main__.logger")
    def test_default_no_subcommand(self, mock_logger, mock_print_help):
        with patch.object(sys, "argv", ["brauerkit"]):
            self.assertEqual(main(), 0)
        mock_print_help.assert_called_once()

    @patch("brauerkit.__main__.logger")
    def test_version_argument(self, mock_logger):
        testargs = ["brauerkit", "--version"]
        with patch.object(sys, "argv", testargs):
            with self.assertRaises(SystemExit):
                main()


class TestReproduceSubcommand(unittest.TestCase):
    def results(self, status):
        return [CaseResult("char 2 model height", "3", "3", status, 0.1)]

    @patch("sys.stdout", new_callable=StringIO)
    @patch("brauerkit.__main__.write_report")
    @patch("brauerkit.__main__.reproduce")
    def test_all_pass(self, mock_reproduce, mock_write_report, mock_stdout):
        mock_reproduce.return_value = self.results(PASS)
        with patch.object(sys, "argv", ["brauerkit", "reproduce"]):
            self.assertEqual(main(), 0)
        mock_reproduce.assert_called_once_with(order=None, slow=False)
        mock_write_report.assert_not_called()
        self.assertIn("char 2 model height", mock_stdout.getvalue())

    @patch("sys.stdout", new_callable=StringIO)
    @patch("brauerkit.__main__.write_report")
    @patch("brauerkit.__main__.reproduce")
    def test_failure_and_report(self, mock_reproduce, mock_write_report,
                                mock_stdout):
        mock_reproduce.return_value = self.results(FAIL)
        testargs = [
            "brauerkit", "reproduce", "--slow", "-N", "6",
            "--report", "golden.pdf",
        ]
        with patch.object(sys, "argv", testargs):
            self.assertEqual(main(), 1)
        mock_reproduce.assert_called_once_with(order=6, slow=True)
        path = mock_write_report.call_args.args[1]
        self.assertEqual(path, "golden.pdf")


class TestBuildJob:
    def parse(self, argv):
        return build_parser().parse_args(argv)

    def test_double_plane(self):
        args = self.parse(["stienstra-dp", "-e", "x0^6 + x1^6 + x2^6"])
        job = build_job(args, "stienstra-dp", Config())
        assert job.kind == DOUBLE_PLANE
        assert job.polynomials == {"f": "x0^6 + x1^6 + x2^6"}
        assert job.requested == ("fgl", "height")

    def test_double_plane_needs_one_sextic(self):
        args = self.parse(["stienstra-dp", "-e", "x0^6", "-e", "x1^6"])
        with pytest.raises(JobError):
            build_job(args, "stienstra-dp", Config())

    def test_weierstrass_coefficients(self):
        args = self.parse(
            ["artin", "-a", "a2=3*t^2", "-a", "a6=4*t^10 + 3*t^6 + 4*t^2"]
        )
        job = build_job(args, "artin", Config())
        assert job.kind == ELLIPTIC
        assert job.polynomials["a2"] == "3*t^2"

    def test_malformed_coefficient(self):
        args = self.parse(["artin", "-a", "3*t^2"])
        with pytest.raises(JobError):
            build_job(args, "artin", Config())

    def test_job_file_with_outputs(self):
        args = self.parse(
            ["stienstra-ci", "-j", os.path.join(JOBS_DIR, "fermat.ini"),
             "--outputs", "fgl"]
        )
        assert build_job(args, "stienstra-ci", Config()).requested == (
            "fgl",
        )
