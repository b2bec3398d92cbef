#!/usr/bin/env python3
"""
Unit tests for the command-line interface.

Tests algebra file parsing, job execution, report rendering and the
exit codes of the main entry point.
"""

import io
import json
import tempfile
import time
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from ..__main__ import build_parser, main
from ..cli.algebra_file import AlgebraParseError, format_algebra, load_algebra, parse_algebra
from ..cli.report import render_text, to_json
from ..cli.runner import (
    EXIT_ERROR, EXIT_OK, JobConfig, JobError, parse_dim, resolve_algebra_path, run,
)
from ..core.layers import parse_layering
from ..utils.config import Config, OutputFormat


BIPARTITE_TEXT = """# two arrows forward, three back
vertices: 2
arrow a1: 1 -> 2
arrow a2: 1 -> 2
arrow b1: 2 -> 1
arrow b2: 2 -> 1
arrow b3: 2 -> 1
loewy_bound: 3
"""


def run_main(argv):
    """Run main() and capture (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestAlgebraFile(unittest.TestCase):
    """Test cases for the algebra file format."""

    def test_parse(self):
        """Test a well-formed file."""
        a = parse_algebra(BIPARTITE_TEXT)
        self.assertEqual(a.n, 2)
        self.assertEqual(len(a.quiver.arrows), 5)
        self.assertEqual(a.loewy_bound, 3)

    def test_no_arrows(self):
        """Test a semisimple algebra."""
        a = parse_algebra("vertices: 3\nloewy_bound: 0\n")
        self.assertEqual(a.quiver.arrows, ())

    def test_unknown_vertex(self):
        """Test the column of an unknown target vertex."""
        with self.assertRaises(AlgebraParseError) as ctx:
            parse_algebra("vertices: 2\narrow a: 1 -> 9\nloewy_bound: 1\n")
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.column, 15)
        self.assertIn("line 2, column 15", str(ctx.exception))

    def test_duplicate_arrow(self):
        """Test duplicate arrow names point at the name."""
        with self.assertRaises(AlgebraParseError) as ctx:
            parse_algebra("vertices: 2\narrow a: 1 -> 2\narrow a: 2 -> 1\nloewy_bound: 1\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 7))

    def test_negative_loewy_bound(self):
        """Test negative Loewy bounds point at the value."""
        with self.assertRaises(AlgebraParseError) as ctx:
            parse_algebra("vertices: 1\nloewy_bound: -1\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 14))

    def test_garbage_and_missing(self):
        """Test unparsable lines and missing keys."""
        with self.assertRaises(AlgebraParseError):
            parse_algebra("vertices: 2\nedge 1 2\nloewy_bound: 1\n")
        with self.assertRaises(AlgebraParseError):
            parse_algebra("vertices: 2\n")
        with self.assertRaises(AlgebraParseError):
            parse_algebra("vertices: two\nloewy_bound: 1\n")

    def test_format_round_trip(self):
        """Test format_algebra output parses back to the same algebra."""
        a = parse_algebra(BIPARTITE_TEXT)
        self.assertEqual(parse_algebra(format_algebra(a)), a)

    def test_bundled_fixtures(self):
        """Test every bundled file loads."""
        for path in sorted(Config.DATA_DIR.glob("*.alg")):
            with self.subTest(path=path.name):
                load_algebra(path)


class TestRunner(unittest.TestCase):
    """Test cases for job execution."""

    def job(self, command, fixture, **kwargs):
        return JobConfig(command=command, algebra_path=Config.fixture(fixture), **kwargs)

    def test_parse_dim(self):
        """Test dimension vector parsing."""
        self.assertEqual(parse_dim("2,2"), (2, 2))
        with self.assertRaises(JobError):
            parse_dim("2;2")

    def test_missing_dim(self):
        """Test commands needing --dim refuse to run without it."""
        with self.assertRaises(JobError):
            run(self.job("components", "kronecker"))

    def test_unknown_command(self):
        """Test unknown commands are refused."""
        with self.assertRaises(JobError):
            run(self.job("nonsense", "kronecker"))

    def test_header(self):
        """Test the report header records seed, primes and caps."""
        document, code = run(self.job("socle-layering", "two_cycle", layering="1:1;2:1;3:1;4:1"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(document["tool"], "repvar")
        self.assertEqual(document["seed"], 0)
        self.assertEqual(document["primes"]["small_primes"], [5, 7])
        self.assertEqual(document["caps"]["filtration_cap"], Config.FILTRATION_CAP)
        self.assertEqual(document["result"]["socle_layering"], "4:1;3:1;2:1;1:1")

    def test_resolve_fixture(self):
        """Test bare fixture names fall back to the bundled files."""
        self.assertEqual(resolve_algebra_path(Path("kronecker.alg")), Config.fixture("kronecker"))
        missing = Path("/nonexistent/zzz.alg")
        self.assertEqual(resolve_algebra_path(missing), missing)

    def test_canon_decomp(self):
        """Test canon-decomp on the Kronecker quiver."""
        document, code = run(self.job("canon-decomp", "kronecker", dim=(2, 2)))
        self.assertEqual(code, EXIT_OK)
        result = document["result"]
        self.assertEqual(result["decomposition"]["summands"], [{"vector": [1, 1], "multiplicity": 2}])
        self.assertEqual(result["mu"], 2)
        self.assertFalse(result["dense_orbit"])

    def test_generic_module(self):
        """Test generic-module prints the relations in order."""
        document, _ = run(self.job("generic-module", "bipartite23", layering="2:1;1:2;2:1;"))
        relations = document["result"]["relations"]
        self.assertEqual(relations[0], "b3*z1 = x1*b1*z1 + x2*b2*z1")
        self.assertEqual(relations[1:4], [
            "a2*b2*z1 = x3*a1*b1*z1",
            "a1*b2*z1 = x4*a1*b1*z1",
            "a2*b1*z1 = x5*a1*b1*z1",
        ])
        self.assertEqual(list(document["result"]["specialization"]["parameters"]),
                         ["x1", "x2", "x3", "x4", "x5"])

    def test_structured_is_deterministic(self):
        """Test identical jobs serialize to identical bytes and layerings round-trip."""
        job = self.job("components", "two_cycle", dim=(1, 1, 1, 1), output_format=OutputFormat.STRUCTURED)
        first = to_json(run(job)[0])
        second = to_json(run(job)[0])
        self.assertEqual(first, second)
        data = json.loads(first)
        a = load_algebra(Config.fixture("two_cycle"))
        for component in data["result"]["components"]:
            s = parse_layering(component["radical_layering"], a.n, a.loewy_bound)
            self.assertEqual(str(s), component["radical_layering"])

    def test_text_rendering(self):
        """Test the components text report."""
        document, _ = run(self.job("components", "local_r3", dim=(10,), enrich=False))
        text = render_text(document)
        self.assertIn("components: 17 (local pipeline)", text)
        self.assertIn("component 17: S = ", text)


class TestMain(unittest.TestCase):
    """Test cases for the entry point."""

    def test_parser_requires_algebra(self):
        """Test --algebra is mandatory."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                build_parser().parse_args(["components"])

    def test_quiver_alias(self):
        """Test --quiver is accepted for --algebra."""
        args = build_parser().parse_args(["subdims", "--quiver", "kronecker.alg", "--dim", "2,2"])
        self.assertEqual(args.algebra, "kronecker.alg")

    def test_socle_layering(self):
        """Test the socle-layering command on the four-vertex cycle algebra."""
        code, out, _ = run_main(["socle-layering", "--algebra", str(Config.fixture("two_cycle")),
                                 "--layering", "1:1;2:1;3:1;4:1"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines()[-1], "4:1;3:1;2:1;1:1")

    def test_components_local(self):
        """Test components on three loops with d = 10."""
        code, out, _ = run_main(["components", "--algebra", "local_r3.alg", "--dim", "10", "--no-enrich"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("components: 17", out)

    def test_components_local_enriched(self):
        """Test the enriched local run samples every component in reasonable time."""
        start = time.perf_counter()
        code, out, _ = run_main(["components", "--algebra", "local_r3.alg", "--dim", "10",
                                 "--format", "structured"])
        self.assertLess(time.perf_counter() - start, 60.0)
        self.assertEqual(code, EXIT_OK)
        reports = json.loads(out)["result"]["components"]
        self.assertEqual(len(reports), 17)
        for report in reports:
            self.assertIsNotNone(report["sampled_end_dim"])
            self.assertEqual(set(report["arrow_nullities"]), {"x1", "x2", "x3"})

    def test_structured_output(self):
        """Test --format structured prints parseable JSON with the exit code."""
        code, out, _ = run_main(["radical-layering-hereditary", "--algebra", "kronecker.alg",
                                 "--dim", "2,2", "--format", "structured"])
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["result"]["radical_layering"], "1:2;2:2")
        self.assertEqual(data["exit_code"], EXIT_OK)

    def test_errors_exit_one(self):
        """Test missing arguments, bad files and bad settings exit with 1."""
        code, out, err = run_main(["components", "--algebra", "kronecker.alg"])
        self.assertEqual(code, EXIT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("needs --dim", err)

        code, _, err = run_main(["components", "--algebra", "/nonexistent/zzz.alg", "--dim", "1"])
        self.assertEqual(code, EXIT_ERROR)

        code, _, err = run_main(["components", "--algebra", "kronecker.alg", "--dim", "1,1", "--samples", "0"])
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("Invalid value for setting 'samples'", err)

    def test_parse_error_position(self):
        """Test parse errors report line and column."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.alg"
            path.write_text("vertices: 2\narrow a: 1 -> 9\nloewy_bound: 1\n", encoding="utf-8")
            code, _, err = run_main(["skeleta", "--algebra", str(path), "--layering", "1:1;"])
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("line 2, column 15", err)

    def test_settings_file(self):
        """Test a settings file provides the seed."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "settings.json"
            path.write_text(json.dumps({"seed": 42}), encoding="utf-8")
            code, out, _ = run_main(["socle-layering", "--algebra", "two_cycle.alg",
                                     "--layering", "1:1;2:1;3:1;4:1", "--settings", str(path),
                                     "--format", "structured"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["seed"], 42)


if __name__ == '__main__':
    unittest.main()
