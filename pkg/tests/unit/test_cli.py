import unittest
import io
import json
import os
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from src.cli import main
from src.config import Config
from src.services.cache import cache_manager

def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()

class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.star = os.path.join(self.tmp.name, "star.txt")
        with open(self.star, "w") as f:
            f.write("5\n0 1\n0 2\n0 3\n0 4\n")

    def tearDown(self):
        self.tmp.cleanup()

    def test_abc(self):
        code, out, _ = run("abc", "--tree", self.star)
        self.assertEqual(code, 0)
        self.assertEqual(out, "3.4641016151\n")

    def test_global_flags_after_subcommand(self):
        code, out, _ = run("analytic", "thresholds", "--output", "json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)[0], {"dv": 5, "du": 13})
        code, out, _ = run("verify", "--n-min", "10", "--n-max", "10", "--claims", "THM2",
                           "--workers", "1", "--output", "csv")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "n,min_abc,num_minimizers")
        self.assertEqual(run("analytic", "limits", "--workers", "0")[0], 2)

    def test_flags_before_subcommand_are_kept(self):
        code, out, _ = run("--output", "json", "analytic", "thresholds")
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)), 4)

    def test_bare_out_lands_in_export_dir(self):
        export = os.path.join(self.tmp.name, "exports")
        with patch.object(Config, "EXPORT_DIR", export):
            code, out, _ = run("abc", "--tree", self.star, "--out", "star_abc.txt")
        self.assertEqual((code, out), (0, ""))
        with open(os.path.join(export, "star_abc.txt")) as f:
            self.assertEqual(f.read(), "3.4641016151\n")

    def test_thresholds(self):
        code, out, _ = run("analytic", "thresholds")
        self.assertEqual(code, 0)
        self.assertEqual(out, "5 13\n6 25\n7 67\n8 none\n")

    def test_count_only(self):
        code, out, _ = run("enumerate", "--n", "10", "--count-only")
        self.assertEqual((code, out), (0, "106\n"))

    def test_greedy(self):
        code, out, _ = run("greedy", "--degseq", "4,2,2,1,1,1,1", "--abc")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("7\n"))
        self.assertIn("abc ", out)

    def test_analyze_is_json(self):
        code, out, _ = run("analyze", "--tree", self.star)
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["root"], 0)
        self.assertEqual(payload["n"], 5)

    def test_domain_errors_exit_2(self):
        code, _, err = run("greedy", "--degseq", "3,3,1,1")
        self.assertEqual(code, 2)
        self.assertIn("abc-trees:", err)
        self.assertEqual(run("--workers", "0", "analytic", "limits")[0], 2)
        self.assertEqual(run("transform", "--tree", self.star, "--case", "SWITCH", "--u", "0", "--v", "1")[0], 2)

    def test_verify_refusals(self):
        self.assertEqual(run("--workers", "1", "verify", "--n-max", "40")[0], 2)
        self.assertEqual(run("--workers", "1", "verify", "--n-max", "10", "--claims", "THM99")[0], 2)

    def test_verify_writes_report(self):
        cache_manager.clear()
        report = os.path.join(self.tmp.name, "report.json")
        summary = os.path.join(self.tmp.name, "summary.csv")
        code, out, _ = run("--workers", "1", "verify", "--n-min", "10", "--n-max", "10",
                           "--claims", "THM2,THM3", "--out", report, "--summary", summary)
        self.assertEqual(code, 0)
        self.assertEqual(out, "")
        with open(report) as f:
            orders = json.load(f)
        self.assertEqual([o["n"] for o in orders], [10])
        self.assertEqual([c["status"] for c in orders[0]["claims"]], ["pass", "pass"])
        with open(summary) as f:
            self.assertEqual(f.readline().strip(), "n,min_abc,num_minimizers")

    def test_thm1(self):
        code, out, _ = run("thm1", "--n-max", "7")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["id"], "THM1")

if __name__ == "__main__":
    unittest.main()
