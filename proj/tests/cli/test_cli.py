"""Contract tests for the graphqec command-line tool.

Usage: test_cli.py <path to graphqec> <source dir>
"""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

CLI = None
SRC = None


def schema(name):
    with open(os.path.join(SRC, "docs", "schemas", name + ".schema.json")) as f:
        return json.load(f)


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env, timeout=120)


class CliContract(unittest.TestCase):
    def check(self, args, code, name=None):
        res = run(*args)
        self.assertEqual(res.returncode, code, msg=f"{args}: {res.stderr}")
        if name is None:
            return res
        doc = json.loads(res.stdout)
        jsonschema.validate(doc, schema(name))
        return doc

    def test_detect_documented_examples(self):
        doc = self.check(["detect", "--builtin", "wheel", "--config", "1,2"], 0, "detect")
        self.assertTrue(doc["detected"])
        doc = self.check(["detect", "--builtin", "wheel", "--config", "1,2,3"], 1, "detect")
        self.assertFalse(doc["detected"])
        self.assertEqual(doc["variables"], [0, 1, 2, 3])
        self.assertEqual(len(doc["witness"]), 4)
        doc = self.check(["detect", "--builtin", "tenfold", "--group", "3", "--config", "1,3,5"], 0, "detect")
        self.assertTrue(doc["strong"])

    def test_detect_witness_is_a_kernel_vector(self):
        doc = self.check(["detect", "--builtin", "wheel", "--group", "2", "--config", "1,2,3"], 1, "detect")
        # Outputs 4 and 5 remain; both see the hub and their neighbours among {1,2,3}.
        d = dict(zip(doc["variables"], doc["witness"]))
        adj = {4: [0, 3], 5: [0, 1]}
        for y, nbrs in adj.items():
            self.assertEqual(sum(d[v] for v in nbrs) % doc["factor"], 0)

    def test_sweep(self):
        for group in ["2", "3", "4", "5", "2,2"]:
            doc = self.check(["sweep", "--builtin", "wheel", "--correct", "1", "--group", group], 0, "sweep")
            self.assertEqual((doc["checked"], doc["detected"]), (16, 16))
        doc = self.check(["sweep", "--builtin", "tenfold", "--detect", "3", "--oracle"], 0, "sweep")
        self.assertEqual(doc["checked"], 176)
        self.assertFalse(doc["oracle"]["skipped"])
        self.assertEqual(doc["oracle"]["disagreements"], [])
        doc = self.check(["sweep", "--builtin", "tenfold", "--detect", "3", "--group", "5", "--oracle"], 0, "sweep")
        self.assertTrue(doc["oracle"]["skipped"])
        doc = self.check(["sweep", "--builtin", "wheel", "--detect", "3"], 1, "sweep")
        self.assertFalse(doc["all_detected"])
        self.assertTrue(doc["sizes"][3]["undetected"])
        doc = self.check(["sweep", "--builtin", "wheel", "--inputs", "3", "--correct", "1", "--group", "7"], 0, "sweep")
        self.assertEqual(doc["graph"]["inputs"], [3])

    def test_sweep_orbit_reduction_and_workers_agree(self):
        base = run("sweep", "--builtin", "tenfold", "--correct", "2")
        self.assertEqual(base.returncode, 1)
        reduced = json.loads(run("sweep", "--builtin", "tenfold", "--correct", "2", "--orbit-reduction").stdout)
        plain = json.loads(base.stdout)
        self.assertEqual(plain["checked"], reduced["checked"])
        self.assertEqual(plain["detected"], reduced["detected"])
        parallel = run("sweep", "--builtin", "tenfold", "--correct", "2", "--workers", "4")
        self.assertEqual(parallel.stdout, base.stdout)
        env_parallel = run("sweep", "--builtin", "tenfold", "--correct", "2", env={"GRAPHQEC_WORKERS": "3"})
        self.assertEqual(env_parallel.stdout, base.stdout)

    def test_subdets(self):
        doc = self.check(["subdets", "--builtin", "matrix19"], 0, "subdets")
        self.assertEqual(doc["det_set"], [-11, -8, -5, -4, -2, -1, 1, 2, 4, 5, 8, 9])
        self.assertEqual(doc["bad_primes"], [2, 3, 5, 11])
        doc = self.check(["subdets", "--builtin", "matrix19", "--inputs", "0,1", "--prime", "3"], 0, "subdets")
        self.assertNotIn(3, doc["restricted_bad_primes"])
        doc = self.check(["subdets", "--builtin", "matrix19", "--prime", "11"], 1, "subdets")
        self.assertTrue(all(int(p["det"]) % 11 == 0 for p in doc["witness"]))
        self.check(["subdets", "--builtin", "matrix19", "--prime", "7"], 0, "subdets")

    def test_search(self):
        doc = self.check(["search", "--skeleton-builtin", "matrix19", "--bound", "2", "--seed", "0", "--budget", "100000"],
                         0, "search")
        self.assertTrue(doc["success"])
        self.assertNotIn(0, doc["det_set"])
        self.assertTrue(doc["good_primes_upto_50"])
        skel = os.path.join(SRC, "samples", "graphs", "matrix19_skeleton.graph")
        doc = self.check(["search", "--skeleton", skel, "--bound", "2", "--seed", "0", "--budget", "100000"], 0, "search")
        self.assertTrue(doc["success"])
        with tempfile.NamedTemporaryFile("w", suffix=".graph", delete=False) as f:
            f.write("vertices: 4\n0 1 1\n0 2 1\n1 2 1\n")
        try:
            doc = self.check(["search", "--skeleton", f.name, "--bound", "3", "--budget", "50"], 1, "search")
            self.assertFalse(doc["success"])
        finally:
            os.unlink(f.name)

    def test_census(self):
        res = self.check(["census", "--n", "6"], 0)
        lines = res.stdout.strip().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].startswith("001111011101011"))
        doc = self.check(["census", "--n", "6", "--json"], 0, "census")
        self.assertEqual(doc["count"], 2)
        doc = self.check(["census", "--n", "4", "--json"], 0, "census")
        self.assertEqual(doc["count"], 0)

    def test_export(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "wheel.csv")
            doc = self.check(["export", "--builtin", "wheel", "--out", out], 0, "export")
            self.assertEqual((doc["rows"], doc["cols"]), (32, 2))
            self.assertTrue(doc["isometry"])
            with open(out) as f:
                rows = list(csv.DictReader(f))
            self.assertEqual(len(rows), 64)
            for r in rows:
                self.assertAlmostEqual(math.hypot(float(r["real"]), float(r["imag"])), 32 ** -0.5, delta=1e-12)
            self.check(["export", "--builtin", "tenfold", "--group", "5", "--out", out], 2)

    def test_errors_exit_two(self):
        self.check(["detect", "--builtin", "wheel", "--config", "0"], 2)
        self.check(["detect", "--builtin", "wheel", "--config", "9"], 2)
        self.check(["detect", "--builtin", "wheel", "--group", "1", "--config", "1"], 2)
        self.check(["detect", "--builtin", "nope", "--config", "1"], 2)
        self.check(["detect", "--graph", "/nonexistent.graph", "--config", "1"], 2)
        self.check(["census", "--n", "5"], 2)
        self.check(["census", "--n", "10"], 2)
        self.check(["subdets", "--builtin", "matrix19", "--prime", "9"], 2)
        self.check([], 2)
        with tempfile.NamedTemporaryFile("w", suffix=".graph", delete=False) as f:
            f.write("vertices: 3\ninputs: 0\n1 1 1\n")
        try:
            self.check(["detect", "--graph", f.name, "--config", "1"], 2)
        finally:
            os.unlink(f.name)

    def test_isolated_input_sample(self):
        path = os.path.join(SRC, "samples", "graphs", "isolated_input.graph")
        doc = self.check(["detect", "--graph", path, "--config", ""], 1, "detect")
        self.assertEqual(doc["condition"], "input_nonzero")

    def test_outputs_are_byte_identical(self):
        for args in (["sweep", "--builtin", "wheel", "--detect", "3"],
                     ["subdets", "--builtin", "matrix19"],
                     ["search", "--skeleton-builtin", "matrix19", "--bound", "2", "--seed", "5", "--budget", "1000"],
                     ["census", "--n", "6", "--json"]):
            self.assertEqual(run(*args).stdout, run(*args).stdout, msg=str(args))

    def test_timing_is_opt_in(self):
        plain = json.loads(run("sweep", "--builtin", "wheel", "--correct", "1").stdout)
        self.assertNotIn("wall_seconds", plain)
        res = run("sweep", "--builtin", "wheel", "--correct", "1", "--timing")
        self.assertEqual(res.returncode, 0)
        doc = json.loads(res.stdout)
        jsonschema.validate(doc, schema("sweep"))
        self.assertGreaterEqual(doc["wall_seconds"], 0.0)

if __name__ == "__main__":
    CLI, SRC = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
