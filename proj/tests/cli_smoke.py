"""End-to-end checks of the d4plus command line. Usage: cli_smoke.py <binary> <data dir>"""
import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = sys.argv[1] if len(sys.argv) > 1 else "build/d4plus"
DATA = sys.argv[2] if len(sys.argv) > 2 else os.path.join(os.path.dirname(__file__), "data")


def run(*args, env=None, stdin=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env, input=stdin, timeout=300)


def rows(csv):
    lines = csv.strip().splitlines()
    return lines[0], [tuple(line.split(",")) for line in lines[1:]]


class Enumerate(unittest.TestCase):
    def test_counts_k0_8(self):
        r = run("enumerate", "--k0", "8")
        self.assertEqual(r.returncode, 0, r.stderr)
        header, body = rows(r.stdout)
        self.assertEqual(header, "k,l,count")
        table = {(k, l): int(c) for k, l, c in body}
        self.assertEqual(table[("0", "2")], 1)
        self.assertEqual(table[("0", "4")], 4)
        self.assertEqual(table[("0", "6")], 25)
        self.assertEqual(table[("0", "8")], 196)

    def test_small_k0(self):
        self.assertIn("0,2,1", run("enumerate", "--k0", "2").stdout)
        self.assertEqual(run("count", "--k0", "0").stdout, "k,l,count\n0,0,1\n")

    def test_writes_pool_json_and_dot(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "pool.json")
            self.assertEqual(run("enumerate", "--k0", "4", "--out", out).returncode, 0)
            with open(out) as fh:
                pool = json.load(fh)
            self.assertEqual(pool["k0"], 4)
            self.assertEqual(len(pool["cells"]["0,4"]), 4)
            d = os.path.join(tmp, "dots")
            self.assertEqual(run("enumerate", "--k0", "4", "--out", d, "--format", "dot").returncode, 0)
            names = os.listdir(d)
            self.assertIn("pool.json", names)
            self.assertEqual(len([n for n in names if n.startswith("C0_4_")]), 4)

    def test_k0_cap(self):
        r = run("count", "--k0", "11")
        self.assertEqual(r.returncode, 2)
        self.assertIn("error", r.stderr)


class Dims(unittest.TestCase):
    def test_default(self):
        r = run("dims")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout, "k,count,rank,classical\n2,1,1,1\n4,4,4,5\n6,25,25,51\n")

    def test_other_n(self):
        r = run("dims", "--N", "3", "--max-points", "4")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("N=4", r.stderr)


class Verify(unittest.TestCase):
    def test_words(self):
        r = run("verify", "--suite", "words")
        self.assertEqual(r.returncode, 0, r.stdout)
        self.assertTrue(all(line.startswith("PASS") for line in r.stdout.splitlines()[:-1]))

    def test_identities(self):
        r = run("verify", "--suite", "identities")
        self.assertEqual(r.returncode, 0, r.stdout)
        self.assertIn("PASS A1", r.stdout)

    def test_unknown_suite(self):
        self.assertNotEqual(run("verify", "--suite", "nope").returncode, 0)


class Eval(unittest.TestCase):
    def entries(self, r):
        self.assertEqual(r.returncode, 0, r.stderr)
        return json.loads(r.stdout)

    def test_edge_with_tau(self):
        t = self.entries(run("eval", "--input", os.path.join(DATA, "edge.json"), "--A", "tau", "--N", "4"))
        self.assertEqual((t["N"], t["k"], t["l"]), (4, 1, 1))
        values = {(r, c): v for v, r, c in t["entries"]}
        self.assertEqual(len(values), 16)
        self.assertEqual(values[(0, 0)], "1/2")
        self.assertEqual(values[(0, 1)], "-1/2")

    def test_edge_matches_tau_vector(self):
        a = self.entries(run("eval", "--input", os.path.join(DATA, "edge.json")))
        b = self.entries(run("eval", "--input", os.path.join(DATA, "tau4.json")))
        self.assertEqual(a, b)

    def test_matrix_file(self):
        t = self.entries(run("eval", "--input", os.path.join(DATA, "edge.json"), "--A", os.path.join(DATA, "tau3_matrix.json")))
        self.assertEqual(t["N"], 3)
        r = run("eval", "--input", os.path.join(DATA, "edge.json"), "--A", os.path.join(DATA, "tau3_matrix.json"), "--N", "4")
        self.assertEqual(r.returncode, 2)

    def test_partition(self):
        t = self.entries(run("eval", "--input", os.path.join(DATA, "pair.json"), "--N", "3"))
        self.assertEqual(len(t["entries"]), 3)

    def test_hat(self):
        t = self.entries(run("eval", "--input", os.path.join(DATA, "singletons4.json"), "--N", "4", "--hat"))
        self.assertEqual(len(t["entries"]), 24)

    def test_stdin(self):
        with open(os.path.join(DATA, "pair.json")) as fh:
            t = self.entries(run("eval", "--input", "-", "--N", "2", stdin=fh.read()))
        self.assertEqual(len(t["entries"]), 2)

    def test_schema_error(self):
        r = run("eval", "--input", os.path.join(DATA, "bad_edge.json"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("/edges/1", r.stderr)

    def test_tensor_cap(self):
        env = dict(os.environ, D4_TENSOR_CAP="10")
        r = run("eval", "--input", os.path.join(DATA, "singletons4.json"), "--N", "4", env=env)
        self.assertEqual(r.returncode, 2)
        self.assertIn("error", r.stderr)


class ExportDot(unittest.TestCase):
    def test_x13(self):
        r = run("export-dot", "--input", os.path.join(DATA, "x13.json"), "--name", "X13")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertTrue(r.stdout.startswith('graph "X13" {'))
        self.assertIn("fillcolor=white", r.stdout)
        self.assertIn("fillcolor=black", r.stdout)
        for label in ("a1", "b1", "b2", "b3"):
            self.assertIn(f'label="{label}"', r.stdout)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0], "-v"])
