import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import scipy.linalg

from isoforms.config.settings import Settings
from isoforms.controller.cli_controller import (
    EXIT_AMBIGUOUS,
    EXIT_FAILURE,
    EXIT_INPUT,
    EXIT_NOT_IN_GROUP,
    EXIT_OK,
    handle_exception,
    run,
)
from isoforms.errors import DegenerateSpan, InternalInconsistency, NotProper
from isoforms.geometry.normal_form import boost, rotation

GLIDE = json.dumps({"space": "euclidean", "n": 2, "matrix": [[-1, 0, 5], [0, 1, 2], [0, 0, 1]]})


class TestCli(unittest.TestCase):
    def setUp(self):
        self.settings = Settings(_env_file=None)

    def invoke(self, *argv: str) -> tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            status = run(list(argv), self.settings)
        return status, out.getvalue(), err.getvalue()

    def test_count(self):
        status, out, _ = self.invoke("count", "--space", "hyperbolic", "--n", "3")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("11 classes", out)
        status, out, _ = self.invoke("--json", "count", "--space", "hyperbolic", "--n", "3")
        payload = json.loads(out)
        self.assertEqual(payload["total"], 11)
        self.assertEqual(payload["by_kind"], {"elliptic": 6, "parabolic": 2, "hyperbolic": 3})

    def test_enumerate(self):
        status, out, _ = self.invoke("enumerate", "--space", "spherical", "--n", "1")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual([line.split("\t")[0] for line in out.splitlines()], ["[2]", "[1,1]", "[(1 1)]"])

    def test_reconstruct(self):
        status, out, _ = self.invoke("reconstruct", "--space", "spherical", "--n", "3", "--d", "1;0,0")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out.strip(), "[(1 1),2]")

    def test_reconstruct_ambiguous(self):
        """A prefix shared by several symbols exits with status 4."""
        status, _, err = self.invoke("reconstruct", "--space", "euclidean", "--n", "3", "--d", "[-1]")
        self.assertEqual(status, EXIT_AMBIGUOUS)
        self.assertIn("error:", err)

    def test_varieties(self):
        status, out, _ = self.invoke(
            "varieties", "--space", "hyperbolic", "--n", "3", "--symbol", "[p;4;0]", "--k", "2"
        )
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out.strip(), "Gamma(2) = E^1  [1]")

    def test_classify_payload(self):
        status, out, _ = self.invoke("classify", "--payload", GLIDE)
        self.assertEqual(status, EXIT_OK)
        self.assertIn("segre: [h;1;1]", out)
        self.assertIn("translation_length: 2", out)

    def test_classify_json(self):
        status, out, _ = self.invoke("--json", "classify", "-p", GLIDE)
        report = json.loads(out)
        self.assertEqual(report["segre"], "[h;1;1]")
        self.assertEqual(report["type"], "hyperbolic")
        self.assertEqual(len(report["conjugator"]), 3)

    def reclassify(self, command: str, payload: str) -> None:
        status, out, _ = self.invoke("--json", command, "-p", payload)
        self.assertEqual(status, EXIT_OK)
        report = json.loads(out)
        document = json.loads(payload)
        again = json.dumps({**document, "matrix": report["normal_form_matrix"]})
        status, out, _ = self.invoke("--json", command, "-p", again)
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out)["segre"], report["segre"])

    def test_normal_form_matrix_classifies_the_same(self):
        documents = [
            {"space": "spherical", "n": 2, "matrix": scipy.linalg.block_diag(rotation(0.7), 1.0).tolist()},
            json.loads(GLIDE),
            {"space": "hyperbolic", "n": 3, "matrix": scipy.linalg.block_diag(boost(0.9), rotation(1.3)).tolist()},
        ]
        for document in documents:
            with self.subTest(space=document["space"]):
                self.reclassify("classify", json.dumps(document))
        improper = json.dumps({"space": "hyperbolic", "n": 1, "matrix": [[-1, 0], [0, 1]]})
        self.reclassify("normal-form", improper)

    def test_tables_json(self):
        status, out, _ = self.invoke("--json", "tables")
        self.assertEqual(status, EXIT_OK)
        tables = json.loads(out)
        first = tables[0]
        self.assertEqual((first["space"], first["n"]), ("spherical", 1))
        sphere = next(t for t in tables if (t["space"], t["n"]) == ("spherical", 3))
        self.assertEqual(sphere["records"][0]["varieties"], ["P^3", "Gr(2,R^4)", "P^3"])

    def test_classify_bare_matrix_from_file(self):
        """A bare matrix takes its space from the flags and n from its size."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, "m.json")
            path.write_text("[[0, -1, 0], [1, 0, 0], [0, 0, 1]]", encoding="utf-8")
            status, out, _ = self.invoke("classify", "--space", "spherical", "--input", str(path))
        self.assertEqual(status, EXIT_OK)
        self.assertIn("segre: [(1 1),1]", out)

    def test_input_errors(self):
        cases = [
            ("classify", "-p", "{not json"),
            ("classify", "-p", json.dumps({"space": "spherical", "n": 2, "matrix": [[1, 0], [0, 1]]})),
            ("reconstruct", "--space", "spherical", "--n", "3", "--d", "[x]"),
            ("varieties", "--space", "euclidean", "--n", "3", "--symbol", "[e;1;2", "--k", "1"),
            ("varieties", "--space", "euclidean", "--n", "3", "--symbol", "[e;1;2]", "--k", "7"),
            ("count", "--space", "euclidean", "--n", "0"),
            ("classify", "--space", "spherical", "-i", "/nonexistent/matrix.json"),
        ]
        for argv in cases:
            with self.subTest(argv=argv):
                self.assertEqual(self.invoke(*argv)[0], EXIT_INPUT)

    def test_not_in_group(self):
        payload = json.dumps({"space": "spherical", "n": 1, "matrix": [[1, 0.1], [0, 1]]})
        self.assertEqual(self.invoke("classify", "-p", payload)[0], EXIT_NOT_IN_GROUP)

    def test_improper_lorentz(self):
        """classify rejects a time-reversing matrix, normal-form negates it."""
        payload = json.dumps({"space": "hyperbolic", "n": 1, "matrix": [[-1, 0], [0, 1]]})
        self.assertEqual(self.invoke("classify", "-p", payload)[0], EXIT_NOT_IN_GROUP)
        status, out, _ = self.invoke("normal-form", "-p", payload)
        self.assertEqual(status, EXIT_OK)
        self.assertIn("proper: false", out)

    def test_tables_round_trip(self):
        """Freshly written tables pass the check; an edited row fails it."""
        with tempfile.TemporaryDirectory() as tmp:
            status, out, _ = self.invoke("tables", "--output-dir", tmp)
            self.assertEqual(status, EXIT_OK)
            self.assertEqual(len(out.splitlines()), 10)
            text = Path(tmp, "spherical-3.tsv").read_text(encoding="utf-8")
            self.assertTrue(text.startswith("[4]\tI4\t[3;4;3]\tP^3\tGr(2,R^4)\tP^3\n"))
            self.assertEqual(self.invoke("tables", "--output-dir", tmp, "--check")[0], EXIT_OK)

            Path(tmp, "spherical-3.tsv").write_text(text.replace("[3;4;3]", "[2;4;2]"), encoding="utf-8")
            status, out, _ = self.invoke("tables", "--output-dir", tmp, "--check")
            self.assertEqual(status, EXIT_FAILURE)
            self.assertIn("spherical-3", out)

    def test_unexpected_errors_exit_one(self):
        with redirect_stderr(io.StringIO()):
            self.assertEqual(handle_exception(RuntimeError("boom")), EXIT_FAILURE)
            self.assertEqual(handle_exception(NotProper("reversed")), EXIT_NOT_IN_GROUP)

    def test_tolerance_failures_exit_ambiguous(self):
        for exc in (InternalInconsistency("sdim 2 != multiplicity 3"), DegenerateSpan("light-like span")):
            err = io.StringIO()
            with redirect_stderr(err):
                self.assertEqual(handle_exception(exc), EXIT_AMBIGUOUS)
            self.assertIn(f"error: {exc}\n", err.getvalue())


if __name__ == "__main__":
    unittest.main()
