import csv
import io
import json

import numpy as np
import pytest

from ucframes import linalg
from ucframes.battery import SIGN_NOTE, run_battery, spectrum_csv
from ucframes.cli import main
from ucframes.controlled import ControlledSystem, controlled_gram
from ucframes.errors import NotInvertibleError, ParseError, ShapeError
from ucframes.frames import FrameFamily
from ucframes.generators import gen_example24, gen_random_system
from ucframes.io import load_system, parse_document, read_document, save_system, system_to_document
from ucframes.riesz import riesz_diagnose


def write(tmp_path, doc, name="sys.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


class TestLoad:
    def test_canonical_defaults(self, tmp_path):
        s = load_system(write(tmp_path, {"dim": 2, "vectors": [[1, 0], [0, 1]]}))
        np.testing.assert_array_equal(s.family.vectors, np.eye(2))
        np.testing.assert_array_equal(s.U.matrix, np.eye(2))
        np.testing.assert_array_equal(s.C.matrix, np.eye(2))

    def test_pairs(self, tmp_path):
        doc = {"dim": 1, "vectors": [[[1, 2]]], "U": [[[0, 3]]], "tolerances": {"tol": 1e-8}, "seed": 4}
        d = read_document(write(tmp_path, doc))
        assert d.system.family.vectors[0, 0] == 1 + 2j
        assert d.system.U.matrix[0, 0] == 3j
        assert d.tol == 1e-8 and d.seed == 4

    def test_singular_u(self, tmp_path):
        with pytest.raises(NotInvertibleError):
            load_system(write(tmp_path, {"dim": 2, "vectors": [[1, 0], [0, 1]], "U": [[1, 0], [0, 0]]}))

    @pytest.mark.parametrize(
        "doc",
        [
            [1, 2],
            {"dim": 2},
            {"dim": 2, "vectors": [[1, 0], [0]]},
            {"dim": 2, "vectors": [["a", 0]]},
            {"dim": "2", "vectors": [[1, 0]]},
            {"dim": 2, "vectors": [[1, 0]], "seed": 1.5},
            {"dim": 2, "vectors": [[1, 0]], "tolerances": {"tol": "x"}},
        ],
    )
    def test_parse_errors(self, doc):
        with pytest.raises(ParseError):
            parse_document(doc)

    def test_nan_rejected(self, tmp_path):
        p = tmp_path / "nan.json"
        p.write_text('{"dim": 1, "vectors": [[NaN]]}')
        with pytest.raises(ParseError):
            load_system(p)

    def test_bad_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        with pytest.raises(ParseError):
            load_system(p)

    @pytest.mark.parametrize(
        "doc",
        [
            {"dim": 3, "vectors": [[1, 0], [0, 1]]},
            {"dim": 2, "vectors": [[1, 0], [0, 1]], "C": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        ],
    )
    def test_shape_errors(self, doc):
        with pytest.raises(ShapeError):
            parse_document(doc)

    def test_round_trip_bit_exact(self, tmp_path):
        for seed in range(5):
            s = gen_random_system(4, 6, seed)
            doc = system_to_document(s, {"tol": 1e-9}, seed)
            p = write(tmp_path, doc)
            q = tmp_path / "again.json"
            d = read_document(p)
            save_system(d.system, q, d.tolerances, d.seed)
            assert json.loads(q.read_text()) == json.loads(p.read_text())
            s2 = load_system(q)
            for a, b in ((s.family.vectors, s2.family.vectors), (s.U.matrix, s2.U.matrix), (s.C.matrix, s2.C.matrix)):
                assert np.array_equal(a, b)


class TestGenerators:
    def test_example24_one_block(self):
        s = gen_example24(1)
        np.testing.assert_array_equal(s.family.vectors, [[1, -1], [1, 1]])
        np.testing.assert_array_equal(s.C.matrix, np.diag([-1, 1]))
        np.testing.assert_array_equal(s.U.matrix, np.diag([1, -1]))

    def test_example24_two_blocks(self):
        g = controlled_gram(gen_example24(2))
        np.testing.assert_array_equal(g.G, -2 * np.eye(4))
        assert g.op_norm == 2

    def test_example24_large(self):
        s = gen_example24(32)
        assert s.dim == 64 and s.n == 64
        assert abs(controlled_gram(s).op_norm - 2) <= 1e-9
        assert run_battery(s)["controlled"]["magnitude_tight"]

    def test_example24_rejects_zero(self):
        with pytest.raises(ValueError):
            gen_example24(0)

    @pytest.mark.parametrize("mode", ["general", "commuting_positive", "riesz_spec"])
    def test_deterministic(self, mode):
        a, b = gen_random_system(4, 5, 17, mode), gen_random_system(4, 5, 17, mode)
        assert np.array_equal(a.family.vectors, b.family.vectors)
        assert np.array_equal(a.U.matrix, b.U.matrix) and np.array_equal(a.C.matrix, b.C.matrix)
        c = gen_random_system(4, 5, 18, mode)
        assert not np.array_equal(a.family.vectors, c.family.vectors)

    def test_commuting_positive(self):
        s = gen_random_system(5, 8, 3, "commuting_positive")
        assert s.U.is_positive and s.C.is_positive
        assert linalg.commutator_norm(s.U.matrix, s.C.matrix) <= 1e-12

    def test_riesz_spec(self):
        s = gen_random_system(4, 9, 3, "riesz_spec")
        assert s.n == 4
        assert riesz_diagnose(s).is_controlled_riesz

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            gen_random_system(2, 2, 0, "bogus")


class TestBattery:
    def test_canonical(self):
        r = run_battery(ControlledSystem(FrameFamily.canonical(3)))
        assert r["classification"]["is_frame"]
        assert r["controlled"]["is_controlled_frame"]
        assert r["riesz"]["is_controlled_riesz"]
        assert r["verdict"]["exit_status"] == 0

    def test_example24(self):
        r = run_battery(gen_example24(2))
        assert r["controlled"]["magnitude_tight"] and not r["controlled"]["is_controlled_frame"]
        assert r["controlled"]["sign_discrepancy"]
        assert SIGN_NOTE in r["notes"]
        assert r["verdict"]["exit_status"] == 1

    def test_redundant(self, three_vectors):
        r = run_battery(ControlledSystem(three_vectors))
        assert r["classification"]["is_frame"] and not r["riesz"]["is_controlled_riesz"]
        assert r["verdict"]["negative"] == ["controlled_riesz"]

    def test_every_section_carries_tolerance(self):
        r = run_battery(gen_random_system(3, 3, 1, "riesz_spec"), tol=1e-8)
        for key in ("classification", "controlled", "gram", "schatten", "riesz"):
            assert r[key]["tolerance"] == 1e-8

    def test_deterministic_and_json_safe(self):
        s = gen_random_system(4, 6, 9)
        a = json.dumps(run_battery(s, seed=9), allow_nan=False)
        b = json.dumps(run_battery(gen_random_system(4, 6, 9), seed=9), allow_nan=False)
        assert a == b

    def test_recomputable_from_document(self, tmp_path):
        s = gen_random_system(3, 5, 2, "commuting_positive")
        r = run_battery(s, 1e-9, 2)
        p = write(tmp_path, system_to_document(s, {"tol": 1e-9}, 2))
        d = read_document(p)
        again = run_battery(d.system, d.tol, d.seed)
        assert again == r
        assert again["input_digest"] == r["input_digest"]

    def test_spectrum_csv(self, three_vectors):
        rows = list(csv.DictReader(io.StringIO(spectrum_csv(ControlledSystem(three_vectors)))))
        frame = [float(r["value"]) for r in rows if r["quantity"] == "frame_operator_eigenvalue"]
        assert frame == pytest.approx([1, 3])
        sv = [float(r["value"]) for r in rows if r["quantity"] == "controlled_gram_singular_value"]
        assert sv == pytest.approx([3, 1, 0], abs=1e-12)


class TestCli:
    def run(self, capsys, *argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_example24_then_diagnose(self, tmp_path, capsys):
        code, out, _ = self.run(capsys, "example24", "--blocks", 2)
        assert code == 0
        p = tmp_path / "ex.json"
        p.write_text(out)
        rep, csv_path = tmp_path / "rep.json", tmp_path / "spec.csv"
        code, _, err = self.run(capsys, "diagnose", p, "--report", rep, "--spectrum-csv", csv_path)
        assert code == 1
        r = json.loads(rep.read_text())
        assert r["controlled"]["sign_discrepancy"] and r["gram"]["op_norm"] == 2
        assert "controlled_frame" in err
        assert csv_path.read_text().startswith("quantity,index,value")

    def test_reports_differ_only_in_timestamp(self, tmp_path, capsys):
        p = write(tmp_path, system_to_document(gen_random_system(3, 4, 5)))
        _, a, _ = self.run(capsys, "diagnose", p)
        _, b, _ = self.run(capsys, "diagnose", p)
        ra, rb = json.loads(a), json.loads(b)
        ra.pop("generated_at"), rb.pop("generated_at")
        assert json.dumps(ra) == json.dumps(rb)

    def test_canonical_exit_zero(self, tmp_path, capsys):
        p = write(tmp_path, {"dim": 2, "vectors": [[1, 0], [0, 1]]})
        assert self.run(capsys, "diagnose", p)[0] == 0

    def test_input_errors_exit_two(self, tmp_path, capsys):
        p = write(tmp_path, {"dim": 2, "vectors": [[1, 0], [0, 1]], "U": [[1, 0], [0, 0]]})
        code, _, err = self.run(capsys, "diagnose", p)
        assert code == 2 and "not invertible" in err
        assert self.run(capsys, "gram", tmp_path / "missing.json")[0] == 2
        with pytest.raises(SystemExit) as exc:
            main(["dual", str(p), "--type", "3"])
        assert exc.value.code == 2

    def test_gram(self, tmp_path, capsys):
        p = write(tmp_path, system_to_document(gen_example24(2)))
        code, out, _ = self.run(capsys, "gram", p)
        g = json.loads(out)
        assert code == 0 and g["op_norm"] == 2 and g["G"][0][0] == [-2.0, 0.0]

    def test_riesz(self, tmp_path, capsys):
        p = write(tmp_path, {"vectors": [[1, 0], [0, 1], [1, 1]]})
        code, out, _ = self.run(capsys, "riesz", p)
        assert code == 1 and not json.loads(out)["gram_invertible"]

    @pytest.mark.parametrize("kind", [1, 2])
    def test_gen_and_dual(self, tmp_path, capsys, kind):
        code, out, _ = self.run(capsys, "gen", "--dim", 4, "--count", 4, "--seed", 7, "--mode", "riesz_spec")
        assert code == 0
        p = tmp_path / "s.json"
        p.write_text(out)
        dual_path = tmp_path / "d.json"
        assert self.run(capsys, "dual", p, "--type", kind, "--report", dual_path)[0] == 0
        s, g = load_system(p), load_system(dual_path)
        f = np.random.default_rng(0).standard_normal(4)
        if kind == 1:
            rec = s.family.vectors.T @ (g.family.vectors.conj() @ f)
        else:
            ug = s.U.matrix @ g.family.vectors.T
            rec = s.C.matrix @ s.family.vectors.T @ (ug.conj().T @ f)
        np.testing.assert_allclose(rec, f, atol=1e-9)

    def test_dual_refuses_redundant(self, tmp_path, capsys):
        p = write(tmp_path, {"vectors": [[1, 0], [0, 1], [1, 1]]})
        assert self.run(capsys, "dual", p)[0] == 1

    def test_tol_override(self, tmp_path, capsys):
        p = write(tmp_path, {"vectors": [[1, 0], [0, 1]], "tolerances": {"tol": 1e-6}})
        _, out, _ = self.run(capsys, "diagnose", p)
        assert json.loads(out)["tolerance"] == 1e-6
        _, out, _ = self.run(capsys, "diagnose", p, "--tol", 1e-7)
        assert json.loads(out)["tolerance"] == 1e-7

    def test_gen_rejects_bad_dims(self, capsys):
        assert self.run(capsys, "gen", "--dim", 0, "--count", 1)[0] == 2
