import json

import pytest

from ccvar import cli, io, suite
from ccvar.balg import BooleanAlgebra
from ccvar.bset import conditioned_disjunction, terminal_bset
from ccvar.certificate import Certificate
from ccvar.matched import b_as_bmset, extract_from_endos, m_as_bmset, terminal_bmset

E2 = extract_from_endos(2)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(io.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


class TestCheck:
    def test_valid_pair(self, tmp_path, capsys):
        f = write(tmp_path, "pair.json", io.dump(E2))
        code, rep, _ = run(capsys, "check", f)
        assert code == 0 and rep["status"] == "pass" and rep["failures"] == []

    def test_mutated_pair(self, tmp_path, capsys):
        d = io.dump(E2)
        d["bset_on_m"][1][0][1] = (d["bset_on_m"][1][0][1] + 1) % 4
        code, rep, _ = run(capsys, "check", write(tmp_path, "bad.json", d))
        assert code == 1 and rep["status"] == "fail" and rep["failures"]
        for c in rep["checks"]:
            if c["status"] == "fail":
                assert c["witnesses"]

    def test_mutated_star(self, tmp_path, capsys):
        d = io.dump(E2)
        d["m_on_b"][2][1] = 3 - d["m_on_b"][2][1]
        code, rep, _ = run(capsys, "check", write(tmp_path, "bad.json", d))
        assert code == 1 and rep["failures"]

    def test_malformed_json(self, tmp_path, capsys):
        code, rep, _ = run(capsys, "check", write(tmp_path, "x.json", "{not json"))
        assert code == 2 and rep["status"] == "error"

    def test_missing_file(self, tmp_path, capsys):
        code, rep, _ = run(capsys, "check", str(tmp_path / "nope.json"))
        assert code == 2

    def test_schema_pointer(self, tmp_path, capsys):
        d = io.dump(conditioned_disjunction(BooleanAlgebra(2)))
        d["action"][2][1][3] = "x"
        code, rep, _ = run(capsys, "check", write(tmp_path, "s.json", d))
        assert code == 2 and rep["pointer"] == "/action/2/1/3"

    def test_unknown_kind(self, tmp_path, capsys):
        code, rep, _ = run(capsys, "check", write(tmp_path, "k.json", {"kind": "widget"}))
        assert code == 2 and rep["pointer"] == "/kind"

    def test_capacity(self, tmp_path, capsys):
        f = write(tmp_path, "pair.json", io.dump(E2))
        code, rep, _ = run(capsys, "--max-atoms", "1", "check", f)
        assert code == 2 and "limit 1" in rep["error"]

    @pytest.mark.parametrize("obj", [conditioned_disjunction(BooleanAlgebra(2)), m_as_bmset(E2), b_as_bmset(E2),
                                     terminal_bmset(E2), BooleanAlgebra(3)], ids=["bset", "M", "B", "1", "bool"])
    def test_valid_objects(self, tmp_path, capsys, obj):
        code, rep, _ = run(capsys, "check", write(tmp_path, "o.json", io.dump(obj)))
        assert code == 0, rep

    def test_bad_bset(self, tmp_path, capsys):
        d = io.dump(conditioned_disjunction(BooleanAlgebra(1)))
        d["action"][1][0][1] = 1
        code, rep, _ = run(capsys, "check", write(tmp_path, "b.json", d))
        assert code == 1 and rep["failures"]

    def test_dual_op(self, tmp_path, capsys):
        op = {"kind": "dual-op", "base": 3, "arity": 2, "map": [[0, 1], [1, 1], [0, 2]]}
        code, rep, _ = run(capsys, "check", write(tmp_path, "op.json", op))
        assert code == 0

    def test_eq_family(self, tmp_path, capsys):
        X = conditioned_disjunction(BooleanAlgebra(2))
        from ccvar.bset import eqs_from_action
        code, rep, _ = run(capsys, "check", write(tmp_path, "e.json", io.dump(eqs_from_action(X))))
        assert code == 0


class TestConstruct:
    def test_extract_endos(self, tmp_path, capsys):
        out = tmp_path / "p.json"
        code, rep, _ = run(capsys, "construct", "extract-endos", "--size", "2", "--output", str(out))
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["monoid"]["size"] == 4 and 2 ** doc["boolean"]["atoms"] == 4
        assert doc["certificate"]["failures"] == []
        assert io.build({k: v for k, v in doc.items() if k != "certificate"}) == E2

    def test_decompose(self, tmp_path, capsys):
        op = {"kind": "dual-op", "base": 2, "arity": 2, "map": [[1, 0], [0, 0]]}
        code, rep, _ = run(capsys, "construct", "decompose", "-i", write(tmp_path, "op.json", op))
        assert code == 0
        res = rep["result"]
        assert res["unique"] is True and len(res["witnesses"]) == 1
        w = res["witnesses"][0]
        assert w["h"]["map"] == [[1, 0], [0, 1]] and w["m"]["map"] == [[0, 0], [0, 0]]

    def test_exp_terminal(self, tmp_path, capsys):
        Y = write(tmp_path, "y.json", io.dump(b_as_bmset(E2)))
        Z = write(tmp_path, "z.json", io.dump(terminal_bmset(E2)))
        code, rep, _ = run(capsys, "construct", "exp", "-i", Y, "-i", Z)
        assert code == 0 and rep["result"]["carrier"] == 1

    def test_exp_bset(self, tmp_path, capsys):
        B = BooleanAlgebra(1)
        Y = write(tmp_path, "y.json", io.dump(conditioned_disjunction(B)))
        Z = write(tmp_path, "z.json", io.dump(terminal_bset(B)))
        code, rep, _ = run(capsys, "construct", "exp", "-i", Z, "-i", Y)
        assert code == 0 and rep["result"]["carrier"] == 2

    def test_product(self, tmp_path, capsys):
        X = write(tmp_path, "x.json", io.dump(m_as_bmset(E2)))
        code, rep, _ = run(capsys, "construct", "product", "-i", X, "-i", X)
        assert code == 0 and rep["result"]["carrier"] == 16

    def test_free(self, tmp_path, capsys):
        P = write(tmp_path, "p.json", io.dump(E2))
        code, rep, _ = run(capsys, "construct", "free", "-i", P, "--generators", "2")
        assert code == 0 and rep["summary"]["carrier"] == 16
        Bf = write(tmp_path, "b.json", io.dump(BooleanAlgebra(2)))
        code, rep, _ = run(capsys, "construct", "free", "-i", Bf, "--generators", "3")
        assert code == 0 and rep["summary"]["carrier"] == 9

    def test_bicross(self, tmp_path, capsys):
        P = write(tmp_path, "p.json", io.dump(E2))
        code, rep, _ = run(capsys, "construct", "bicross", "-i", P)
        assert code == 0 and rep["summary"] == {"1": 4, "2": 16}

    def test_wrong_inputs(self, tmp_path, capsys):
        code, rep, _ = run(capsys, "construct", "exp")
        assert code == 2
        X = write(tmp_path, "x.json", io.dump(m_as_bmset(E2)))
        B1 = write(tmp_path, "b.json", io.dump(conditioned_disjunction(BooleanAlgebra(2))))
        code, rep, _ = run(capsys, "construct", "product", "-i", X, "-i", B1)
        assert code == 2

    def test_capacity_message(self, capsys):
        code, rep, _ = run(capsys, "construct", "extract-endos", "--size", "5")
        assert code == 2 and "exceeds the configured limit 4" in rep["error"]


class TestSuite:
    def test_quick_passes_and_is_deterministic(self, capsys, monkeypatch):
        # a trimmed criteria table keeps this test fast; the real one runs in test_acceptance
        small = (
            (1, "one", lambda level: suite.criterion_bset_duality(max_atoms=1, max_carrier=2)),
            (4, "four", lambda level: suite.criterion_boolean_extraction(sizes=(2,), max_arity=1)),
        )
        monkeypatch.setattr(suite, "CRITERIA", small)
        code, rep, a = run(capsys, "suite", "--level", "quick")
        _, _, b = run(capsys, "suite", "--level", "quick")
        assert code == 0 and rep["status"] == "pass" and a == b
        assert "seconds" not in a

    def test_timing_opt_in(self, capsys, monkeypatch):
        monkeypatch.setattr(suite, "CRITERIA", ((1, "one", lambda level: Certificate("x")),))
        code, rep, _ = run(capsys, "suite", "--timing")
        assert "seconds" in rep and "seconds" in rep["criteria"][0]

    def test_injected_fault(self, capsys, monkeypatch):
        def broken(level):
            c = Certificate("fault")
            c.record("b(x,x)=x", False, (1, None, 0, None, None))
            return c

        monkeypatch.setattr(suite, "CRITERIA", ((1, "broken", broken),))
        code, rep, _ = run(capsys, "suite")
        assert code == 1 and rep["status"] == "fail"
        [crit] = rep["criteria"]
        assert crit["checks"][0]["tag"] == "b(x,x)=x" and crit["checks"][0]["witnesses"]

    def test_seed_ignored(self, tmp_path, capsys):
        f = write(tmp_path, "pair.json", io.dump(E2))
        _, _, a = run(capsys, "--seed", "1", "check", f)
        _, _, b = run(capsys, "--seed", "99", "check", f)
        assert a == b


class TestIO:
    @pytest.mark.parametrize("obj", [E2, m_as_bmset(E2), conditioned_disjunction(BooleanAlgebra(2)),
                                     E2.monoid, E2.m_on_b, BooleanAlgebra(2)],
                             ids=["pair", "bmset", "bset", "monoid", "maction", "boolean"])
    def test_roundtrip(self, obj):
        doc = io.dump(obj)
        again = io.build(json.loads(io.dumps(doc)))
        assert io.dumps(io.dump(again)) == io.dumps(doc)

    def test_canonical_text(self):
        assert io.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'
