import json
from pathlib import Path

import pytest

from posspan import digraph as dg
from posspan import fixtures as fx
from posspan import serialize as ser
from posspan.cli import FAMILIES, generate, main, selfcheck
from posspan.errors import BadParameters
from posspan.exact import format_matrix, parse_matrix
from posspan.posbasis import removal_oracle

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    return code, doc


class TestFixtureFiles:
    @pytest.mark.parametrize("name", sorted(fx.MATRIX_FILES))
    def test_matrix_files_match(self, name):
        assert parse_matrix((FIXTURES / name).read_text()) == fx.MATRIX_FILES[name]

    @pytest.mark.parametrize("name", sorted(fx.DIGRAPH_FILES))
    def test_digraph_files_match(self, name):
        assert dg.parse_digraph((FIXTURES / name).read_text()) == fx.DIGRAPH_FILES[name]

    @pytest.mark.parametrize("name", sorted(fx.TREE_FILES))
    def test_tree_files_match(self, name):
        assert dg.parse_tree((FIXTURES / name).read_text()) == fx.TREE_FILES[name]


class TestCheckPss:
    def test_m1(self, capsys):
        code, doc = run_json(capsys, "check-pss", FIXTURES / "m1.mat")
        assert code == 0 and doc["verdict"] == "pss"
        assert doc["certificate"]["kind"] == "positive-combination"
        assert ser.verify_document(doc)

    def test_m2(self, capsys):
        code, doc = run_json(capsys, "check-pss", FIXTURES / "m2.mat")
        assert code == 1 and doc["certificate"]["kind"] == "separating-vector"
        assert ser.verify_document(doc)

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "check-pss", FIXTURES / "m1.mat")
        assert code == 0 and out.startswith("verdict: pss")

    def test_malformed(self, capsys, tmp_path):
        bad = tmp_path / "bad.mat"
        bad.write_text("2 2\n1 x\n0 1\n")
        code, _, err = run(capsys, "check-pss", bad)
        assert code == 2 and "error" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "check-pss", tmp_path / "none.mat")[0] == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "cert.json"
        code, out, _ = run(capsys, "check-pss", FIXTURES / "m1.mat", "--json", "--out", target)
        assert code == 0 and out == ""
        assert ser.verify_document(json.loads(target.read_text()))


class TestDecompose:
    def test_m1(self, capsys):
        code, doc = run_json(capsys, "decompose", FIXTURES / "m1.mat")
        assert code == 0 and doc["verdict"] == "in" and doc["witness"]["ell"] == 4
        assert ser.verify_document(doc)

    def test_m2(self, capsys):
        code, doc = run_json(capsys, "decompose", FIXTURES / "m2.mat")
        assert code == 1 and doc["verdict"] == "ina" and ser.verify_document(doc)

    def test_identity(self, capsys):
        code, doc = run_json(capsys, "decompose", FIXTURES / "identity2.mat")
        assert code == 1 and doc["witness"]["ell"] == 0 and doc["witness"]["k"] == 0

    def test_zero_matrix(self, capsys, tmp_path):
        z = tmp_path / "z.mat"
        z.write_text("2 2\n0 0\n0 0\n")
        assert run(capsys, "decompose", z)[0] == 2


class TestGraph:
    def test_ears6_ears(self, capsys):
        code, doc = run_json(capsys, "graph", "ears", FIXTURES / "ears6.dg")
        assert code == 0 and len(doc["certificate"]["ears"]) == 2
        assert ser.verify_document(doc)

    def test_nsc7_cut(self, capsys):
        code, doc = run_json(capsys, "graph", "cut", FIXTURES / "nsc7.dg")
        assert code == 1 and doc["certificate"]["kind"] == "oriented-cut"
        tree = set(fx.NSC_TREE.arcs)
        assert {a for a in doc["certificate"]["arcs"] if a in tree} == set(fx.NSC_CUT_TREE_ARCS)
        assert ser.verify_document(doc)

    def test_sc5_netmat(self, capsys):
        code, out, _ = run(capsys, "graph", "netmat", FIXTURES / "sc5.dg", FIXTURES / "sc5.tree")
        assert code == 0 and parse_matrix(out) == fx.SC_NETMAT

    def test_netmat_needs_tree(self, capsys):
        assert run(capsys, "graph", "netmat", FIXTURES / "sc5.dg")[0] == 2

    def test_invalid_tree(self, capsys, tmp_path):
        t = tmp_path / "t.tree"
        t.write_text("0 1\n")
        assert run(capsys, "graph", "netmat", FIXTURES / "sc5.dg", t)[0] == 2

    def test_minimal(self, capsys):
        code, doc = run_json(capsys, "graph", "minimal", FIXTURES / "min9.dg")
        assert code == 0 and ser.verify_document(doc)
        code, doc = run_json(capsys, "graph", "minimal", FIXTURES / "ears6.dg")
        assert code == 1 and doc["certificate"]["kind"] == "removable-arc"

    def test_check(self, capsys):
        assert run(capsys, "graph", "check", FIXTURES / "sc5.dg")[0] == 0
        assert run(capsys, "graph", "check", FIXTURES / "nsc7.dg")[0] == 1

    def test_malformed_digraph(self, capsys, tmp_path):
        g = tmp_path / "g.dg"
        g.write_text("2 1\n0 0\n")
        assert run(capsys, "graph", "check", g)[0] == 2


class TestBasis:
    def test_d58(self, capsys):
        code, doc = run_json(capsys, "basis", FIXTURES / "d58.mat")
        assert code == 0 and ser.verify_document(doc)

    def test_removable(self, capsys):
        code, doc = run_json(capsys, "basis", FIXTURES / "i2_e1_1.mat")
        assert code == 1 and doc["certificate"]["kind"] == "removable-column"
        assert ser.verify_document(doc)

    def test_maximal(self, capsys):
        assert run(capsys, "basis", FIXTURES / "max3.mat")[0] == 0


class TestGenerate:
    def test_min_pb(self, capsys):
        code, out, _ = run(capsys, "generate", "min-pb", "--n", 4, "--ell", 4)
        assert code == 0
        assert out == format_matrix(parse_matrix("4 5\n1 0 0 0 -1\n0 1 0 0 -1\n0 0 1 0 -1\n0 0 0 1 -1\n"))

    def test_digraph_shared_arc(self, capsys):
        code, out, _ = run(capsys, "generate", "digraph-n-1", "--n", 5, "--overlap", 1, "--seed", 3)
        G = dg.parse_digraph(out)
        assert code == 0 and G.m == 6 and dg.is_minimally_strongly_connected(G)

    def test_seeded_pb_passes_basis(self, capsys, tmp_path):
        target = tmp_path / "pb.mat"
        code, _, _ = run(capsys, "generate", "pb-2l-1", "--ell", 4, "--n", 4, "--seed", 7, "--out", target)
        assert code == 0
        assert run(capsys, "basis", target)[0] == 0

    def test_deterministic(self, capsys):
        a = run(capsys, "generate", "pb-l-2", "--seed", 11)[1]
        b = run(capsys, "generate", "pb-l-2", "--seed", 11)[1]
        assert a == b

    def test_json_records_seed(self, capsys):
        code, doc = run_json(capsys, "generate", "digraph-2n-3", "--seed", 5)
        assert code == 0 and doc["seed"] == 5 and doc["schema"] == 1

    def test_needs_seed_or_parameters(self, capsys):
        assert run(capsys, "generate", "pb-2l-1")[0] == 2

    def test_bad_parameters(self, capsys):
        assert run(capsys, "generate", "pb-l-2", "--ell", 2, "--n", 2, "--k", 1, "--x", "1")[0] == 2
        assert run(capsys, "generate", "digraph-n-1", "--n", 4, "--overlap", 2)[0] == 2

    def test_unknown_family(self):
        with pytest.raises(BadParameters):
            generate("circle", {})

    @pytest.mark.parametrize("family", FAMILIES)
    def test_every_family(self, family):
        import random

        item = generate(family, {}, random.Random(1))
        if item.matrix is not None:
            assert removal_oracle(item.matrix)[0]
        else:
            assert dg.is_minimally_strongly_connected(item.graph)


class TestMisc:
    def test_selfcheck(self, capsys):
        assert all(ok for _, ok in selfcheck())
        code, out, _ = run(capsys, "selfcheck")
        assert code == 0 and "FAIL" not in out

    def test_usage_errors(self, capsys):
        assert run(capsys)[0] == 2
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "graph", "spin", FIXTURES / "ears6.dg")[0] == 2

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0
