import random
from fractions import Fraction as F

import pytest

from gtsreal.cli import main
from gtsreal.lines import FB
from gtsreal.queries import GRAMMAR, ParseError, parse
from gtsreal.report import Caps, corpus_verify, run


class TestParse:
    def test_spec_example(self):
        doc = parse("set A = union(interval(closed 0, open 1), point 2); "
                    "query boundedness A")
        assert len(doc.queries) == 1
        assert "A" in doc.sets

    def test_ball_query(self):
        doc = parse("query ball rho_S at 0 radius 1/2")
        rep = run(doc)
        assert rep.records[0].status == "ok"
        assert rep.records[0].detail == "[0, 1/2)"

    def test_unknown_identifier_diagnostic(self):
        with pytest.raises(ParseError) as e:
            parse("query boundedness MISSING")
        assert "unknown identifier" in str(e.value)
        assert "1:" in str(e.value)

    def test_duplicate_declaration(self):
        with pytest.raises(ParseError):
            parse("set A = empty; set A = reals")

    def test_comments_and_newlines(self):
        doc = parse("# heading\nset A = reals  # trailing\nquery subset A A\n")
        assert len(doc.queries) == 1

    def test_round_trip(self):
        text = """
set A = union(interval(closed 0, open 1), point 2)
set B = complement(A)
family F = periodic(interval(open 0, open 2), 1, all)
metric M = conj(rho_S)
bornology N = nat_bounded
map G = affine(2, 1)
query boundedness A
query subset A B
query ess_finite_on F A
query eval M 0 1/2
query chain_check d_n N delta 1/2 upto 8
"""
        doc = parse(text)
        doc2 = parse(doc.print())
        assert doc == doc2
        assert doc2.print() == doc.print()

    def test_round_trip_generated(self):
        rng = random.Random(3)
        pieces = ["set S%d = interval(%s %d, %s %d)" % (
            i, rng.choice(["open", "closed"]), rng.randint(-5, 0),
            rng.choice(["open", "closed"]), rng.randint(1, 6))
            for i in range(6)]
        pieces += ["query equal S0 S1", "query union_of finite(S2, S3)",
                   "query sample S4 from -2 to 2 step 1/2"]
        doc = parse("\n".join(pieces))
        assert parse(doc.print()) == doc


class TestRun:
    def test_chain_examples(self):
        text = """
bornology SYM = schema(closed affine(-1, -1), closed affine(1, 1))
bornology UBS = schema(open -inf, open affine(0, 1))
query chain_check d_n SYM delta 1/2 upto 64
query chain_check d_n_plus SYM delta 1/8 upto 64
query chain_check d_n_plus UBS delta 1/2 upto 64
"""
        rep = run(parse(text))
        assert [r.status for r in rep.records] == ["ok"] * 3
        assert rep.records[0].detail.startswith("pass")
        assert rep.records[1].detail.startswith("fail_at(1)")
        assert rep.records[2].detail.startswith("pass")

    def test_empty_doc(self):
        rep = run(parse(""))
        assert rep.records == ()
        assert rep.failures == 0 and rep.passes == 0

    def test_float_mode_ball_is_per_query_error(self):
        text = ("metric D = float_paper(d_n_plus)\n"
                "query ball D at 0 radius 1\n"
                "query eval D 0 1\n")
        rep = run(parse(text))
        assert rep.records[0].status == "error"
        assert "UnsupportedCombination" in rep.records[0].detail
        assert rep.records[1].status == "ok"

    def test_more_queries(self):
        text = """
set A = tail(left, interval(open 0, open 1/2), 1, 0)
query contains A -3/4
query normalize A
query sm_member standard/uf A
query pt_of standard/lom
query full_ring reals of (interval(closed 0, open 1), interval(closed 1, open 2))
query metrizable standard/lst nat_bounded d_n
query topology_of conj(rho_u)
"""
        rep = run(parse(text))
        assert all(r.status == "ok" for r in rep.records)
        detail = {r.kind: r.detail for r in rep.records}
        assert detail["contains"] == "true"
        assert detail["pt_of"] == "standard/lst"
        assert detail["metrizable"] == "CONSISTENT"
        assert detail["topology_of"] == "lower"


class TestCorpus:
    def test_default_battery_green(self):
        rep = corpus_verify(Caps(chain_n=16))
        assert rep.failures == 0
        assert rep.passes == len(rep.records) > 150

    def test_determinism(self):
        a = corpus_verify(Caps(chain_n=8)).machine_text()
        b = corpus_verify(Caps(chain_n=8)).machine_text()
        assert a == b

    def test_negative_control_corrupted_sm_table(self):
        rep = corpus_verify(Caps(chain_n=8),
                            sm_override={"standard/lom": FB})
        bad = [r for r in rep.records if r.status == "fail"]
        assert bad
        assert any(r.ident == "identity/standard/lom" for r in bad)
        # the corruption is localized: other identity entries stay green
        assert any(r.ident == "identity/standard/lst" and r.status == "pass"
                   for r in rep.records)


class TestMain:
    def test_print_grammar(self, capsys):
        assert main(["print-grammar"]) == 0
        assert "SET:" in capsys.readouterr().out

    def test_eval_file(self, tmp_path, capsys):
        f = tmp_path / "doc.gts"
        f.write_text("query ball rho_S at 0 radius 1/2\n", encoding="utf-8")
        assert main(["eval", str(f)]) == 0
        out = capsys.readouterr().out
        assert "[0, 1/2)" in out

    def test_eval_machine_report(self, tmp_path):
        f = tmp_path / "doc.gts"
        f.write_text("query eval rho_S 0 1/2\nquery eval rho_S 1/2 0\n",
                     encoding="utf-8")
        out = tmp_path / "report.txt"
        assert main(["--format", "machine", "--report", str(out),
                     "eval", str(f)]) == 0
        text = out.read_text(encoding="utf-8")
        assert text.startswith("gtsreal-report-v1")
        assert "q000|eval|ok|1/2" in text
        assert "q001|eval|ok|1" in text

    def test_parse_error_exit_code(self, tmp_path, capsys):
        f = tmp_path / "bad.gts"
        f.write_text("query frobnicate", encoding="utf-8")
        assert main(["eval", str(f)]) == 2
        assert "parse error" in capsys.readouterr().err
