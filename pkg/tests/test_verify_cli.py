import json

import pytest

from sl2char3.cli import main
from sl2char3.exprs import ParseError, parse_module_expr
from sl2char3.gf import make_field
from sl2char3.modules import ModuleParams
from sl2char3 import verify

F3 = make_field(1)
F9 = make_field(2)


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------

def test_parse_basic_forms():
    assert parse_module_expr("T(1,1,0)", F3).kind == "T"
    assert parse_module_expr("One", F3).kind == "One"
    assert parse_module_expr(" Tt( 2 , 2 , 0 ) ", F3).bcd == (2, 2, 0)
    d = parse_module_expr("Dual(Tt(2,2,0))", F3)
    assert d.kind == "Dual" and d.inner.kind == "Tt"


def test_parse_extension_literals():
    p = parse_module_expr("T([0,1],1,0)", F9)
    assert p.bcd == (F9.from_digits([0, 1]), 1, 0)


def test_parse_excluded_point_cites_reason():
    with pytest.raises(ParseError) as exc:
        parse_module_expr("T(0,0,1)", F3)
    assert "excluded" in str(exc.value)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_module_expr("T(1,1", F3)
    assert "position" in str(exc.value)


def test_parse_trailing_garbage():
    with pytest.raises(ParseError):
        parse_module_expr("One junk", F3)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def test_module_count_gf3():
    mods = verify.gf_module_list(F3)
    assert len(mods) == 29
    pairs = list(verify.all_pairs(mods))
    assert len(pairs) == 435


def test_run_pair_record_fields():
    rec = verify.run_pair(ModuleParams.two(), ModuleParams.two(), 1)
    assert rec["match"] is True
    assert rec["case"] == "thm:2"
    assert rec["lemma_ok"] is True
    assert "wall_ms" not in rec


def test_sample_pairs_deterministic():
    a = verify.sample_pairs(F9, 30, 7)
    b = verify.sample_pairs(F9, 30, 7)
    assert [(l.text(), r.text()) for l, r in a] == \
           [(l.text(), r.text()) for l, r in b]
    c = verify.sample_pairs(F9, 30, 8)
    assert [(l.text(), r.text()) for l, r in a] != \
           [(l.text(), r.text()) for l, r in c]


def test_sweep_report_byte_stable(tmp_path):
    mods = verify.gf_module_list(F3)[:8]
    pairs = list(verify.all_pairs(mods))
    rep1 = verify.sweep(pairs, 1)
    rep2 = verify.sweep(pairs, 1)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    verify.dump_report(rep1, p1)
    verify.dump_report(rep2, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_sweep_jobs_independent():
    mods = verify.gf_module_list(F3)[:8]
    pairs = list(verify.all_pairs(mods))
    rep1 = verify.sweep(pairs, 1, jobs=1)
    rep2 = verify.sweep(pairs, 1, jobs=2)
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)


def test_hitting_set_covers_gf3_rows():
    pairs = verify.hitting_set(F3, per_row=1)
    seen = set()
    from sl2char3 import oracle
    for l, r in pairs:
        seen.add(oracle.classify(l, r).text())
    assert "thm:2" in seen and "t2:c=0;d=0;b=0" in seen
    assert len(seen) == len(pairs)  # one pair per row at per_row=1


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_decompose_match(capsys):
    code = main(["decompose", "Two", "Two"])
    out = capsys.readouterr().out
    assert code == 0
    assert "match:   yes" in out


def test_cli_decompose_json(capsys):
    code = main(["decompose", "Two", "T(0,0,0)", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["match"] is True
    assert out["case"] == "t2:c=0;d=0;b=0"
    assert "glue" in out["engine"]


def test_cli_decompose_engine_only(capsys):
    code = main(["decompose", "Two", "Two", "--engine-only"])
    out = capsys.readouterr().out
    assert code == 0 and "oracle" not in out


def test_cli_usage_error(capsys):
    code = main(["decompose", "T(0,0,1)", "Two"])
    err = capsys.readouterr().err
    assert code == 2 and "excluded" in err


def test_cli_autolift_notice(capsys):
    code = main(["decompose", "Two", "T(2,1,0)", "--field", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "lifted to GF(3^2)" in out


def test_cli_verify_table_scope_and_report(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main(["verify", "--field", "1", "--scope", "table:t3",
                 "--out", str(out)])
    assert code == 0
    rep = verify.load_report(out)
    assert rep["mismatch_count"] == 0
    assert all(r["case"].startswith("t3") for r in rep["pairs"])

    code = main(["report", str(out), "--out-dir", str(tmp_path / "figs")])
    captured = capsys.readouterr()
    assert code == 0
    assert "row coverage" in captured.out
    assert (tmp_path / "figs" / "pairs.csv").exists()
    assert (tmp_path / "figs" / "row_coverage.png").exists()


def test_cli_report_missing_file(capsys):
    code = main(["report", "/nonexistent/file.json"])
    assert code == 2


def test_cli_tables_json(capsys):
    code = main(["tables", "--emit", "json"])
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    rows = [json.loads(line) for line in out]
    assert {"table", "path", "decomposition"} <= set(rows[0])


def test_cli_paper_literal_mismatch_exits_nonzero(capsys):
    code = main(["decompose", "Tt(1,1,0)", "T(1,2,0)", "--paper-literal"])
    out = capsys.readouterr().out
    assert code == 1
    assert "match:   NO" in out


def test_env_extension_cap(monkeypatch):
    monkeypatch.setenv("SL2_MAX_EXT_DEGREE", "1")
    from sl2char3.engine import EngineError, decompose_with_lift
    with pytest.raises(EngineError):
        decompose_with_lift(ModuleParams.two(),
                            ModuleParams.T(F3, 2, 1, 0), F3)
    monkeypatch.delenv("SL2_MAX_EXT_DEGREE")
