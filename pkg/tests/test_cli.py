"""Command line behavior: exit codes, JSON shape, config merging."""

import json

import pytest

from alcove_hecke.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv, "--json")
    assert err == ""
    return code, json.loads(out)


def test_root_info_json(capsys):
    code, data = invoke_json(capsys, "root-info", "--type", "BC",
                             "--rank", "2")
    assert code == 0
    assert data["nonreduced"] is True
    assert len(data["positive_roots"]) == 6
    assert len(data["wall_family"]) == 4


def test_jgeom_full_node_set_reports_translations(capsys):
    code, data = invoke_json(capsys, "jgeom", "--type", "A", "--rank", "2",
                             "--J", "1,2")
    assert code == 0
    assert data["translation_group_order"] == 3
    assert data["domain_size"] == 1


def test_paths_cancellation_count(capsys):
    code, data = invoke_json(capsys, "paths", "--type", "A", "--rank", "3",
                             "--J", "1", "--word", "3,2,3,1,2,3",
                             "--theta", "")
    assert code == 0
    assert data["count"] == 5
    # the two fold masses cancel pairwise except the frozen remainder
    total = {}
    for rec in data["paths"]:
        for term in rec["mass"]:
            key = (term["q"], tuple(term["zeta"]))
            total[key] = total.get(key, 0) + term["c"]
    total = {k: v for k, v in total.items() if v}
    assert total == {(-2, (0, 0)): 1, (-4, (0, 0)): -2, (-6, (0, 0)): 1}


def test_matrix_product_equals_paths(capsys):
    base = ["matrix", "--type", "BC", "--rank", "2", "--J", "2",
            "--word", "0,2,1"]
    code1, d1 = invoke_json(capsys, *base, "--method", "product")
    code2, d2 = invoke_json(capsys, *base, "--method", "paths")
    assert code1 == code2 == 0
    assert d1["entries"] == d2["entries"]
    assert d1["dim"] == 4


def test_matrix_word_element_agree_on_reduced(capsys):
    _, d1 = invoke_json(capsys, "matrix", "--type", "A", "--rank", "2",
                        "--J", "1", "--word", "2,1")
    _, d2 = invoke_json(capsys, "matrix", "--type", "A", "--rank", "2",
                        "--J", "1", "--element", "2,1")
    assert d1["entries"] == d2["entries"]


def test_matrix_requires_one_input(capsys):
    code, out, err = invoke(capsys, "matrix", "--type", "A", "--rank", "2",
                            "--J", "1")
    assert code == 2
    assert "config error" in err


def test_verify_relations_ok(capsys):
    code, out, err = invoke(capsys, "verify", "--suite", "relations",
                            "--type", "G", "--rank", "2", "--J", "1")
    assert code == 0
    assert "ok" in out


def test_verify_all_suites(capsys):
    code, data = invoke_json(capsys, "verify", "--suite", "all",
                             "--type", "A", "--rank", "2", "--J", "1",
                             "--samples", "6")
    assert code == 0
    assert data["ok"] is True
    assert set(data["suites"]) == {"relations", "paths", "weights",
                                   "straighten"}


def test_classify_with_weights(capsys):
    code, data = invoke_json(capsys, "classify", "--type", "BC",
                             "--rank", "3", "--weights", "a=3,b=2,c=1")
    assert code == 0
    assert len(data["rows"]) == 6
    assert data["weights"] == {"alpha1": 2, "alpha3*2alpha3": 3,
                               "2alpha3": 1}
    assert data["bounded_system_count"] == len(data["rows_holding"])


def test_bound_search_sigma_domain(capsys):
    code, data = invoke_json(capsys, "bound-search", "--type", "A",
                             "--rank", "2", "--J", "1",
                             "--radius", "6", "--domain", "sigma",
                             "--include-sigma-twists")
    assert code == 0
    assert data["max_degree"] == 1
    assert data["stabilized"] is True
    assert data["conjectured_bound"] == 1
    relabels = {rec["relabel"] for rec in data["attaining"]}
    assert len(relabels) == 3


def test_conjecture_eval_reports_factors(capsys):
    code, data = invoke_json(capsys, "conjecture-eval", "--type", "G",
                             "--rank", "2", "--J", "1,2",
                             "--weights", "a=3,b=2", "--signs", "alpha2=+")
    assert code == 0
    assert data["bound"] == 5
    assert len(data["numerator_factors"]) == 12
    # The short-coroot denominator binomial vanishes for every system of
    # this shape; the dropped-factor counts are part of the contract.
    assert data["degenerate"] is True
    assert data["omitted_factors"] == {"numerator": 2, "denominator": 3}


def test_conjecture_eval_unbounded_notes(capsys):
    code, data = invoke_json(capsys, "conjecture-eval", "--type", "G",
                             "--rank", "2", "--J", "1,2",
                             "--weights", "a=3,b=1", "--signs", "alpha2=+")
    assert code == 0
    assert data["bound"] is None
    assert data["note"] == "unbounded parameter system"


def test_plot_writes_svg(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code, text, err = invoke(capsys, "plot", "--type", "BC", "--rank", "2",
                             "--J", "2", "--word", "0,2,1,2",
                             "--out", str(out))
    assert code == 0
    body = out.read_text()
    assert body.startswith("<svg ")
    assert "polygon" in body  # the shaded strip


def test_plot_rank_guard_is_config_error(capsys):
    code, out, err = invoke(capsys, "plot", "--type", "A", "--rank", "3",
                            "--J", "1")
    assert code == 2
    assert "rank" in err


def test_exit_code_on_bad_letters(capsys):
    code, out, err = invoke(capsys, "paths", "--type", "A", "--rank", "2",
                            "--J", "1", "--word", "7")
    assert code == 2


def test_config_file_toml(tmp_path, capsys):
    cfg = tmp_path / "job.toml"
    cfg.write_text('type = "A"\nrank = 3\nJ = "1"\n'
                   'word = "3,2,3,1,2,3"\ntheta = ""\n')
    code, data = invoke_json(capsys, "paths", "--config", str(cfg))
    assert code == 0
    assert data["count"] == 5


def test_config_flags_override(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"type": "A", "rank": 2, "J": "1",
                               "word": [1, 2]}))
    code, data = invoke_json(capsys, "paths", "--config", str(cfg),
                             "--word", "1")
    assert code == 0
    assert data["word"] == [1]


def test_config_rejects_foreign_keys(tmp_path, capsys):
    cfg = tmp_path / "job.toml"
    cfg.write_text('radius = 4\n')
    code, out, err = invoke(capsys, "paths", "--config", str(cfg))
    assert code == 2
    assert "does not apply" in err


def test_json_output_roundtrips(capsys):
    code, out, err = invoke(capsys, "matrix", "--type", "C", "--rank", "2",
                            "--J", "1,2", "--word", "0,1", "--json")
    assert code == 0
    assert out == json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n"


def test_weight_letters_match_node_spelling(capsys):
    _, d1 = invoke_json(capsys, "bound-search", "--type", "G", "--rank", "2",
                        "--J", "1,2", "--weights", "a=1,b=2",
                        "--signs", "alpha2=+", "--radius", "5")
    _, d2 = invoke_json(capsys, "bound-search", "--type", "G", "--rank", "2",
                        "--J", "1,2", "--weights", "0=2,1=2,2=1",
                        "--signs", "alpha2=+", "--radius", "5")
    assert d1 == d2
