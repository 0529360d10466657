import json
import subprocess
import sys

import pytest

from torsion_kit.cli import main, suite_files
from torsion_kit.runspec import (
    CHECKS,
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_PASS,
    EXIT_UNDETERMINED,
    SCHEMA,
    InputError,
    dump_runspec,
    load_runspec,
    parse_runspec,
    run,
)

MINIMAL = """
ring = "Z/8"
[ideals]
I = { gens = [2] }
[modules]
M = "regular"
[[checks]]
name = "gamma"
"""


def test_minimal_document():
    spec = parse_runspec(MINIMAL)
    doc = run(spec)
    d = doc.to_dict()
    assert d["schema"] == SCHEMA and d["exit_code"] == 0
    rep = d["reports"][0]
    assert rep["verdict"] == "pass" and rep["details"]["order"] == 8
    assert rep["details"]["stabilization_index"] == 3


def test_round_trip_through_json():
    text = json.dumps({
        "ring": [{"type": "GF", "p": 2}, {"type": "GF", "p": 3}],
        "ideals": {"I": {"gens": [[1, 0]]}},
        "modules": {"M": "regular"},
        "checks": [{"name": "spectral_vnr", "qmax": 2}],
        "seed": 7,
    })
    spec = parse_runspec(text, "json")
    again = parse_runspec(dump_runspec(spec), "json")
    assert again.to_dict() == spec.to_dict() and again.digest() == spec.digest()
    assert run(again).exit_code == EXIT_PASS
    with pytest.raises(ValueError):
        dump_runspec(spec, "toml")


@pytest.mark.parametrize("text,key", [
    ('ring = "Z/8"\nbogus = 1', "bogus"),
    ('ideal = {gens=[2]}', "ring"),
    ('ring = "Q"', "ring"),
    ('ring = "Z/8"\n[[checks]]\nname = "nope"', "checks[0].name"),
    ('ring = "Z/8"\n[[checks]]\nname = "gamma"\nwhatever = 2', "checks[0].whatever"),
    ('ring = "Z/8"\n[modules]\nA = {type = "quotient", of = "B"}', "modules.A.of"),
    ('ring = "Z/8"\n[modules]\nA = {type = "sphere"}', "modules.A.type"),
    ('ring = "Z/8"\n[ideals]\nI = {gens = ["x"]}', "ideals.I"),
    ('ring = "Z/8"\n[options]\nresolution_length = 0', "resolution_length"),
    ('ring = "Z/8"\nseed = "a"', "seed"),
    ('ring = "Z/8"\n[[checks]]\nname = "annihilator_layers"\nk = -1', "checks[0].k"),
])
def test_malformed_input_names_the_key(text, key):
    with pytest.raises(InputError) as e:
        parse_runspec(text)
    assert e.value.key == key
    assert key in str(e.value)


def test_toml_syntax_error_has_position():
    with pytest.raises(InputError) as e:
        parse_runspec('ring = "Z/8"\nideal = {gens = [2}\n')
    assert e.value.line == 2 and e.value.column is not None
    with pytest.raises(InputError) as e:
        parse_runspec('{"ring": "Z/8",\n "x": }', "json")
    assert e.value.line == 2
    with pytest.raises(InputError):
        parse_runspec("[1, 2]", "json")
    with pytest.raises(InputError):
        parse_runspec("", "yaml")


def test_empty_check_list_passes():
    doc = run(parse_runspec('ring = "Z/4"'))
    assert doc.exit_code == EXIT_PASS and doc.to_dict()["summary"] == {"pass": 0, "fail": 0, "undetermined": 0}


def test_failure_carries_a_replayable_witness():
    spec = parse_runspec('ring = "Z/4"\nideal = {gens = [2]}\nmodule = "regular"\ncheck = "hom_radical"')
    doc = run(spec)
    assert doc.exit_code == EXIT_FAIL
    w = doc.to_dict()["reports"][0]["witnesses"][0]
    assert w["coset_representative"] == [1]
    assert w["module"]["ncoords"] == 1


def test_expect_semantics():
    base = 'ring = "Z/4"\nideal = {gens = [2]}\nmodule = "regular"\n'
    ok = run(parse_runspec(base + '[[checks]]\nname = "hom_radical"\nexpect = {verdict = "fail"}'))
    assert ok.exit_code == EXIT_PASS
    assert ok.reports[0].details["expected_verdict"] == "fail" and ok.reports[0].witnesses
    bad = run(parse_runspec(base + '[[checks]]\nname = "gamma"\nexpect = {order = 2}'))
    assert bad.exit_code == EXIT_FAIL
    assert "expected order" in bad.reports[0].witnesses[0]["reason"]


def test_every_module_kind_resolves():
    text = """
ring = "Z/8"
[ideals]
I = { gens = [2] }
J = "I"
[modules]
A = "regular"
F = { type = "free", rank = 2 }
C = { type = "cyclic", ideal = "J" }
Q = { type = "quotient", of = "A", by = [4] }
P = { type = "quotient", of = "A", by_ideal = { gens = [4] } }
S = { type = "direct_sum", of = ["C", "Q"] }
N = { type = "annihilator", of = "A", ideal = "I" }
E = { type = "explicit", ncoords = 1, relations = [[4]], actions = [[[1]]], label = "Z/4 by hand" }
[[checks]]
name = "gamma"
module = "S"
ideal = "I"
"""
    spec = parse_runspec(text)
    from torsion_kit.runspec import Context

    ctx = Context(spec)
    orders = {k: M.cardinality for k, M in ctx.modules.items()}
    assert orders == {"A": 8, "F": 64, "C": 2, "Q": 4, "P": 4, "S": 8, "N": 2, "E": 4}
    assert ctx.modules["E"].label == "Z/4 by hand"
    assert run(spec).exit_code == EXIT_PASS


def test_undetermined_from_bounds():
    text = 'ring = "Z/4"\nideal = {gens=[2]}\nmodule = {type="free", rank=3}\n' \
           '[options]\nbound_card = 4\n[[checks]]\nname = "splitting"\n'
    # R^3 is not (2)-reduced, so splitting has no precondition and is undetermined
    assert run(parse_runspec(text)).exit_code == EXIT_UNDETERMINED
    text = 'ring = "Z/4"\nideal = {gens=[2]}\nmodule = "regular"\n' \
           '[options]\nresolution_length = 2\n[[checks]]\nname = "ext"\nq = 3\n'
    doc = run(parse_runspec(text))
    assert doc.exit_code == EXIT_UNDETERMINED
    assert "exceeds" in doc.reports[0].details["reason"]


def test_precondition_violation_is_input_error():
    spec = parse_runspec('ring = "Z/4"\nideal = {gens=[2]}\ncheck = "spectral_vnr"')
    with pytest.raises(InputError):
        run(spec)


def test_deterministic_without_timing():
    spec = parse_runspec(MINIMAL + '\n[[checks]]\nname = "radical_equivalence"\n')
    a, b = run(spec).to_json(timing=False), run(spec).to_json(timing=False)
    assert a == b
    assert "timing" in run(spec).to_dict()


def test_every_registered_check_runs():
    special = {
        "limits_commute": {"modules": ["M", "Q"], "tower": True},
        "koszul": {"sequence": [[1, 0]], "degree_p": -1},
        "weak_proregularity": {"sequence": [[0, 2]]},
        "apolarity_profile": {"gens": [[2]]},
        "apolarity_layers": {"gens": [[2]]},
        "locally_nilradical": {"module": "M", "element": [0, 2]},
        "ext": {"q": 1}, "tor": {"q": 1},
    }
    checks = []
    for name in sorted(CHECKS):
        c = {"name": name, **special.get(name, {})}
        params = CHECKS[name][1]
        if "module" in params:
            c.setdefault("module", "M")
        if "family" in params:
            c["family"] = {"max_order": 8}
        checks.append(c)
    doc = {
        "ring": "F2 x F3",
        "ideals": {"I": {"gens": [[1, 0]]}},
        "modules": {"M": "regular", "Q": {"type": "quotient", "of": "M", "by": [[0, 1]]}},
        "checks": checks,
    }
    report = run(parse_runspec(json.dumps(doc), "json"))
    verdicts = {r.name: r.verdict for r in report.reports}
    assert set(verdicts) == set(CHECKS)
    assert all(v == "pass" for v in verdicts.values()), verdicts


def test_bundled_suite_and_controls():
    files = suite_files()
    assert len(files) >= 5
    for f in files:
        assert run(load_runspec(f)).exit_code == EXIT_PASS, f.name
    for f in suite_files("controls"):
        assert run(load_runspec(f)).exit_code == EXIT_FAIL, f.name
    with pytest.raises(InputError):
        load_runspec("/nonexistent/spec.toml")


def test_cli_exit_codes(tmp_path, capsys):
    ok = tmp_path / "ok.toml"
    ok.write_text(MINIMAL)
    assert main(["check", str(ok), "--no-timing"]) == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["exit_code"] == 0 and "timing" not in out
    assert main(["check", "--ring", "Z/4", "--ideal", "2", "--name", "hom_radical"]) == EXIT_FAIL
    capsys.readouterr()
    assert main(["check", "--ring", "Z/4", "--ideal", "2", "--name", "ext", "-q", "6",
                 "--resolution-length", "2"]) == EXIT_UNDETERMINED
    capsys.readouterr()
    bad = tmp_path / "bad.toml"
    bad.write_text('ring = "Z/8"\n[[checks]]\nname = "nope"\n')
    assert main(["check", str(bad)]) == EXIT_INPUT
    assert "unknown check" in capsys.readouterr().err
    assert main(["ring", "Z/1"]) == EXIT_INPUT
    assert main(["check"]) == EXIT_INPUT
    assert main(["suite", "--which", "controls"]) == EXIT_FAIL
    assert main(["suite"]) == EXIT_PASS


def test_cli_subcommands(tmp_path, capsys):
    assert main(["ring", "F2 x F3", "--format", "text"]) == 0
    assert "idempotent ideals" in capsys.readouterr().out
    assert main(["ring", '{"type": "Zn", "n": 6}']) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 6
    assert main(["ideal", "Z/8", "2", "--no-timing"]) == 0
    rep = json.loads(capsys.readouterr().out)["reports"][0]
    assert rep["details"]["power_orders"] == [4, 2, 1, 1]
    assert main(["module", "Z/8", "2", "--module", "R/(4)", "--op", "gamma", "--format", "text"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["module", "Z/8", "2", "--op", "sideways"]) == EXIT_INPUT
    out = tmp_path / "report.json"
    assert main(["apolarity", "--gens", "[[2]]", "--degree", "5", "--out", str(out), "--no-timing"]) == 0
    d = json.loads(out.read_text())
    assert d["reports"][0]["details"]["dims"] == [2, 4]
    assert main(["apolarity", "--gens", "[[2]"]) == EXIT_INPUT


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "torsion_kit", "ideal", "F2 x F2", "[1,0]", "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "ideal" in r.stdout
