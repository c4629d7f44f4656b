import io
import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gzsystem import jsonio
from gzsystem.cli import main
from gzsystem.invariants import AlgebraKind
from gzsystem.moment import FiberTarget
from gzsystem.sampling import random_target, random_torus
from gzsystem.solvar_so import SoTorusPoint
from gzsystem.verify import EXAMPLE_X

EXAMPLE = {"matrix": EXAMPLE_X.real.astype(int).tolist()}


def run(argv, payload=None, monkeypatch=None):
    if payload is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(payload if isinstance(payload, str) else json.dumps(payload)))
    out = io.StringIO()
    code = main(argv, out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None)


def matrix_of(data):
    return np.array([[complex(*v) for v in row] for row in data])


def test_sreg_example(monkeypatch):
    code, out = run(["sreg"], EXAMPLE, monkeypatch=monkeypatch)
    assert code == 0
    assert out["strongly_regular"] is True and out["via_centralizers"] is True
    assert out["in_omega"] is True and out["distribution_rank"] == 3


def test_flow_zero_time_echoes(monkeypatch):
    code, out = run(["flow"], {**EXAMPLE, "level": 2, "index": 2, "time": 0}, monkeypatch=monkeypatch)
    assert code == 0
    assert np.array_equal(matrix_of(out["matrix"]), EXAMPLE_X)


def test_moment_and_invariants(monkeypatch):
    code, out = run(["moment"], {"matrix": [[1, 0, 0], [0, 2, 0], [0, 0, 3]]}, monkeypatch=monkeypatch)
    assert code == 0
    assert [v[0] for v in out["values"]] == [1, 3, 5, 6, 14, 36]
    code, out = run(["coeff-moment"], {"matrix": [[1, 0, 0], [0, 2, 0], [0, 0, 3]]}, monkeypatch=monkeypatch)
    assert [v[0] for v in out["values"]][-3:] == [-6, 11, -6]
    code, out = run(["invariants"], EXAMPLE, monkeypatch=monkeypatch)
    assert len(out["invariants"]) == 6


def test_act_with_order(monkeypatch):
    payload = {**EXAMPLE, "times": [0.01, 0.02, -0.01]}
    _, a = run(["act"], payload, monkeypatch=monkeypatch)
    _, b = run(["act", "--order", "2,1,0"], payload, monkeypatch=monkeypatch)
    assert np.allclose(matrix_of(a["matrix"]), matrix_of(b["matrix"]), atol=1e-8)
    code, _ = run(["act", "--order", "x"], payload, monkeypatch=monkeypatch)
    assert code == 2


def test_fiber_commands_round_trip(monkeypatch, rng):
    kind = AlgebraKind("so", 5)
    c = random_target(kind, rng)
    z = random_torus(kind, rng)
    target = jsonio.target_to_json(c)
    payload = json.loads(jsonio.dumps({"target": target, "torus": jsonio.torus_to_json(z)}))
    code, built = run(["fiber-build", "--algebra", "so"], payload, monkeypatch=monkeypatch)
    assert code == 0 and built["residual"] <= 1e-8
    inv_payload = json.loads(jsonio.dumps({"target": target, "matrix": built["matrix"]}))
    code, inv = run(["fiber-invert", "--algebra", "so"], inv_payload, monkeypatch=monkeypatch)
    assert code == 0
    back = jsonio.torus_from_json(inv["torus"], kind)
    assert back.distance(z) <= 1e-8
    ident = {"target": target, "matrix": built["matrix"], "torus": jsonio.torus_to_json(SoTorusPoint.identity(5))}
    code, moved = run(["torus-act", "--algebra", "so"], json.loads(jsonio.dumps(ident)), monkeypatch=monkeypatch)
    assert code == 0
    assert np.allclose(matrix_of(moved["matrix"]), matrix_of(built["matrix"]), atol=1e-8)


def test_nilfibre_check(monkeypatch):
    code, out = run(["nilfibre-check"], {"matrix": [[0, 0], [1, 0]]}, monkeypatch=monkeypatch)
    assert code == 0 and out == {"nilradical_example": True, "in_nilfibre": True}


@pytest.mark.parametrize(
    "argv,payload",
    [
        (["moment"], "{bad"),
        (["moment"], {"matrix": [[1, 2]]}),
        (["moment"], {"nothing": 1}),
        (["moment", "--n", "4"], EXAMPLE),
        (["coeff-moment", "--algebra", "so"], {"matrix": [[0, 1], [-1, 0]]}),
        (["flow"], {**EXAMPLE, "level": 9, "index": 1, "time": 1}),
    ],
)
def test_malformed_input_exit_2(argv, payload, monkeypatch):
    assert run(argv, payload, monkeypatch=monkeypatch)[0] == 2


def test_precondition_exit_3(monkeypatch):
    target = {"kind": "gl", "n": 3, "levels": [{"eigenvalues": [0]}, {"eigenvalues": [5, -4]}, {"eigenvalues": [3, 2, -2]}]}
    off = EXAMPLE_X.copy()
    off[2, 0] = 0.5
    payload = {"target": target, "matrix": off.real.tolist()}
    assert run(["fiber-invert"], payload, monkeypatch=monkeypatch)[0] == 3
    bad_target = {"kind": "gl", "n": 2, "levels": [{"eigenvalues": [5]}, {"eigenvalues": [5, -4]}]}
    payload = {"target": bad_target, "torus": {"levels": [[1]]}}
    assert run(["fiber-build"], payload, monkeypatch=monkeypatch)[0] == 3
    so_payload = {"matrix": np.eye(4).tolist()}
    assert run(["sreg", "--algebra", "so"], so_payload, monkeypatch=monkeypatch)[0] == 3


def test_example_inverse_is_identity(monkeypatch):
    c = FiberTarget.from_element(AlgebraKind("gl", 3), EXAMPLE_X)
    payload = json.loads(jsonio.dumps({"target": jsonio.target_to_json(c), **EXAMPLE}))
    code, out = run(["fiber-invert"], payload, monkeypatch=monkeypatch)
    assert code == 0
    assert np.allclose([complex(*v) for lev in out["torus"]["levels"] for v in lev], 1, atol=1e-12)


def test_verify_so4_seed7():
    out = io.StringIO()
    assert main(["verify", "--algebra", "so", "--n", "4", "--seed", "7"], out) == 0
    first = json.loads(out.getvalue())
    assert first["passed"] and all(c["passed"] for c in first["checks"])
    again = io.StringIO()
    main(["verify", "--algebra", "so", "--n", "4", "--seed", "7"], again)
    assert again.getvalue() == out.getvalue()


def test_verify_rejects_small_n():
    assert main(["verify", "--n", "2"], io.StringIO()) == 2


def test_console_entry_point(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(EXAMPLE))
    proc = subprocess.run(
        [sys.executable, "-m", "gzsystem", "moment", "--input", str(path)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["values"][0] == [0, 0]


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.tuples(finite, finite), min_size=3, max_size=3), min_size=3, max_size=3))
def test_serialization_is_bit_stable(rows):
    x = np.array([[complex(a, b) for a, b in row] for row in rows])
    text = jsonio.dumps({"matrix": jsonio.matrix_to_json(x)})
    back = jsonio.parse_matrix(json.loads(text)["matrix"])
    assert np.array_equal(back.view(np.float64), x.view(np.float64))


def test_target_json_round_trip(rng):
    for kind in (AlgebraKind("gl", 4), AlgebraKind("so", 6)):
        c = random_target(kind, rng)
        back = jsonio.target_from_json(json.loads(jsonio.dumps(jsonio.target_to_json(c))))
        assert back == c
        z = random_torus(kind, rng)
        assert jsonio.torus_from_json(json.loads(jsonio.dumps(jsonio.torus_to_json(z)))) == z


def test_format_errors():
    with pytest.raises(jsonio.FormatError):
        jsonio.parse_complex(True)
    with pytest.raises(jsonio.FormatError):
        jsonio.parse_matrix([[1, 2], [3]])
    with pytest.raises(jsonio.FormatError):
        jsonio.target_from_json({"kind": "so", "n": 2, "levels": [{"block_params": []}, {"block_params": [1], "pfaffian_sign": 2}]})
    with pytest.raises(ValueError):
        jsonio.dumps(float("nan"))
