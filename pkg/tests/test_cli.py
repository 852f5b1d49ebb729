"""Command-line contract: payload shapes, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from k3lift import (
    QuadLattice,
    RingContext,
    RingMat,
    RingVec,
    SlopeDecomposition,
    SupersingularInput,
    canonical_dumps,
    lift_ss_nonsymplectic,
)

C53 = RingContext(5, 3, 1)
C72 = RingContext(7, 2, 1)


def run_cli(args, payload=None):
    data = "" if payload is None else (
        payload if isinstance(payload, str) else canonical_dumps(payload)
    )
    return subprocess.run(
        [sys.executable, "-m", "k3lift", *args],
        input=data.encode(),
        capture_output=True,
    )


def out_json(proc):
    return json.loads(proc.stdout.decode())


def err_json(proc):
    return json.loads(proc.stderr.decode())


# -- constraints ---------------------------------------------------------------


def test_constraints_phi():
    proc = run_cli(["constraints", "--phi", "66"])
    assert proc.returncode == 0
    assert proc.stdout == b'{"phi":20}\n'


def test_constraints_unique_order():
    proc = run_cli(["constraints", "--unique-order", "66", "13"])
    assert proc.returncode == 0
    out = out_json(proc)["unique_order"]
    assert out["uniqueness_applies"] and out["order_66_direct"]


def test_constraints_tameness_and_thresholds():
    proc = run_cli(["constraints", "--tameness", "13", "33", "--thresholds", "23"])
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["tameness"] == "tame"
    assert out["thresholds"]["finite_height_weakly_tame"]


def test_constraints_scan():
    proc = run_cli(["constraints", "--scan-phi-bound", "61"])
    rows = out_json(proc)["scan"]
    last = rows[-1]
    assert last == {"p": 61, "phi_p_plus_1": 30, "exceeds_21": True}


def test_constraints_table_output():
    proc = run_cli(["constraints", "--scan-phi-bound", "61", "--table"])
    assert proc.returncode == 0
    text = proc.stdout.decode()
    assert "phi(p+1)" in text
    assert "\n61     30        true" in text


def test_constraints_requires_a_flag():
    proc = run_cli(["constraints"])
    assert proc.returncode == 1
    assert err_json(proc)["code"] == "InputError"


# -- eig-split -------------------------------------------------------------------


def _a2_isometry_payload():
    lat = QuadLattice(C72, [[2, -1], [-1, 2]])
    return {
        "lattice": lat.to_json(),
        "matrix": [[0, -1], [1, -1]],
        "order": 3,
    }


def test_eig_split_explicit_payload():
    proc = run_cli(["eig-split"], _a2_isometry_payload())
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["ranks"] == [0, 1, 1]
    assert all(out["identities"].values())
    assert out["pairing_orthogonality"]


def test_eig_split_wild_order_exit_2():
    # the A2 rotation has exact order 3, which is wild at p = 3
    lat = QuadLattice(RingContext(3, 2, 1), [[2, -1], [-1, 2]])
    payload = {"lattice": lat.to_json(), "matrix": [[0, -1], [1, -1]], "order": 3}
    proc = run_cli(["eig-split"], payload)
    assert proc.returncode == 2
    assert err_json(proc)["code"] == "NotTame"


def test_eig_split_sample_determinism():
    args = ["eig-split", "--ctx", "7,2,1", "--seed", "11"]
    payload = {"sample": {"rank": 4, "order": 3}}
    first = run_cli(args, payload)
    second = run_cli(args, payload)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    different = run_cli(["eig-split", "--ctx", "7,2,1", "--seed", "12"], payload)
    assert different.stdout != first.stdout


def test_eig_split_sample_needs_ctx():
    proc = run_cli(["eig-split"], {"sample": {"rank": 4, "order": 3}})
    assert proc.returncode == 1
    assert "ctx" in err_json(proc)["message"]


def test_global_flags_before_subcommand():
    payload = {"sample": {"rank": 4, "order": 3}}
    before = run_cli(["--ctx", "7,2,1", "--seed", "5", "eig-split"], payload)
    after = run_cli(["eig-split", "--ctx", "7,2,1", "--seed", "5"], payload)
    assert before.returncode == after.returncode == 0
    assert before.stdout == after.stdout


# -- isotropic-lift ----------------------------------------------------------------


def test_isotropic_lift_worked_example():
    payload = {
        "ring": C53.to_json(),
        "gram": [[5, 1], [1, 0]],
        "u": [1, 0],
        "v": [0, 1],
    }
    proc = run_cli(["isotropic-lift"], payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["a"] == [12]
    assert out["w"] == [[1], [60]]
    assert out["norm"] == [0]


def test_isotropic_lift_precondition_failure():
    payload = {
        "ring": C53.to_json(),
        "gram": [[1, 1], [1, 0]],
        "u": [1, 0],
        "v": [0, 1],
    }
    proc = run_cli(["isotropic-lift"], payload)
    assert proc.returncode == 2
    assert err_json(proc)["code"] == "NotNearIsotropic"


# -- period-complete ----------------------------------------------------------------


def _toy_frame_json():
    ctx = RingContext(3, 3, 1)
    gram = [[0, 0, 0, 1], [0, 2, 0, 0], [0, 0, 2, 0], [1, 0, 0, 0]]
    return {"ring": ctx.to_json(), "gram": QuadLattice(ctx, gram).gram.to_json()}


def test_period_complete_worked_example():
    payload = {"frame": _toy_frame_json(), "coordinates": [3, 0]}
    proc = run_cli(["period-complete"], payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["last_coordinate"] == [18]
    assert out["conditions"]["valid"]


def test_period_complete_valuation_violation():
    payload = {"frame": _toy_frame_json(), "coordinates": [1, 0]}
    proc = run_cli(["period-complete"], payload)
    assert proc.returncode == 2
    assert err_json(proc)["code"] == "ValuationViolation"


def test_period_complete_sample():
    args = ["period-complete", "--ctx", "5,3,1", "--seed", "3"]
    payload = {"sample": {"rank": 6}}
    first = run_cli(args, payload)
    assert first.returncode == 0
    assert out_json(first)["conditions"]["valid"]
    assert first.stdout == run_cli(args, payload).stdout


# -- phi-map / phi-invert --------------------------------------------------------


def _connection_payload():
    ctx = C53
    gram = [[0, 0, 1], [0, 2, 0], [1, 0, 0]]
    from k3lift import PeriodFrame, quadric_connection

    conn = quadric_connection(PeriodFrame(QuadLattice(ctx, gram)))
    return conn.to_json()


def test_phi_map_explicit():
    payload = {"connection": _connection_payload(), "point": [5]}
    proc = run_cli(["phi-map"], payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert len(out["coordinates"]) == 1
    # first-order law: the image coordinate is 5 mod 25
    assert out["coordinates"][0][0] % 25 == 5


def test_phi_invert_round_trip():
    payload = {"connection": _connection_payload(), "point": [5]}
    image = out_json(run_cli(["phi-map"], payload))["coordinates"]
    inv_payload = {"connection": _connection_payload(), "target": image}
    proc = run_cli(["phi-invert"], inv_payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["point"] == {"entries": [[5]]}
    assert out["image"] == image


def test_phi_map_sample_determinism():
    args = ["phi-map", "--ctx", "5,3,1", "--seed", "9"]
    payload = {"sample": {"dimension": 2}}
    first = run_cli(args, payload)
    assert first.returncode == 0
    assert first.stdout == run_cli(args, payload).stdout


# -- lift-search -------------------------------------------------------------------


def _finite_height_payload():
    lat = QuadLattice(C53, [[0, 1], [1, 0]])
    sd = SlopeDecomposition(lat, [[1, 0]], [], [[0, 1]])
    return {
        "decomposition": sd.to_json(),
        "matrix": [[1, 0], [0, 1]],
        "order": 1,
        "hodge_line": [0, 1],
    }


def test_lift_search_finite_height():
    proc = run_cli(["lift-search", "--mode", "finite-height"], _finite_height_payload())
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["branch"] == "finite-height"
    assert out["eigenvalue"] == [1]


def test_lift_search_universal_others():
    payload = _finite_height_payload()
    payload["others"] = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    proc = run_cli(["lift-search", "--mode", "finite-height"], payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["stability"][0]["stabilizes"]
    assert not out["stability"][1]["stabilizes"]


def test_lift_search_nonsymplectic_worked():
    lat = QuadLattice(C53, [[5, 1], [1, 0]])
    payload = {
        "ring": C53.to_json(),
        "gram": lat.gram.to_json(),
        "matrix": [[-1, 0], [0, -1]],
        "hodge_line": [1, 0],
        "order": 2,
    }
    proc = run_cli(["lift-search", "--mode", "ss-nonsymplectic"], payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["generator"] == [[1], [60]]
    assert out["eigenvalue"] == [124]


def test_lift_search_symplectic_worked():
    ctx = RingContext(3, 3, 1)
    payload = {
        "ring": ctx.to_json(),
        "gram": [[3, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        "matrix": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        "hodge_line": [1, 0, 0, 0],
        "ample": [0, 0, 1, 0],
        "order": 1,
    }
    proc = run_cli(["lift-search", "--mode", "ss-symplectic"], payload)
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["generator"] == [[1], [12], [0], [0]]


def test_lift_search_wild_order_exit_2():
    lat = QuadLattice(C53, [[5, 1], [1, 0]])
    payload = {
        "ring": C53.to_json(),
        "gram": lat.gram.to_json(),
        "matrix": [[-1, 0], [0, -1]],
        "hodge_line": [1, 0],
        "order": 10,
    }
    proc = run_cli(["lift-search", "--mode", "ss-nonsymplectic"], payload)
    assert proc.returncode == 2
    assert err_json(proc)["code"] == "NotTame"


def test_lift_search_weakly_tame_gate():
    payload = _finite_height_payload()
    payload["order"] = 5
    proc = run_cli(["lift-search", "--mode", "finite-height"], payload)
    assert proc.returncode == 2
    assert err_json(proc)["code"] == "NotWeaklyTame"


# -- verify ------------------------------------------------------------------------


def _nonsymplectic_cert():
    lat = QuadLattice(C53, [[5, 1], [1, 0]])
    minus = RingMat.identity(C53, 2).scale(C53.scalar(-1))
    inp = SupersingularInput(lat, minus, [1, 0])
    return lift_ss_nonsymplectic(inp, 2)


def test_verify_valid_certificate():
    cert = _nonsymplectic_cert()
    proc = run_cli(["verify"], cert.to_json())
    assert proc.returncode == 0
    out = out_json(proc)
    assert out["valid"] is True
    assert all(c["ok"] for c in out["checks"])


def test_verify_corrupted_certificate_exit_2():
    cert = _nonsymplectic_cert()
    data = cert.to_json()
    data["generator"] = [[1], [61]]
    proc = run_cli(["verify"], data)
    assert proc.returncode == 2
    out = out_json(proc)
    assert out["valid"] is False


# -- transport-level behaviors ------------------------------------------------------


def test_bad_json_exit_1():
    proc = run_cli(["verify"], "{broken")
    assert proc.returncode == 1
    assert err_json(proc)["code"] == "InputError"


def test_unknown_flag_exit_1():
    proc = run_cli(["constraints", "--bogus"])
    assert proc.returncode == 1
    assert err_json(proc)["code"] == "InputError"


def test_missing_subcommand_exit_1():
    proc = run_cli([])
    assert proc.returncode == 1


def test_in_file(tmp_path):
    path = tmp_path / "payload.json"
    path.write_text(canonical_dumps(_a2_isometry_payload()))
    proc = run_cli(["eig-split", "--in", str(path)])
    assert proc.returncode == 0
    assert out_json(proc)["ranks"] == [0, 1, 1]


def test_in_file_missing(tmp_path):
    proc = run_cli(["eig-split", "--in", str(tmp_path / "absent.json")])
    assert proc.returncode == 1
    assert err_json(proc)["code"] == "InputError"


def test_output_is_canonical_json():
    proc = run_cli(["constraints", "--thresholds", "13"])
    text = proc.stdout.decode()
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert canonical_dumps(parsed) == text
