"""Wire format round-trips and the batch CLI."""

import json
from pathlib import Path

import pytest

from scaledss import InputError, certify_inner_horn, certify_theta, ts, verify_certificate
from scaledss.cli import main
from scaledss.serialize import (
    canonical_dumps,
    certificate_from_json,
    certificate_to_json,
    complex_from_json,
    scaled_from_json,
    scaled_to_json,
)


def test_scaled_roundtrip_bytes():
    s = ts(1)
    blob = canonical_dumps(scaled_to_json(s))
    back = scaled_from_json(json.loads(blob))
    assert back == s
    assert canonical_dumps(scaled_to_json(back)) == blob


def test_loader_rejects_bad_tuples():
    with pytest.raises(InputError):
        complex_from_json({"vertices": ["a"], "maximal_simplices": [["a", "a"]]})
    with pytest.raises(InputError):
        complex_from_json({"vertices": ["a"], "maximal_simplices": [["a", "b"]]})
    with pytest.raises(InputError):
        complex_from_json({"vertices": ["a", "a"], "maximal_simplices": []})


def test_certificate_roundtrip_and_reverify():
    for cert in (certify_inner_horn(2, 1), certify_theta(0)):
        blob = canonical_dumps(certificate_to_json(cert))
        back = certificate_from_json(json.loads(blob))
        assert canonical_dumps(certificate_to_json(back)) == blob
        r1, r2 = verify_certificate(cert), verify_certificate(back)
        assert r1.ok and r2.ok and r1.stats == r2.stats


def test_cli_build_roundtrip(tmp_path: Path):
    out = tmp_path / "ts1.json"
    assert main(["build", "--object", "ts", "--n", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 8
    assert len(data["thin"]) == 8
    loaded = scaled_from_json(data)
    assert len(loaded.complex.simplices(2)) == 18
    # build -> load -> build is byte-identical
    out2 = tmp_path / "again.json"
    assert main(["build", "--object", "ts", "--n", "1", "--out", str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_cli_certify_verify_cycle(tmp_path: Path):
    cert_path = tmp_path / "c.json"
    assert main(["certify", "--lemma", "inner", "--n", "2", "--i", "1",
                 "--out", str(cert_path)]) == 0
    assert main(["verify", "--cert", str(cert_path)]) == 0
    assert main(["verify", "--cert", str(cert_path), "--audit"]) == 0
    data = json.loads(cert_path.read_text())
    data["steps"] = data["steps"][:1]
    bad = tmp_path / "truncated.json"
    bad.write_text(json.dumps(data))
    assert main(["verify", "--cert", str(bad)]) == 1


def test_cli_audit_and_checks():
    assert main(["audit", "thin", "--n", "1", "--part", "plus"]) == 0
    assert main(["cosimplicial-check", "--max-n", "1"]) == 0
    assert main(["rev-check", "--max-n", "1"]) == 0


def test_cli_search(tmp_path: Path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    out = tmp_path / "found.json"
    assert main(["build", "--object", "horn", "--n", "2", "--i", "1",
                 "--variant", "plus", "--out", str(a)]) == 0
    assert main(["build", "--object", "horn", "--n", "2", "--i", "1",
                 "--variant", "bar_plus", "--out", str(b)]) == 0
    assert main(["search", "--from", str(a), "--to", str(b),
                 "--budget", "128", "--out", str(out)]) == 0
    assert main(["verify", "--cert", str(out)]) == 0


def test_cli_input_errors():
    assert main(["build", "--object", "horn", "--n", "2"]) == 2
    assert main(["certify", "--lemma", "plus", "--n", "2", "--i", "0"]) == 2
    assert main(["verify", "--cert", "/nonexistent/file.json"]) == 2


def test_cli_seed_accepted(tmp_path: Path):
    out = tmp_path / "sq.json"
    assert main(["--seed", "7", "build", "--object", "oplax-square", "--out", str(out)]) == 0


def test_certificates_deterministic_across_processes(tmp_path: Path):
    import os
    import subprocess
    import sys

    env = dict(os.environ)
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    blobs = []
    for run in range(2):
        out = tmp_path / f"run{run}.json"
        subprocess.run(
            [sys.executable, "-m", "scaledss.cli", "certify", "--lemma", "plus",
             "--n", "3", "--i", "1", "--out", str(out)],
            check=True, capture_output=True, env=env,
        )
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]
