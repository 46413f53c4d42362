import math

import pytest

import privlog

CSV = (
    "case_id,activity,timestamp\n"
    "1,A,2020-08-08T10:20:00\n"
    "1,B,2020-08-08T10:50:00\n"
    "1,C,2020-08-08T16:15:00\n"
    "2,D,2020-08-08T12:37:00\n"
    "2,A,2020-08-08T14:37:00\n"
    "2,E,2020-08-08T15:07:00\n"
    "2,C,2020-08-08T20:31:00\n"
    "3,A,2020-08-09T13:30:00\n"
    "3,E,2020-08-09T13:55:00\n"
    "3,C,2020-08-09T20:55:00\n"
)


def test_calibration_values():
    assert privlog.worst_case_prior(0.3) == pytest.approx(0.35)
    assert privlog.epsilon_from_advantage(0.35, 0.3) == pytest.approx(1.2380, abs=1e-3)
    assert privlog.epsilon_from_advantage(0.2, 0.3) == pytest.approx(math.log(4))
    assert privlog.epsilon_oversampling(0.3) == pytest.approx(0.2834, abs=1e-3)
    assert math.isinf(privlog.epsilon_from_advantage(0.7, 0.3))
    with pytest.raises(ValueError):
        privlog.epsilon_from_advantage(0.0, 0.3)


def test_anonymize_text_roundtrip():
    released, report = privlog.anonymize_text(CSV, delta=0.3, seed=1)
    assert released.startswith("case_id,activity,timestamp")
    assert "epsilon_per_event" in released
    assert '"epsilon_d"' in report

    again, _ = privlog.anonymize_text(CSV, delta=0.3, seed=1)
    assert released == again
    other, _ = privlog.anonymize_text(CSV, delta=0.3, seed=2)
    assert released != other


def test_evaluate_self_is_zero():
    metrics = privlog.evaluate_text(CSV, CSV)
    assert metrics["jaccard"] == 0.0
    assert metrics["emd_frequency"] == pytest.approx(0.0)
    assert metrics["original_variants"] == 3


def test_inspect_and_dot():
    summary = privlog.inspect_text(CSV)
    assert "cases:       3" in summary
    dot = privlog.dafsa_dot([["A", "B"], ["A", "C"]])
    assert "digraph" in dot


def test_file_pipeline(tmp_path):
    src = tmp_path / "in.csv"
    out = tmp_path / "out.csv"
    src.write_text(CSV)
    report = privlog.anonymize_file(str(src), str(out), delta=0.3, seed=5)
    assert out.exists()
    assert '"released"' in report
    metrics = privlog.evaluate_files(str(src), str(out))
    assert 0.0 <= metrics["jaccard"] <= 1.0


def test_parse_errors_surface():
    with pytest.raises(ValueError):
        privlog.anonymize_text("case_id,activity\n1,a\n")
