import numpy as np
import pytest

from l1active.core import ConvergenceTrace, TraceRecord
from l1active.data_io import (TRACE_HEADER, LibsvmFormatError, generate_lasso,
                              generate_logistic, read_libsvm, read_libsvm_regression,
                              read_trace, write_libsvm, write_trace)


def _write(tmp_path, text, name="d.libsvm"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_read_libsvm_basic(tmp_path):
    p = read_libsvm(_write(tmp_path, "+1 3:0.5 7:1.2\n-1\n"))
    assert p.A.shape == (2, 7)
    np.testing.assert_array_equal(p.labels, [1, -1])
    cols, vals = p.A.row(0)
    np.testing.assert_array_equal(cols, [2, 6])
    np.testing.assert_array_equal(vals, [0.5, 1.2])
    assert p.A.row(1)[0].size == 0


def test_read_libsvm_comments_blank_and_override(tmp_path):
    p = read_libsvm(_write(tmp_path, "# header\n\n1 1:2 # trailing\n0 2:1\n"), n_features=5)
    assert p.A.shape == (2, 5)
    np.testing.assert_array_equal(p.labels, [1, -1])


@pytest.mark.parametrize("labels, expected", [
    ("1 2", [-1, 1]),
    ("0 1", [-1, 1]),
    ("-1 +1", [-1, 1]),
])
def test_label_encodings(tmp_path, labels, expected):
    a, b = labels.split()
    p = read_libsvm(_write(tmp_path, f"{a} 1:1\n{b} 1:2\n"))
    np.testing.assert_array_equal(p.labels, expected)


@pytest.mark.parametrize("text, lineno", [
    ("1 1:2\n-1 3:x\n", 2),
    ("1 1:2\n1 2\n", 2),
    ("1 0:1\n", 1),
    ("1 3:1 2:1\n", 1),
    ("lab 1:1\n", 1),
    ("1 1:1\n-1 1:1\n0 1:1\n", 3),
    ("3 1:1\n", 1),
])
def test_libsvm_errors_report_line(tmp_path, text, lineno):
    with pytest.raises(LibsvmFormatError, match=f":{lineno}:"):
        read_libsvm(_write(tmp_path, text))


def test_libsvm_round_trip(tmp_path):
    prob = generate_logistic(30, 12, seed=3, density=0.3)
    path = tmp_path / "rt.libsvm"
    write_libsvm(path, prob.A, prob.labels)
    back = read_libsvm(path, n_features=12)
    np.testing.assert_array_equal(back.labels, prob.labels)
    np.testing.assert_array_equal(back.A.toarray(), prob.A.toarray())


def test_regression_reader(tmp_path):
    p = read_libsvm_regression(_write(tmp_path, "2.5 1:1\n-0.5 2:1\n"))
    np.testing.assert_array_equal(p.b, [2.5, -0.5])


def test_generate_lasso_small():
    inst = generate_lasso(40, seed=1)
    assert inst.problem.A.shape == (20, 40)
    assert np.count_nonzero(inst.x_true) == 1
    assert inst.tau == pytest.approx(0.99)
    A = inst.problem.A.toarray()
    assert A.min() >= 0 and A.max() < 1


def test_generate_lasso_acceptance_size():
    inst = generate_lasso(1024, seed=5)
    assert inst.problem.A.shape == (512, 1024)
    assert np.count_nonzero(inst.x_true) == 26
    assert set(np.unique(inst.x_true[inst.x_true != 0])) <= {-1.0, 1.0}
    assert inst.tau == pytest.approx(0.99 * 26)


def test_generate_lasso_deterministic():
    a, b = generate_lasso(64, seed=9), generate_lasso(64, seed=9)
    np.testing.assert_array_equal(a.problem.A.toarray(), b.problem.A.toarray())
    np.testing.assert_array_equal(a.problem.b, b.problem.b)
    np.testing.assert_array_equal(a.x_true, b.x_true)
    assert a.tau == b.tau
    c = generate_lasso(64, seed=10)
    assert not np.array_equal(a.problem.b, c.problem.b)


def test_generate_lasso_too_small():
    with pytest.raises(ValueError):
        generate_lasso(10, seed=0)


def _trace(rows):
    t = ConvergenceTrace()
    for k in range(rows):
        t.append(TraceRecord(k, 0.1 * k + 1 / 3, np.pi / (k + 1), 1e-7 / 3 ** k, k, 10 - k,
                             0.5 ** k, 1e-6 / 7))
    return t


def test_write_trace_empty(tmp_path):
    p = tmp_path / "t.csv"
    write_trace(ConvergenceTrace(), p)
    assert p.read_text().splitlines() == [",".join(TRACE_HEADER)]


def test_write_trace_round_trip(tmp_path):
    p = tmp_path / "t.csv"
    t = _trace(3)
    write_trace(t, p)
    assert len(p.read_text().splitlines()) == 4
    back = read_trace(p)
    for a, b in zip(t, back):
        for name in ("iteration", "time_s", "obj", "residual", "n_active", "n_nonactive",
                     "alpha", "epsilon"):
            assert getattr(a, name) == getattr(b, name)


def test_write_trace_bad_path(tmp_path):
    with pytest.raises(OSError, match="nope"):
        write_trace(_trace(1), tmp_path / "nope" / "t.csv")
