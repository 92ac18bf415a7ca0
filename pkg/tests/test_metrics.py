import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from emojivote.corpus import LabelMapping
from emojivote.exceptions import DataError
from emojivote.metrics import confusion, evaluate, report_render


def oracle_metrics(m):
    """Independent direct-formula evaluation over plain Python lists."""
    m = [[int(v) for v in row] for row in m]
    k = len(m)
    total = sum(sum(row) for row in m)
    per = []
    for c in range(k):
        tp = m[c][c]
        pred_c = sum(m[g][c] for g in range(k))
        gold_c = sum(m[c])
        p = tp / pred_c if pred_c else 0.0
        r = tp / gold_c if gold_c else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        per.append((p, r, f))
    acc = sum(m[c][c] for c in range(k)) / total
    macro = tuple(sum(x[i] for x in per) / k for i in range(3))
    return per, macro, acc


class TestConfusion:
    def test_basic(self):
        assert confusion([0, 0, 1], [0, 1, 1], 2).tolist() == [[1, 1], [0, 1]]

    def test_perfect_diagonal(self):
        m = confusion([0, 1, 2], [0, 1, 2], 3)
        assert np.array_equal(m, np.eye(3, dtype=int))

    def test_empty(self):
        assert confusion([], [], 2).tolist() == [[0, 0], [0, 0]]

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            confusion([0], [0, 1], 2)

    def test_out_of_range(self):
        with pytest.raises(DataError):
            confusion([0], [5], 2)


class TestEvaluate:
    def test_hand_example(self):
        r = evaluate(np.array([[2, 1], [0, 3]]))
        assert r.per_class[0].precision == pytest.approx(1.0)
        assert r.per_class[0].recall == pytest.approx(2 / 3)
        assert r.per_class[0].f1 == pytest.approx(0.8)
        assert r.per_class[1].precision == pytest.approx(0.75)
        assert r.per_class[1].recall == pytest.approx(1.0)
        assert r.per_class[1].f1 == pytest.approx(6 / 7)
        assert r.macro_f1 == pytest.approx((0.8 + 6 / 7) / 2)
        assert r.accuracy == pytest.approx(5 / 6)

    def test_perfect(self):
        r = evaluate(np.diag([3, 2, 5]))
        assert r.macro_f1 == 1.0
        assert r.accuracy == 1.0

    def test_absent_class_zero_convention(self):
        # class 2 never occurs in gold nor predictions
        r = evaluate(np.array([[2, 0, 0], [0, 2, 0], [0, 0, 0]]))
        assert r.per_class[2] .f1 == 0.0
        assert r.macro_f1 == pytest.approx(2 / 3)

    def test_single_class(self):
        r = evaluate(np.array([[4]]))
        assert r.macro_f1 == 1.0 and r.accuracy == 1.0

    def test_zero_total_rejected(self):
        with pytest.raises(DataError):
            evaluate(np.zeros((2, 2), dtype=int))

    def test_macro_is_mean_of_per_class(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            k = int(rng.integers(1, 10))
            m = rng.integers(0, 9, size=(k, k))
            if m.sum() == 0:
                m[0, 0] = 1
            r = evaluate(m)
            assert abs(r.macro_f1 - sum(c.f1 for c in r.per_class) / k) < 1e-12

    def test_random_matrix_oracle(self):
        rng = np.random.default_rng(123)
        for _ in range(200):
            k = int(rng.integers(1, 11))
            m = rng.integers(0, 12, size=(k, k))
            if m.sum() == 0:
                m[k - 1, 0] = 3
            r = evaluate(m)
            per, macro, acc = oracle_metrics(m)
            for got, (p, rr, f) in zip(r.per_class, per):
                assert abs(got.precision - p) < 1e-12
                assert abs(got.recall - rr) < 1e-12
                assert abs(got.f1 - f) < 1e-12
            assert abs(r.macro_precision - macro[0]) < 1e-12
            assert abs(r.macro_recall - macro[1]) < 1e-12
            assert abs(r.macro_f1 - macro[2]) < 1e-12
            assert abs(r.accuracy - acc) < 1e-12

    @given(st.integers(2, 6), st.data())
    def test_permutation_equivariance(self, k, data):
        m = np.array(
            data.draw(
                st.lists(
                    st.lists(st.integers(0, 8), min_size=k, max_size=k), min_size=k, max_size=k
                )
            )
        )
        if m.sum() == 0:
            m[0, 0] = 1
        perm = data.draw(st.permutations(range(k)))
        perm = list(perm)
        mp = m[np.ix_(perm, perm)]
        r1, r2 = evaluate(m), evaluate(mp)
        assert r1.accuracy == pytest.approx(r2.accuracy)
        assert r1.macro_f1 == pytest.approx(r2.macro_f1)
        assert r1.macro_precision == pytest.approx(r2.macro_precision)
        for new_pos, old in enumerate(perm):
            assert r2.per_class[new_pos] == r1.per_class[old]


class TestReportRender:
    def test_shapes(self):
        r = evaluate(np.array([[2, 1], [0, 3]]))
        text, grid = report_render(r, LabelMapping([(0, ":a:"), (1, ":b:")]))
        grid_lines = grid.strip().split("\n")
        assert len(grid_lines) == 3  # header + 2 rows
        assert grid_lines[0].split(",")[1:] == [":a:", ":b:"]
        metric_lines = text.strip().split("\n")
        assert len(metric_lines) == 4  # header + 2 classes + macro
        assert "macro" in metric_lines[-1]

    def test_macro_line_order_f1_p_r_acc(self):
        r = evaluate(np.array([[2, 1], [0, 3]]))
        text, _ = report_render(r, LabelMapping.identity(2))
        macro_line = text.strip().split("\n")[-1]
        fields = macro_line.split()
        assert fields[0] == "macro"
        assert float(fields[1]) == pytest.approx(r.macro_f1, abs=0.0051)
        assert float(fields[2]) == pytest.approx(r.macro_precision, abs=0.0051)
        assert float(fields[3]) == pytest.approx(r.macro_recall, abs=0.0051)
        assert float(fields[-1]) == pytest.approx(r.accuracy, abs=0.0051)

    def test_mapping_size_mismatch(self):
        r = evaluate(np.array([[1]]))
        with pytest.raises(DataError):
            report_render(r, LabelMapping.identity(3))
