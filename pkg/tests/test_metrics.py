"""Metric tests: confusion arithmetic, AUC agreement, degenerate cases."""

import numpy as np
import pytest

from topicgcn.metrics import auc_pairwise_oracle, auc_rank, evaluate


def _probs(p1):
    p1 = np.asarray(p1, dtype=np.float64)
    return np.column_stack([1.0 - p1, p1])


FULL = np.ones


class TestEvaluate:
    def test_perfect_predictions(self):
        labels = np.array([0, 1, 0, 1, 1])
        m = evaluate(_probs([0.1, 0.9, 0.2, 0.8, 0.7]), labels, FULL(5, dtype=bool))
        assert m.accuracy == 1.0
        assert m.precision == 1.0
        assert m.recall == 1.0
        assert m.f1 == 1.0
        assert m.auc == 1.0
        assert m.support == 5
        np.testing.assert_array_equal(m.confusion, [[2, 0], [0, 3]])

    def test_all_predicted_positive_half_wrong(self):
        labels = np.array([0, 0, 1, 1])
        m = evaluate(_probs([0.9, 0.8, 0.7, 0.6]), labels, FULL(4, dtype=bool))
        assert m.accuracy == 0.5
        assert m.precision == 0.5
        assert m.recall == 1.0
        assert m.f1 == pytest.approx(2.0 / 3.0)
        np.testing.assert_array_equal(m.confusion, [[0, 2], [0, 2]])

    def test_simple_ranking_auc(self):
        labels = np.array([1, 0, 0])
        m = evaluate(_probs([0.9, 0.8, 0.3]), labels, FULL(3, dtype=bool))
        assert m.auc == 1.0

    def test_tie_predicts_class_one(self):
        labels = np.array([1, 0])
        m = evaluate(_probs([0.5, 0.5]), labels, FULL(2, dtype=bool))
        np.testing.assert_array_equal(m.confusion, [[0, 1], [0, 1]])

    def test_single_class_mask_gives_no_auc(self):
        labels = np.array([1, 1, 1])
        m = evaluate(_probs([0.9, 0.2, 0.8]), labels, FULL(3, dtype=bool))
        assert m.auc is None
        assert m.accuracy == pytest.approx(2.0 / 3.0)
        assert m.recall == pytest.approx(2.0 / 3.0)

    def test_no_predicted_positives_zero_precision(self):
        labels = np.array([1, 1, 0])
        m = evaluate(_probs([0.1, 0.2, 0.3]), labels, FULL(3, dtype=bool))
        assert m.precision == 0.0
        assert m.recall == 0.0
        assert m.f1 == 0.0
        assert m.accuracy == pytest.approx(1.0 / 3.0)

    def test_per_class_swaps_positive(self):
        labels = np.array([0, 0, 1, 1])
        preds = [0.4, 0.6, 0.7, 0.2]  # predict 0,1,1,0
        m = evaluate(_probs(preds), labels, FULL(4, dtype=bool))
        c0 = m.per_class[0]
        # For class 0 as positive: tp=1 (doc 0), fp=1 (doc 3), fn=1 (doc 1).
        assert c0.precision == 0.5
        assert c0.recall == 0.5
        assert m.per_class[1].precision == 0.5
        assert m.per_class[1].f1 == m.f1

    def test_confusion_sums_to_support(self):
        rng = np.random.default_rng(0)
        labels = rng.integers(0, 2, size=40)
        labels[:2] = [0, 1]
        m = evaluate(_probs(rng.random(40)), labels, FULL(40, dtype=bool))
        assert m.confusion.sum() == m.support == 40
        tn, fp, fn, tp = m.confusion.ravel()
        assert m.accuracy == pytest.approx((tn + tp) / 40)

    def test_mask_restricts_evaluation(self):
        labels = np.array([0, 1, 0, 1])
        probs = _probs([0.9, 0.9, 0.1, 0.1])
        mask = np.array([True, True, False, False])
        m = evaluate(probs, labels, mask)
        assert m.support == 2
        assert m.accuracy == 0.5

    def test_integer_index_mask(self):
        labels = np.array([0, 1, 0, 1])
        probs = _probs([0.9, 0.9, 0.1, 0.1])
        by_bool = evaluate(probs, labels, np.array([True, False, False, True]))
        by_index = evaluate(probs, labels, np.array([0, 3]))
        assert by_bool.accuracy == by_index.accuracy
        np.testing.assert_array_equal(by_bool.confusion, by_index.confusion)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(1)
        labels = rng.integers(0, 2, size=30)
        labels[:2] = [0, 1]
        scores = rng.random(30)
        m0 = evaluate(_probs(scores), labels, FULL(30, dtype=bool))
        perm = rng.permutation(30)
        m1 = evaluate(_probs(scores[perm]), labels[perm], FULL(30, dtype=bool))
        assert m0.accuracy == m1.accuracy
        assert m0.f1 == m1.f1
        assert m0.auc == pytest.approx(m1.auc, abs=1e-12)
        np.testing.assert_array_equal(m0.confusion, m1.confusion)

    def test_empty_mask_rejected(self):
        with pytest.raises(ValueError):
            evaluate(_probs([0.5]), np.array([1]), np.zeros(1, dtype=bool))


class TestAuc:
    def test_separated_scores(self):
        scores = np.array([0.9, 0.8, 0.2, 0.1])
        labels = np.array([1, 1, 0, 0])
        assert auc_rank(scores, labels) == 1.0
        assert auc_pairwise_oracle(scores, labels) == 1.0

    def test_reversed_scores(self):
        scores = np.array([0.1, 0.2, 0.8])
        labels = np.array([1, 1, 0])
        assert auc_rank(scores, labels) == 0.0

    def test_all_ties_give_half(self):
        scores = np.full(10, 0.37)
        labels = np.array([1, 0] * 5)
        assert auc_rank(scores, labels) == 0.5
        assert auc_pairwise_oracle(scores, labels) == 0.5

    def test_partial_ties_hand_value(self):
        # Pairs: (0.9,0.5) win, (0.9,0.1) win, (0.5,0.5) tie, (0.5,0.1) win.
        scores = np.array([0.9, 0.5, 0.5, 0.1])
        labels = np.array([1, 1, 0, 0])
        expected = (3 + 0.5) / 4
        assert auc_pairwise_oracle(scores, labels) == expected
        assert auc_rank(scores, labels) == pytest.approx(expected, abs=1e-12)

    def test_rank_equals_oracle_on_random_sets(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            n = int(rng.integers(2, 200))
            labels = rng.integers(0, 2, size=n)
            labels[:2] = [0, 1]
            # Quantized scores force plenty of ties.
            scores = np.round(rng.random(n), 2)
            assert auc_rank(scores, labels) == pytest.approx(
                auc_pairwise_oracle(scores, labels), abs=1e-12
            )

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            auc_rank(np.array([0.1, 0.2]), np.array([1, 1]))
        with pytest.raises(ValueError):
            auc_pairwise_oracle(np.array([0.1, 0.2]), np.array([0, 0]))
