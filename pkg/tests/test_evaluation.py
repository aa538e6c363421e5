"""Distance report and fidelity scoring tests."""

import numpy as np
import pytest

from latentlens.evaluation import (
    DISTANCE_ROW_LABELS,
    DistanceReport,
    distance_report,
    fidelity_check,
    mean_euclidean,
    surrogate_fidelity,
)
from latentlens.explainer import (
    Explanation,
    OracleDataset,
    SurrogateFit,
    explain,
    fit_latent_surrogate,
)
from latentlens.models import build_decoder, build_encoder, build_predictor, predict_proba


def build_stack(v=12, latent=3):
    predictor = build_predictor(v, [8, 5], latent_dim=latent, seed=0)
    encoder = build_encoder(predictor)
    decoder = build_decoder(latent, [5, 8], output_dim=v, seed=1)
    return predictor, encoder, decoder


def sparse_instance(v=12):
    x = np.zeros(v)
    x[[1, 4, 7, 9]] = [0.5, 0.5, 0.5, 0.5]
    return x


class TestMeanEuclidean:
    def test_single_point_at_origin(self):
        assert mean_euclidean(np.zeros((1, 3)), np.zeros(3)) == 0.0

    def test_hand_value(self):
        points = np.array([[1.0, 0.0], [0.0, 1.0]])
        assert mean_euclidean(points, np.zeros(2)) == pytest.approx(1.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mean_euclidean(np.zeros((0, 2)), np.zeros(2))

    def test_translation_invariance(self):
        rng = np.random.default_rng(0)
        points = rng.normal(size=(8, 4))
        origin = rng.normal(size=4)
        shift = rng.normal(size=4)
        a = mean_euclidean(points, origin)
        b = mean_euclidean(points + shift, origin + shift)
        assert a == pytest.approx(b, abs=1e-9)

    def test_row_order_invariance(self):
        rng = np.random.default_rng(1)
        points = rng.normal(size=(10, 3))
        origin = rng.normal(size=3)
        shuffled = points[rng.permutation(10)]
        assert mean_euclidean(points, origin) == pytest.approx(
            mean_euclidean(shuffled, origin)
        )


class TestDistanceReport:
    def test_fields_finite_and_nonnegative(self):
        predictor, encoder, decoder = build_stack()
        report = distance_report(sparse_instance(), encoder, decoder)
        for value in report.values_in_row_order():
            assert np.isfinite(value)
            assert value >= 0

    def test_sampled_mode(self):
        predictor, encoder, decoder = build_stack()
        report = distance_report(
            sparse_instance(), encoder, decoder, mode="sampled", n_samples=50, seed=3
        )
        assert report.lime_original > 0

    def test_unknown_mode(self):
        predictor, encoder, decoder = build_stack()
        with pytest.raises(ValueError):
            distance_report(sparse_instance(), encoder, decoder, mode="both")

    def test_table_rendering(self):
        report = DistanceReport(0.3961, 0.9444, 0.2163, 0.7635)
        table = report.as_table()
        lines = table.splitlines()
        assert "Euclidean distance" in lines[0]
        assert len(lines) == 5
        for label, line in zip(DISTANCE_ROW_LABELS, lines[1:]):
            assert line.startswith(label)
        assert lines[1].endswith("0.3961")

    def test_ordering_predicate(self):
        assert DistanceReport(0.3961, 0.9444, 0.2163, 0.7635).ordering_holds()
        assert not DistanceReport(0.9, 0.2, 0.3, 0.1).ordering_holds()

    def test_json_dict_has_four_fields(self):
        report = DistanceReport(1.0, 2.0, 3.0, 4.0)
        assert set(report.to_dict()) == {
            "lime_original", "lime_encoded", "latent_encoded", "latent_decoded",
        }


class TestFidelityCheck:
    def test_direction_agreement_recorded(self):
        predictor, encoder, decoder = build_stack()
        x = sparse_instance()
        fit = fit_latent_surrogate(x, encoder, decoder, predictor)
        expl = explain(
            x, fit.coefficients, fit.intercept, predictor,
            [f"w{i}" for i in range(12)], "spam",
        )
        results = fidelity_check(x, expl, predictor, top_k=3)
        assert 1 <= len(results) <= 3
        before = predict_proba(predictor, x)
        for res in results:
            assert res.prob_before == pytest.approx(before)
            delta = res.prob_before - res.prob_after_removal
            expected = (delta > 0) if res.contribution_sign == "+" else (delta < 0)
            assert res.agrees == expected

    def test_zero_contribution_features_never_ranked(self):
        predictor, _, _ = build_stack()
        x = sparse_instance()
        contributions = np.zeros(12)
        contributions[4] = 0.3
        expl = Explanation(
            feature_names=[f"w{i}" for i in range(12)],
            contributions=contributions,
            intercept=0.0,
            predicted_probability=0.5,
            positive_class_name="spam",
        )
        results = fidelity_check(x, expl, predictor, top_k=5)
        assert [r.feature for r in results] == ["w4"]

    def test_unchanged_probability_is_disagreement(self):
        predictor, _, _ = build_stack()
        x = sparse_instance()
        # feature 0 is off-support, so zeroing it cannot move the probability
        contributions = np.zeros(12)
        contributions[0] = 1.0
        x_with_zero_imp = x.copy()
        x_with_zero_imp[0] = 0.0
        expl = Explanation(
            feature_names=[f"w{i}" for i in range(12)],
            contributions=contributions,
            intercept=0.0,
            predicted_probability=predict_proba(predictor, x_with_zero_imp),
            positive_class_name="spam",
        )
        results = fidelity_check(x_with_zero_imp, expl, predictor, top_k=1)
        assert results[0].agrees is False

    def test_top_k_validation(self):
        predictor, _, _ = build_stack()
        expl = Explanation(["a"], np.array([1.0]), 0.0, 0.5, "spam")
        with pytest.raises(ValueError):
            fidelity_check(np.ones(1), expl, predictor, top_k=0)


class TestSurrogateFidelity:
    def test_exact_surrogate_scores_one(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(20, 4))
        beta = np.array([0.1, -0.2, 0.05, 0.0])
        y = np.clip(X @ beta + 0.4, 0, 1)
        fit = SurrogateFit(beta, 0.4, OracleDataset(X, y), alpha=0.0)
        score = surrogate_fidelity(fit, fit.oracle)
        assert score["r2"] == pytest.approx(1.0)
        assert score["mse"] == pytest.approx(0.0, abs=1e-20)

    def test_constant_surrogate_scores_zero(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(15, 3))
        y = rng.uniform(0, 1, 15)
        fit = SurrogateFit(np.zeros(3), float(y.mean()), OracleDataset(X, y), alpha=1.0)
        assert surrogate_fidelity(fit, fit.oracle)["r2"] == pytest.approx(0.0, abs=1e-12)

    def test_zero_variance_targets(self):
        X = np.ones((5, 2))
        y = np.full(5, 0.3)
        fit = SurrogateFit(np.zeros(2), 0.25, OracleDataset(X, y), alpha=1.0)
        score = surrogate_fidelity(fit, fit.oracle)
        assert score["r2"] is None
        assert score["mse"] == pytest.approx(0.05**2)

    def test_near_overfit_latent_surrogate(self):
        predictor, encoder, decoder = build_stack()
        fit = fit_latent_surrogate(sparse_instance(), encoder, decoder, predictor, alpha=1e-3)
        score = surrogate_fidelity(fit, fit.oracle)
        if score["r2"] is not None:
            assert score["r2"] > 0.9
