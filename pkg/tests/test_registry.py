"""
Tests for the estimator registry, plugin discovery and the built-in estimators'
protocol surface.
"""

import numpy as np
import pytest

from cli.scanner import discover_estimators, discover_plugins
from core.models.detections import WorldPseudoMeasurement
from core.models.states import COMMON_LABELS, CommonState, FilterInit, MeasurementFrame, NoiseParams
from core.protocols import Estimator, TargetTruth
from core.registry import EstimatorRegistry, default_registry
from filters.plkf import predict_common, update_common
from plugins.estimators import FilterEstimator

BUILTINS = {"bearing-box": 7, "bearing-box-mav": 10, "bearing-only": 6, "bearing-angle": 7}


class TestRegistry:
    def test_builtins(self):
        registry = default_registry()
        assert sorted(registry.names()) == sorted(BUILTINS)
        assert registry.requires_attitude("bearing-box-mav")
        assert not registry.requires_attitude("bearing-box")

    def test_fresh_instance_per_create(self):
        registry = default_registry()
        a = registry.create("bearing-box", NoiseParams())
        b = registry.create("bearing-box", NoiseParams())
        assert a is not b
        assert isinstance(a, Estimator)

    def test_unknown_name(self):
        registry = default_registry()
        with pytest.raises(KeyError, match="Available"):
            registry.create("kalman-magic", NoiseParams())
        with pytest.raises(KeyError):
            registry.requires_attitude("kalman-magic")
        with pytest.raises(KeyError):
            registry.validate(["bearing-box", "kalman-magic"])
        assert not registry.has("kalman-magic")

    def test_factory_must_build_an_estimator(self):
        registry = EstimatorRegistry()
        registry.register("broken", lambda noise: object())
        with pytest.raises(TypeError, match="protocol"):
            registry.create("broken", NoiseParams())


class TestBuiltinEstimators:
    @pytest.mark.parametrize("name, dim", list(BUILTINS.items()))
    def test_snapshot_layout(self, name, dim):
        est = default_registry().create(name, NoiseParams())
        est.initialize(FilterInit(p0=(1.0, 2.0, 3.0)))
        snap = est.snapshot()
        assert len(snap.labels) == dim == snap.vector.size
        assert snap.cov.shape == (dim, dim)
        np.testing.assert_array_equal(snap.position, [1.0, 2.0, 3.0])
        assert (snap.acceleration is not None) == (name == "bearing-box-mav")

    @pytest.mark.parametrize("name", list(BUILTINS))
    def test_use_before_initialize(self, name):
        est = default_registry().create(name, NoiseParams())
        assert isinstance(est, FilterEstimator)
        with pytest.raises(RuntimeError, match=f"{name}: estimator used before initialize"):
            est.snapshot()
        with pytest.raises(RuntimeError, match="initialize"):
            est.predict(0.1)

    def test_steps_delegate_to_the_filter_functions(self):
        noise = NoiseParams()
        init = FilterInit(p0=(1.0, 2.0, -1.0), v0=(0.2, 0.0, 0.0))
        frame = MeasurementFrame(
            t_bar=WorldPseudoMeasurement(t_bar=np.array([10.0, 1.0, -1.0]), timestamp=0.1),
            p_cw=np.array([-9.0, 1.0, 0.0]),
            timestamp=0.1,
        )
        est = default_registry().create("bearing-box", noise)
        est.initialize(init)
        est.predict(0.1)
        est.update(frame)

        expected = CommonState(p=np.array(init.p0), v=np.array(init.v0), alpha=init.alpha0,
                               cov=init.covariance(COMMON_LABELS))
        expected = update_common(predict_common(expected, 0.1, noise), frame, noise)
        np.testing.assert_array_equal(est.snapshot().vector, expected.vector)
        np.testing.assert_array_equal(est.snapshot().cov, expected.cov)

    def test_truth_vectors(self):
        truth = TargetTruth(
            position=np.array([1.0, 2.0, 3.0]),
            velocity=np.array([0.1, 0.2, 0.3]),
            acceleration=np.array([0.0, 0.0, 0.5]),
            alpha=0.92,
        )
        registry = default_registry()
        assert registry.create("bearing-box", NoiseParams()).truth_vector(truth)[-1] == 0.92
        assert registry.create("bearing-box-mav", NoiseParams()).truth_vector(truth).size == 10
        assert registry.create("bearing-only", NoiseParams()).truth_vector(truth).size == 6
        assert registry.create("bearing-angle", NoiseParams()).truth_vector(truth) is None


class TestScanner:
    def test_discovers_builtins(self):
        found = {p.name: p for p in discover_estimators()}
        assert {name: p.state_dim for name, p in found.items()} == BUILTINS
        assert found["bearing-box-mav"].requires_attitude
        assert found["bearing-box"].module_path == "plugins.estimators.bearing_box"
        assert found["bearing-box"].category_label == "Estimators"

    def test_reads_metadata_without_importing(self, tmp_path):
        pkg = tmp_path / "plugins" / "estimators"
        pkg.mkdir(parents=True)
        (pkg / "_private.py").write_text("PLUGIN_META = {'name': 'hidden', 'category': 'estimator'}\n")
        (pkg / "toy.py").write_text(
            "import not_a_real_module\n"
            "PLUGIN_META = {'name': 'toy', 'category': 'estimator', 'state_dim': 4}\n"
        )
        found = discover_plugins(tmp_path / "plugins")
        assert [p.name for p in found["estimator"]] == ["toy"]
        assert found["estimator"][0].state_dim == 4
        assert found["estimator"][0].display_name == "toy"

    def test_unparsable_plugin_is_skipped(self, tmp_path):
        pkg = tmp_path / "plugins" / "estimators"
        pkg.mkdir(parents=True)
        (pkg / "broken.py").write_text("def (:\n")
        assert discover_estimators(tmp_path / "plugins") == []
