"""
Tests for core.config: scenario YAML files, environment handling, seeds and
run overrides.
"""

import pytest
from pydantic import ValidationError

from core.config import (
    SEED_ENV,
    build_scenario,
    load_scenario_file,
    parse_noise_overrides,
    resolve_seed,
)
from core.errors import ConfigError
from core.models.scenarios import RunConfig


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


def write(tmp_path, text: str, name: str = "scenario.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


MINIMAL = """
observer:
  kind: stationary
  origin: [-10.0, 0.0, -1.0]
target:
  kind: constant_velocity
  origin: [0.0, 0.0, -2.0]
  velocity: [0.0, 0.3, 0.0]
target_cuboid:
  dims: [0.92, 0.92, 0.55]
estimators: [bearing-box, bearing-only]
"""


class TestScenarioFile:
    def test_minimal_file(self, tmp_path):
        sc = load_scenario_file(write(tmp_path, MINIMAL, "drift.yaml"), env_path=tmp_path / ".env")
        assert sc.name == "drift"
        assert sc.target.velocity == (0.0, 0.3, 0.0)
        assert sc.target_cuboid.alpha == 0.92
        assert sc.dt == 0.02 and sc.seed == 0

    def test_base_scenario_is_merged(self, tmp_path):
        text = "base: case4\nname: faster\nnoise:\n  sigma_h: 0.05\ntarget:\n  speed: 6.0\n"
        sc = load_scenario_file(write(tmp_path, text), env_path=tmp_path / ".env")
        assert sc.name == "faster"
        assert sc.noise.sigma_h == 0.05
        assert sc.noise.sigma_tbar == 0.2
        assert sc.target.speed == 6.0 and sc.target.radius == 4.0
        assert sc.target_is_mav

    def test_environment_references(self, tmp_path, monkeypatch):
        monkeypatch.setenv("BBX_TEST_DURATION", "3.5")
        sc = load_scenario_file(write(tmp_path, MINIMAL + "duration: ${BBX_TEST_DURATION}\n"),
                                env_path=tmp_path / ".env")
        assert sc.duration == 3.5

    def test_dotenv_file(self, tmp_path, monkeypatch):
        # registered so teardown removes what load_dotenv sets
        monkeypatch.setenv("BBX_TEST_DT", "unset")
        monkeypatch.delenv("BBX_TEST_DT")
        env = write(tmp_path, "BBX_TEST_DT=0.05\n", ".env")
        sc = load_scenario_file(write(tmp_path, MINIMAL + "dt: ${BBX_TEST_DT}\n"), env_path=env)
        assert sc.dt == 0.05

    def test_unresolved_reference_is_a_config_error(self, tmp_path, monkeypatch):
        monkeypatch.delenv("BBX_TEST_MISSING", raising=False)
        with pytest.raises(ConfigError, match="duration"):
            load_scenario_file(write(tmp_path, MINIMAL + "duration: ${BBX_TEST_MISSING}\n"),
                               env_path=tmp_path / ".env")

    def test_unknown_key_names_its_path(self, tmp_path):
        text = MINIMAL.replace("kind: stationary", "kind: stationary\n  wobble: 1")
        with pytest.raises(ConfigError, match=r"observer\.wobble"):
            load_scenario_file(write(tmp_path, text), env_path=tmp_path / ".env")

    def test_bad_value_names_its_path(self, tmp_path):
        with pytest.raises(ConfigError, match=r"noise\.sigma_h"):
            load_scenario_file(write(tmp_path, "base: case4\nnoise:\n  sigma_h: -1\n"), env_path=tmp_path / ".env")

    @pytest.mark.parametrize("text, message", [
        ("", "empty"),
        ("- a\n- b\n", "mapping"),
        ("a: [1, 2\n", "invalid YAML"),
        ("base: case9\n", "base"),
    ])
    def test_rejected_files(self, tmp_path, text, message):
        with pytest.raises(ConfigError, match=message):
            load_scenario_file(write(tmp_path, text), env_path=tmp_path / ".env")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_scenario_file(tmp_path / "absent.yaml", env_path=tmp_path / ".env")


class TestSeed:
    def test_flag_wins(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "11")
        assert resolve_seed(5, 0) == 5

    def test_environment_next(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "11")
        assert resolve_seed(None, 0) == 11

    def test_scenario_last(self, monkeypatch):
        assert resolve_seed(None, 42) == 42
        monkeypatch.setenv(SEED_ENV, "  ")
        assert resolve_seed(None, 42) == 42

    @pytest.mark.parametrize("value", ["abc", "-1", str(2**64)])
    def test_bad_environment_value(self, monkeypatch, value):
        monkeypatch.setenv(SEED_ENV, value)
        with pytest.raises(ConfigError, match=SEED_ENV):
            resolve_seed(None, 0)


class TestOverrides:
    def test_parse(self):
        assert parse_noise_overrides(["sigma_h=0.05", " sigma_tbar = 0.3"]) == {"sigma_h": 0.05, "sigma_tbar": 0.3}
        assert parse_noise_overrides([]) == {}

    @pytest.mark.parametrize("pair", ["sigma_h", "=0.1", "sigma_h=fast"])
    def test_parse_rejects(self, pair):
        with pytest.raises(ConfigError):
            parse_noise_overrides([pair])

    def test_run_config_rejects_unknown_noise_key(self):
        with pytest.raises(ValidationError, match="sigma_x"):
            RunConfig(scenario="case4", noise_overrides={"sigma_x": 1.0})

    def test_run_config_rejects_empty_estimator_set(self):
        with pytest.raises(ValidationError):
            RunConfig(scenario="case4", estimators=[])


class TestBuildScenario:
    def test_builtin_with_overrides(self):
        sc = build_scenario(RunConfig(
            scenario="case4", seed=3, duration=2.0, dt=0.05,
            noise_overrides={"sigma_h": 0.05}, estimators=["bearing-only"],
        ))
        assert (sc.name, sc.seed, sc.duration, sc.dt) == ("case4", 3, 2.0, 0.05)
        assert sc.noise.sigma_h == 0.05 and sc.noise.sigma_tbar == 0.2
        assert sc.estimators == ["bearing-only"]
        assert sc.frame_count == 41

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "99")
        assert build_scenario(RunConfig(scenario="case1")).seed == 99

    def test_from_file(self, tmp_path):
        path = write(tmp_path, MINIMAL + "seed: 8\n")
        sc = build_scenario(RunConfig(scenario_file=path))
        assert sc.seed == 8

    def test_unknown_scenario(self):
        with pytest.raises(ConfigError, match="case9"):
            build_scenario(RunConfig(scenario="case9"))

    def test_inconsistent_overrides(self):
        with pytest.raises(ConfigError, match="command line"):
            build_scenario(RunConfig(scenario="case4", dt=1.0, duration=0.5))
