"""Configuration loader -- scenario YAML files + .env, validated with Pydantic.

Resolves ${ENV_VAR} references in YAML values from environment variables.
A scenario file may start from a built-in scenario with `base: <name>` and
override any part of it. Every failure becomes a ConfigError naming the key.
"""

from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from core.errors import ConfigError
from core.models.scenarios import RunConfig, Scenario

logger = logging.getLogger(__name__)

SEED_ENV = "BBX_SEED"

_ENV_PATTERN = re.compile(r"\$\{(\w+)\}")


def _resolve_env_vars(value: Any) -> Any:
    """Recursively resolve ${ENV_VAR} references in config values."""
    if isinstance(value, str):
        def replacer(match: re.Match) -> str:
            var_name = match.group(1)
            env_value = os.environ.get(var_name)
            if env_value is None:
                logger.warning("Environment variable %s not set", var_name)
                return match.group(0)  # leave unresolved
            return env_value
        return _ENV_PATTERN.sub(replacer, value)
    elif isinstance(value, dict):
        return {k: _resolve_env_vars(v) for k, v in value.items()}
    elif isinstance(value, list):
        return [_resolve_env_vars(item) for item in value]
    return value


def _deep_merge(base: dict, override: dict) -> dict:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _error_path(err: dict) -> str:
    return ".".join(str(part) for part in err["loc"]) or "<root>"


def format_validation_error(e: ValidationError, source: str) -> str:
    problems = [f"{_error_path(err)}: {err['msg']}" for err in e.errors()]
    return f"{source}: " + "; ".join(problems)


def load_env(env_path: str | Path | None = None) -> None:
    """Load .env from `env_path` or the working directory, if present."""
    path = Path(env_path) if env_path is not None else Path.cwd() / ".env"
    if path.exists():
        load_dotenv(path)
        logger.info("Loaded environment from %s", path)
    else:
        logger.debug("No .env file at %s", path)


def load_scenario_file(path: str | Path, env_path: str | Path | None = None) -> Scenario:
    """Load and validate a scenario YAML file.

    1. Load .env into environment variables
    2. Load the YAML and resolve ${ENV_VAR} references
    3. Merge over the built-in scenario named by `base`, if any
    4. Validate against the Scenario model
    """
    load_env(env_path)
    path = Path(path)
    try:
        with open(path) as f:
            raw = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read scenario file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: invalid YAML: {e}") from e

    if raw is None:
        raise ConfigError(f"{path}: scenario file is empty")
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping, got {type(raw).__name__}")

    resolved = _resolve_env_vars(raw)
    base_name = resolved.pop("base", None)
    if base_name is not None:
        from simulator.catalog import get_scenario

        try:
            base = get_scenario(str(base_name))
        except KeyError as e:
            raise ConfigError(f"{path}: base: {e.args[0]}") from e
        resolved = _deep_merge(base.model_dump(mode="python"), resolved)
    resolved.setdefault("name", path.stem)

    try:
        scenario = Scenario.model_validate(resolved)
    except ValidationError as e:
        raise ConfigError(format_validation_error(e, str(path))) from e
    logger.info("Loaded scenario %s from %s", scenario.name, path)
    return scenario


def resolve_seed(cli_seed: int | None, scenario_seed: int) -> int:
    """CLI flag, else BBX_SEED, else the scenario's own seed."""
    if cli_seed is not None:
        return cli_seed
    env_value = os.environ.get(SEED_ENV)
    if env_value is None or not env_value.strip():
        return scenario_seed
    try:
        seed = int(env_value)
    except ValueError as e:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {env_value!r}") from e
    if not 0 <= seed < 2**64:
        raise ConfigError(f"{SEED_ENV} must be in [0, 2^64), got {seed}")
    return seed


def parse_noise_overrides(pairs: list[str]) -> dict[str, float]:
    """['sigma_h=0.05', ...] -> {'sigma_h': 0.05}."""
    overrides: dict[str, float] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"noise override must look like key=value, got {pair!r}")
        try:
            overrides[key.strip()] = float(value)
        except ValueError as e:
            raise ConfigError(f"noise.{key.strip()}: not a number: {value!r}") from e
    return overrides


def build_scenario(cfg: RunConfig) -> Scenario:
    """Scenario for a run: built-in or file, then CLI overrides, then seed."""
    if cfg.scenario_file is not None:
        scenario = load_scenario_file(cfg.scenario_file)
    else:
        load_env()
        from simulator.catalog import get_scenario

        try:
            scenario = get_scenario(cfg.scenario)
        except KeyError as e:
            raise ConfigError(str(e.args[0])) from e

    update: dict[str, Any] = {"seed": resolve_seed(cfg.seed, scenario.seed)}
    if cfg.dt is not None:
        update["dt"] = cfg.dt
    if cfg.duration is not None:
        update["duration"] = cfg.duration
    if cfg.noise_overrides:
        update["noise"] = scenario.noise.model_dump() | cfg.noise_overrides
    if cfg.estimators is not None:
        update["estimators"] = cfg.estimators

    try:
        return Scenario.model_validate(scenario.model_dump() | update)
    except ValidationError as e:
        raise ConfigError(format_validation_error(e, "command line")) from e
