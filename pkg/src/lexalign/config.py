"""Run configuration: flat key=value files plus command-line overrides.

Every knob of every pipeline stage is a named key with a typed default;
unknown keys are rejected so typos fail loudly. Command-line flags mirror the
keys and take precedence over file values.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

METHODS = ("semi-sup", "self-sup", "self-sup-re")


@dataclass
class RunConfig:
    # paths
    src_embeddings: str = ""
    tgt_embeddings: str = ""
    seed_dict: str = ""
    test_dict: str = ""
    adversarial_checkpoint: str = ""
    output_dir: str = "run_out"
    # pipeline selection
    method: str = "semi-sup"
    direction: str = ""  # report label; defaults to "<src_lang>-<tgt_lang>"
    max_vocab: int = 200_000
    figures: bool = True
    # retrieval
    csls_k: int = 10
    dict_top_pairs: int = 50_000
    mutual_only: bool = True
    # seed-anchored refinement loop
    n_iterations: int = 5
    # adversarial training
    epochs: int = 5
    steps_per_epoch: int = 100_000
    batch_size: int = 32
    beta: float = 0.001
    learning_rate: float = 0.1
    lr_decay: float = 0.98
    lr_shrink: float = 0.5
    sample_top_n: int = 0
    label_smoothing: float = 0.1
    hidden_size: int = 2048
    input_dropout: float = 0.1
    leaky_slope: float = 0.2
    init: str = "identity"
    log_every: int = 100
    validation_top_n: int = 500
    # pseudo-seed harvesting
    s_anchor_pairs: int = 5000
    # reproducibility
    rng_seed: int = 0


CONFIG_TYPES: dict[str, type] = {f.name: f.type for f in fields(RunConfig)}  # type: ignore[misc]
_FIELD_TYPES = {f.name: type(getattr(RunConfig(), f.name)) for f in fields(RunConfig)}


class ConfigError(ValueError):
    """An unknown key, a bad value, or a failed validation check."""


def _parse_value(key: str, raw: str):
    typ = _FIELD_TYPES[key]
    if typ is bool:
        lowered = raw.strip().lower()
        if lowered in ("true", "yes", "1", "on"):
            return True
        if lowered in ("false", "no", "0", "off"):
            return False
        raise ConfigError(f"key {key!r}: expected a boolean, got {raw!r}")
    try:
        return typ(raw.strip())
    except ValueError:
        raise ConfigError(
            f"key {key!r}: expected {typ.__name__}, got {raw!r}"
        ) from None


def parse_config(path: str | Path | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from an optional file and override mapping.

    File lines are ``key = value``; ``#`` starts a comment. Overrides (parsed
    CLI flags) win over file values; ``None`` overrides are ignored.
    """
    cfg = RunConfig()
    if path is not None:
        path = Path(path)
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                stripped = line.split("#", 1)[0].strip()
                if not stripped:
                    continue
                if "=" not in stripped:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, raw = (part.strip() for part in stripped.split("=", 1))
                if key not in _FIELD_TYPES:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                setattr(cfg, key, _parse_value(key, raw))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown key {key!r}")
        setattr(cfg, key, value)
    return cfg


def validate_run_config(cfg: RunConfig) -> None:
    """Check paths and method-specific requirements before any compute."""
    if cfg.method not in METHODS:
        raise ConfigError(
            f"method must be one of {', '.join(METHODS)}; got {cfg.method!r}"
        )
    if not cfg.src_embeddings or not cfg.tgt_embeddings:
        raise ConfigError("src_embeddings and tgt_embeddings are required")
    required = {"src_embeddings": cfg.src_embeddings, "tgt_embeddings": cfg.tgt_embeddings}
    if cfg.method == "semi-sup":
        if not cfg.seed_dict:
            raise ConfigError("method semi-sup requires seed_dict")
        required["seed_dict"] = cfg.seed_dict
    if cfg.test_dict:
        required["test_dict"] = cfg.test_dict
    if cfg.adversarial_checkpoint:
        required["adversarial_checkpoint"] = cfg.adversarial_checkpoint
    for name, p in required.items():
        if not Path(p).exists():
            raise ConfigError(f"{name} path does not exist: {p}")
    if cfg.max_vocab < 1:
        raise ConfigError("max_vocab must be positive")
