"""Declarative pipeline configuration: one JSON file, flag overrides, hashing.

Every artifact the pipeline writes carries a provenance header built from
``config_hash`` and the seed, so a pair of runs can be diffed byte-for-byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .rhyme import RhymeParams


class ConfigError(ValueError):
    pass


class MissingInputError(FileNotFoundError):
    pass


@dataclass
class PipelineConfig:
    corpus_root: str = "corpus"
    output_dir: str = "out"
    artists: list[str] = field(default_factory=list)  # empty -> all subdirs
    seed: int = 42
    min_tokens: int = 20
    window_lines: int = 2
    min_span: int = 1
    max_span: int = 4
    literal_entropy: bool = False
    dictionary: str | None = None  # None -> packaged mini dictionary
    checkpoint_root: str | None = None
    total_iterations: int = 16000
    baseline_verses: int = 5
    max_tokens: int = 1100
    eval_verses_per_artist: int = 5
    pool_min_tokens: int = 40
    service_port: int = 8765
    roster: list[str] = field(default_factory=lambda: ["ann1", "ann2"])
    admin_token: str = "change-me"

    def rhyme_params(self) -> RhymeParams:
        return RhymeParams(window_lines=self.window_lines,
                           min_span=self.min_span, max_span=self.max_span,
                           literal_entropy=self.literal_entropy)


_FIELDS = {f.name: f for f in fields(PipelineConfig)}


def load_config(path: str | Path | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    unknown = sorted(set(doc) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    return PipelineConfig(**doc)


def _coerce(name: str, raw: str):
    """Parse a command-line override value against the field's type."""
    hint = _FIELDS[name].type
    if "bool" in hint:
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ConfigError(f"{name} expects a boolean, got {raw!r}")
    if "list[str]" in hint:
        return [s for s in raw.split(",") if s]
    if "int" in hint:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{name} expects an integer, got {raw!r}") from None
    if raw.lower() == "none":
        return None
    return raw


def apply_overrides(cfg: PipelineConfig, pairs: list[str]) -> PipelineConfig:
    """Apply ``key=value`` flags on top of the loaded config."""
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override {pair!r} is not key=value")
        name, raw = pair.split("=", 1)
        if name not in _FIELDS:
            raise ConfigError(f"unknown config key {name!r}")
        setattr(cfg, name, _coerce(name, raw))
    return cfg


def config_hash(cfg: PipelineConfig) -> str:
    canon = json.dumps(asdict(cfg), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def require_dir(path: str | Path | None, what: str) -> Path:
    if path is None:
        raise MissingInputError(f"{what} is not configured")
    p = Path(path)
    if not p.is_dir():
        raise MissingInputError(f"{what} not found: {p}")
    return p
