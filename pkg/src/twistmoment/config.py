"""Run configuration: a dataclass plus a plain ``key = value`` file format."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError


@dataclass
class RunConfig:
    weight: int = 18
    table_limit: int = 640_000
    cache_dir: str = ""
    target_eps: float = 1e-12
    kernel: str = "grid"
    grid_points: int = 4000
    contour_c: float = 0.25
    audit_fraction: float = 0.01
    audit_tol: float = 1e-6
    prime_cutoff: int = 100_000
    smoothing: float = 10_000.0
    chunk_size: int = 32
    workers: int = 1

    def cache(self) -> str | None:
        return self.cache_dir or None


def _coerce(raw: str, kind):
    if kind in (int, "int"):
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    if kind in (float, "float"):
        return float(raw)
    return raw


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment; unknown keys are errors."""
    cfg = dataclasses.replace(base) if base else RunConfig()
    fields = {f.name: f.type for f in dataclasses.fields(RunConfig)}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected key = value")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in fields:
            raise DomainError(f"config line {lineno}: unknown key {key!r}")
        try:
            setattr(cfg, key, _coerce(raw, fields[key]))
        except ValueError as exc:
            raise DomainError(f"config line {lineno}: bad value for {key}: {raw!r}") from exc
    return cfg


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    return parse_config(Path(path).read_text())
