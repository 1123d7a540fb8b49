"""Configuration files (TOML or JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import tomli

from .clusterer import ClusterParams
from .detector import Thresholds
from .errors import UsageError
from .ingest import IngestConfig

_CLUSTER_KEYS = {f.name for f in fields(ClusterParams)}
_THRESHOLD_KEYS = {f.name for f in fields(Thresholds)}


@dataclass
class Config:
    cluster: ClusterParams = field(default_factory=ClusterParams)
    thresholds: Thresholds = field(default_factory=Thresholds)
    ingest: IngestConfig = field(default_factory=IngestConfig)


def parse_config(raw: dict) -> Config:
    """Build a Config from a mapping.

    Cluster parameters may sit at top level or under ``[cluster]``;
    thresholds under ``[thresholds]``.
    """
    raw = dict(raw)
    cluster_kw = dict(raw.pop("cluster", {}) or {})
    thresholds_kw = dict(raw.pop("thresholds", {}) or {})
    ingest_kw = {}
    for k in ("include_dirs", "exclude_globs"):
        if k in raw:
            ingest_kw[k] = [str(x) for x in raw.pop(k)]
    if "stop_words" in raw:
        ingest_kw["stop_words"] = frozenset(str(w).lower() for w in raw.pop("stop_words"))
    for k in list(raw):
        if k in _CLUSTER_KEYS:
            cluster_kw[k] = raw.pop(k)
        elif k in _THRESHOLD_KEYS:
            thresholds_kw[k] = raw.pop(k)
    unknown = sorted(raw) + sorted(set(cluster_kw) - _CLUSTER_KEYS) + sorted(set(thresholds_kw) - _THRESHOLD_KEYS)
    if unknown:
        raise UsageError(f"unknown configuration key(s): {', '.join(unknown)}")
    try:
        return Config(ClusterParams(**cluster_kw), Thresholds(**thresholds_kw), IngestConfig(**ingest_kw))
    except TypeError as exc:
        raise UsageError(f"bad configuration: {exc}") from None


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise UsageError(f"{p}: cannot read configuration ({exc.strerror})") from None
    try:
        if p.suffix.lower() == ".json":
            raw = json.loads(data)
        else:
            raw = tomli.loads(data.decode("utf-8"))
    except (ValueError, tomli.TOMLDecodeError) as exc:
        raise UsageError(f"{p}: malformed configuration: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError(f"{p}: configuration must be a table/object")
    return parse_config(raw)
