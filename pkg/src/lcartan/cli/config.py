"""Run configuration: TOML file plus command-line overrides, canonical text form."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Mapping, Optional, Tuple

import tomli

from ..g0rep.weights import check_dominant
from ..lcmod.base import Window
from ..vecfields.algebra import AlgebraKind

__all__ = ["ConfigError", "RunConfig", "jobs_from_env"]

JOBS_ENV = "LCARTAN_JOBS"


class ConfigError(ValueError):
    """Invalid configuration (reported at parse time)."""


def jobs_from_env(default: int = 1) -> int:
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return default
    try:
        v = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{JOBS_ENV} must be an integer, got {raw!r}") from exc
    if v < 1:
        raise ConfigError(f"{JOBS_ENV} must be >= 1")
    return v


def _parse_window(v: Any) -> Tuple[int, int]:
    if isinstance(v, str):
        w = Window.parse(v)
        return (w.d_min, w.d_max)
    a, b = v
    Window(int(a), int(b))
    return (int(a), int(b))


def _parse_weight(v: Any) -> Tuple[int, ...]:
    if isinstance(v, str):
        return tuple(int(x) for x in v.split(",") if x.strip())
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class RunConfig:
    kind: str = "W"
    n: int = 2
    window: Tuple[int, int] = (0, 5)
    weights: Tuple[Tuple[int, ...], ...] = ()
    q_max: int = 2
    caps: Tuple[int, ...] = (3, 4)
    out_dir: str = "reports"
    fmt: str = "json"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("W", "S", "H"):
            raise ConfigError(f"kind must be W, S or H, got {self.kind!r}")
        if self.kind == "H" and self.n % 2:
            raise ConfigError(f"H(n) needs even n; n={self.n} is odd")
        if self.kind == "S" and self.n < 2:
            raise ConfigError("S(n) needs n >= 2; S(1) is the zero algebra in positive degrees")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.window[0] > self.window[1]:
            raise ConfigError(f"empty window {self.window}")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.q_max < 0:
            raise ConfigError("q_max must be >= 0")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        alg = self.algebra_kind
        for w in self.weights:
            try:
                check_dominant(alg, w)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc

    @property
    def algebra_kind(self) -> AlgebraKind:
        return AlgebraKind(self.kind, self.n)

    @property
    def window_obj(self) -> Window:
        return Window(*self.window)

    # -- construction -------------------------------------------------
    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        kw: Dict[str, Any] = {}
        try:
            for k, v in data.items():
                if v is None:
                    continue
                if k == "kind":
                    v = str(v).upper()
                elif k == "window":
                    v = _parse_window(v)
                elif k == "weights":
                    v = tuple(_parse_weight(x) for x in v)
                elif k == "caps":
                    v = tuple(int(x) for x in (v.split(",") if isinstance(v, str) else v))
                elif k in ("n", "q_max", "jobs", "seed"):
                    v = int(v)
                kw[k] = v
            return cls(**kw)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path: Optional[str], overrides: Mapping[str, Any] = ()) -> "RunConfig":
        data: Dict[str, Any] = {}
        if path:
            with open(path, "rb") as fh:
                try:
                    data = dict(tomli.load(fh))
                except tomli.TOMLDecodeError as exc:
                    raise ConfigError(f"{path}: {exc}") from exc
        data.update({k: v for k, v in dict(overrides).items() if v is not None})
        return cls.from_mapping(data)

    @classmethod
    def parse_text(cls, text: str) -> "RunConfig":
        try:
            return cls.from_mapping(tomli.loads(text))
        except tomli.TOMLDecodeError as exc:
            raise ConfigError(str(exc)) from exc

    # -- canonical form -----------------------------------------------
    def to_text(self) -> str:
        """Canonical TOML text; ``parse_text(c.to_text()) == c``."""
        ws = ", ".join("[" + ", ".join(str(x) for x in w) + "]" for w in self.weights)
        lines = [
            f'kind = "{self.kind}"',
            f"n = {self.n}",
            f"window = [{self.window[0]}, {self.window[1]}]",
            f"weights = [{ws}]",
            f"q_max = {self.q_max}",
            f"caps = [{', '.join(str(c) for c in self.caps)}]",
            f'out_dir = "{self.out_dir}"',
            f'fmt = "{self.fmt}"',
            f"jobs = {self.jobs}",
            f"seed = {self.seed}",
        ]
        return "\n".join(lines) + "\n"

    def digest(self, suite: str, extra: str = "") -> str:
        """Hash of the result-relevant fields (output location and parallelism excluded)."""
        core = replace(self, out_dir="", jobs=1)
        return hashlib.sha256((suite + "\n" + core.to_text() + extra).encode()).hexdigest()[:12]

    def echo(self) -> dict:
        return {
            "kind": self.kind, "n": self.n, "window": list(self.window),
            "weights": [list(w) for w in self.weights], "q_max": self.q_max, "caps": list(self.caps),
            "fmt": self.fmt, "seed": self.seed,
        }
