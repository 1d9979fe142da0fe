"""Tunable parameters for the relevance engine, museum growth, and layout.

All values have defaults chosen to produce visible co-evolution within a
few minutes of simulated interaction; every key in the parameters file is
optional and overrides the default.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .dataspace import Dimension
from .relevance import InteractionType


class ParamsError(ValueError):
    """A parameter value is outside its legal range."""


def _default_weight_table() -> dict[InteractionType, float]:
    return {
        InteractionType.STAND_BEFORE: 0.05,
        InteractionType.CONSULT_DESCRIPTION: 0.2,
        InteractionType.BASKET_ADD: 0.4,
        InteractionType.BASKET_REMOVE: -0.3,
        InteractionType.ENTER_ROOM: 0.1,
        InteractionType.TOOL_USE: 0.3,
    }


def _default_thresholds() -> dict[Dimension, int]:
    return {Dimension.CHRONOS: 1, Dimension.TOPOS: 1, Dimension.THEMA: 1}


@dataclass
class Params:
    """Engine, growth, and solver knobs.

    lam           exponential decay rate of interaction weights (1/s);
                  default gives a 30 s half-life
    tau           per-tick reduction rate pulling relevance toward r_min
    s_d           relevance threshold above which an entity diffuses
    gamma         fraction of relevance diffused to neighbors
    cooldown      seconds an entity must wait between two diffusions
    s_room        relevance threshold that triggers a room spawn
    """

    lam: float = math.log(2) / 30.0
    tau: float = 0.02
    s_d: float = 0.7
    gamma: float = 0.2
    cooldown: float = 10.0
    neighbor_thresholds: dict[Dimension, int] = field(default_factory=_default_thresholds)
    weight_table: dict[InteractionType, float] = field(default_factory=_default_weight_table)
    r_min: float = 0.0
    r_max: float = 1.0
    epsilon_prune: float = 1e-3
    global_decrease: bool = False
    s_room: float = 0.8
    spring_k: float = 1.0
    damping: float = 0.9
    step: float = 0.05
    tol: float = 1e-4
    max_iters: int = 2000
    rest_scale: float = 0.1

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ParamsError(f"lambda must be positive, got {self.lam}")
        if not 0.0 <= self.tau <= 1.0:
            raise ParamsError(f"tau must lie in [0, 1], got {self.tau}")
        if not 0.0 < self.gamma < 1.0:
            raise ParamsError(f"gamma must lie in (0, 1), got {self.gamma}")
        if self.cooldown < 0:
            raise ParamsError(f"cooldown must be non-negative, got {self.cooldown}")
        if self.r_min >= self.r_max:
            raise ParamsError(f"r_min must be below r_max, got [{self.r_min}, {self.r_max}]")
        if self.s_d >= self.r_max:
            raise ParamsError(f"s_d must be below r_max, got {self.s_d}")
        if self.epsilon_prune < 0:
            raise ParamsError(f"epsilon_prune must be non-negative, got {self.epsilon_prune}")
        for dim, thr in self.neighbor_thresholds.items():
            if thr < 1:
                raise ParamsError(f"neighbor threshold for {dim.value} must be >= 1, got {thr}")
        if not 0.0 < self.damping < 1.0:
            raise ParamsError(f"damping must lie in (0, 1), got {self.damping}")
        if self.step <= 0 or self.max_iters < 1 or self.tol <= 0:
            raise ParamsError("solver step, tol, and max_iters must be positive")

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "tau": self.tau,
            "s_d": self.s_d,
            "gamma": self.gamma,
            "cooldown": self.cooldown,
            "neighbor_thresholds": {d.value: t for d, t in self.neighbor_thresholds.items()},
            "weight_table": {t.value: w for t, w in self.weight_table.items()},
            "r_min": self.r_min,
            "r_max": self.r_max,
            "epsilon_prune": self.epsilon_prune,
            "global_decrease": self.global_decrease,
            "s_room": self.s_room,
            "spring_k": self.spring_k,
            "damping": self.damping,
            "step": self.step,
            "tol": self.tol,
            "max_iters": self.max_iters,
            "rest_scale": self.rest_scale,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Params":
        data = dict(raw)
        kwargs: dict = {}
        if "lambda" in data:
            kwargs["lam"] = data.pop("lambda")
        if "lam" in data:
            kwargs["lam"] = data.pop("lam")
        if "neighbor_thresholds" in data:
            thr = data.pop("neighbor_thresholds")
            try:
                kwargs["neighbor_thresholds"] = {Dimension(k): int(v) for k, v in thr.items()}
            except ValueError as exc:
                raise ParamsError(f"bad neighbor_thresholds: {exc}") from exc
        if "weight_table" in data:
            table = data.pop("weight_table")
            try:
                kwargs["weight_table"] = {InteractionType(k): float(v) for k, v in table.items()}
            except ValueError as exc:
                raise ParamsError(f"bad weight_table: {exc}") from exc
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParamsError(f"unknown parameter key(s): {sorted(unknown)}")
        kwargs.update(data)
        return cls(**kwargs)


def load_params(source: str | Path | None) -> Params:
    """Load parameters from a JSON file; missing file argument means defaults."""
    if source is None:
        return Params()
    path = Path(source)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParamsError(f"cannot parse parameters {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParamsError("parameters document must be a JSON object")
    return Params.from_dict(raw)


def with_overrides(params: Params, **overrides) -> Params:
    """Copy of ``params`` with the given fields replaced (revalidated)."""
    return replace(params, **overrides)
