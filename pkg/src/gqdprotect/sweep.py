"""Parameter sweeps of the discord lower bound over (state parameter, gamma t)."""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .bloch import gqd_lower_bound
from .errors import ConfigError
from .protocol import WeakMeasurementParams, protect_two_qutrit
from .reservoir import ReservoirParams, apply_channel_two_qutrit
from .states import FAMILIES, family_state

CSV_HEADER = "family,param,gamma_t,p,q,lambda,theta,mode,gqd"
MODES = ("protected", "bare")


@dataclass(frozen=True)
class SweepConfig:
    family: str = "werner"
    param_min: float | None = None
    param_max: float | None = None
    param_steps: int = 41
    t_max: float = 20.0
    t_steps: int = 81
    p: float = 0.0
    q: float | None = None
    lam: float = 1.0
    theta: float = 0.0
    mode: str = "protected"
    out: str | None = None
    threads: int = 1

    def resolved(self) -> "SweepConfig":
        """Fill family-dependent defaults and validate; raises ConfigError."""
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        lo, hi = FAMILIES[self.family][1]
        vals = asdict(self)
        vals["param_min"] = lo if self.param_min is None else float(self.param_min)
        vals["param_max"] = hi if self.param_max is None else float(self.param_max)
        vals["q"] = self.p if self.q is None else float(self.q)
        cfg = SweepConfig(**vals)
        cfg._validate(lo, hi)
        return cfg

    def _validate(self, lo: float, hi: float):
        if not lo <= self.param_min <= self.param_max <= hi:
            raise ConfigError(f"{self.family} parameter range must lie within [{lo}, {hi}]")
        if self.param_steps < 2 or self.t_steps < 2:
            raise ConfigError("steps must be >= 2")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError("t_max must be positive")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.mode == "bare" and (self.p != 0.0 or self.q != 0.0):
            raise ConfigError("bare mode has no weak measurement; p and q must be 0")
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ConfigError(f"{name} must lie in [0, 1)")
        if not self.lam > 0:
            raise ConfigError("lambda must be positive")
        if not abs(self.theta) <= 1.0:
            raise ConfigError("theta must lie in [-1, 1]")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def param_grid(self) -> np.ndarray:
        return np.linspace(self.param_min, self.param_max, self.param_steps)

    def time_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.t_steps)


@dataclass(frozen=True)
class SweepRecord:
    family: str
    param: float
    gamma_t: float
    p: float
    q: float
    lam: float
    theta: float
    mode: str
    gqd: float

    def csv_line(self) -> str:
        cells = [self.family, self.param, self.gamma_t, self.p, self.q,
                 self.lam, self.theta, self.mode, self.gqd]
        return ",".join(c if isinstance(c, str) else repr(float(c)) for c in cells)


def evaluate(family: str, param: float, gamma_t: float, p: float, q: float,
             lam: float, theta: float, mode: str) -> SweepRecord:
    """Discord lower bound of one family member after evolving for ``gamma_t``."""
    rho0 = family_state(family, param)
    r = ReservoirParams(1.0, 1.0, lam, theta)
    if mode == "bare":
        rho = apply_channel_two_qutrit(rho0, r, gamma_t)
    else:
        rho = protect_two_qutrit(rho0, r, WeakMeasurementParams(p, q), gamma_t).state
    gqd = gqd_lower_bound(rho, 3, 3)
    if not math.isfinite(gqd):
        raise ArithmeticError(f"non-finite discord at {family}={param}, gamma_t={gamma_t}")
    return SweepRecord(family, float(param), float(gamma_t), p, q, lam, theta, mode, gqd)


def query_point(family: str, param: float, p: float = 0.0, lam: float = 1.0,
                theta: float = 0.0, gamma_t: float = 0.0, q: float | None = None,
                mode: str = "protected") -> SweepRecord:
    cfg = SweepConfig(family=family, param_min=param, param_max=param, p=p, q=q,
                      lam=lam, theta=theta, mode=mode, t_max=max(gamma_t, 1.0))
    cfg = cfg.resolved()
    if not gamma_t >= 0:
        raise ConfigError("gamma_t must be non-negative")
    return evaluate(family, param, gamma_t, cfg.p, cfg.q, lam, theta, mode)


def _evaluate_row(args) -> list[SweepRecord]:
    cfg, param = args
    return [evaluate(cfg.family, param, t, cfg.p, cfg.q, cfg.lam, cfg.theta, cfg.mode)
            for t in cfg.time_grid()]


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """Evaluate the full grid, param-major then time, independent of ``threads``."""
    cfg = cfg.resolved()
    jobs = [(cfg, float(x)) for x in cfg.param_grid()]
    if cfg.threads == 1:
        rows = [_evaluate_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(_evaluate_row, jobs))
    return [rec for row in rows for rec in row]


# Settings that cannot change the numbers are not echoed, so output is
# byte-identical across worker counts and destinations.
_NOT_ECHOED = {"out", "threads"}


def config_comment_lines(cfg: SweepConfig) -> list[str]:
    return [f"# {'lambda' if f.name == 'lam' else f.name}={getattr(cfg, f.name)}"
            for f in fields(cfg) if f.name not in _NOT_ECHOED]


def render_csv(cfg: SweepConfig, records: list[SweepRecord]) -> str:
    buf = io.StringIO(newline="")
    for line in config_comment_lines(cfg):
        buf.write(line + "\n")
    buf.write(CSV_HEADER + "\n")
    for rec in records:
        buf.write(rec.csv_line() + "\n")
    return buf.getvalue()


def write_sweep(cfg: SweepConfig) -> str:
    """Run the sweep and write it to ``cfg.out`` (if set); returns the CSV text."""
    cfg = cfg.resolved()
    if cfg.out is None:
        return render_csv(cfg, run_sweep(cfg))
    try:
        fh = open(Path(cfg.out), "w", newline="\n", encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot write {cfg.out}: {exc}") from exc
    with fh:
        text = render_csv(cfg, run_sweep(cfg))
        fh.write(text)
    return text
