"""Run configuration: flat `section.key = value` files.

Every key has a default mirroring the simulation-assumption tables
(24 dBm per carrier, 20 UEs per node, 0.5 MByte files, FTP model 1).
Unknown keys are rejected so typos cannot silently fall back to defaults.
"""

import math
from dataclasses import dataclass, fields


class ConfigurationError(Exception):
    """Bad configuration value, key, or scenario description."""


@dataclass
class SimConfig:
    ratio: str = "4:4"
    n_ue_per_node: int = 20
    shadowing_sigma_db: float = 3.0
    penetration: bool = False
    noise_figure_db: float = 9.0
    tx_power_dbm: float = 24.0
    se_floor_sinr_db: float = -10.0
    se_cap: float = 6.0
    lam: float = 2.5
    lambda_scale: float = 1.0
    file_size_mbytes: float = 0.5
    tti_ms: float = 1.0
    duration_s: float = 100.0
    seed: int = 1
    experiment: str = "coverage"

    @property
    def file_size_bits(self) -> int:
        # decimal convention: 1 MByte = 8e6 bits
        return int(round(self.file_size_mbytes * 8e6))

    @property
    def tti_s(self) -> float:
        return self.tti_ms * 1e-3

    def validate(self):
        if self.ratio not in ("4:4", "4:8", "4:16"):
            raise ConfigurationError(f"scenario.ratio: unknown ratio {self.ratio!r}")
        if self.experiment not in ("coverage", "throughput"):
            raise ConfigurationError(
                f"run.experiment: must be coverage or throughput, got {self.experiment!r}")
        if not (0 <= self.seed < 2 ** 64):
            raise ConfigurationError("run.seed: must be a 64-bit unsigned value")
        positive = [("engine.tti_ms", self.tti_ms),
                    ("traffic.file_size_mbytes", self.file_size_mbytes),
                    ("traffic.lambda_scale", self.lambda_scale),
                    ("radio.se_cap", self.se_cap)]
        nonneg = [("traffic.lambda", self.lam),
                  ("engine.duration_s", self.duration_s),
                  ("channel.shadowing_sigma_db", self.shadowing_sigma_db),
                  ("scenario.n_ue_per_node", self.n_ue_per_node)]
        finite = positive + nonneg + [("radio.noise_figure_db", self.noise_figure_db),
                                      ("radio.tx_power_dbm", self.tx_power_dbm),
                                      ("radio.se_floor_sinr_db", self.se_floor_sinr_db)]
        for key, value in finite:
            if not math.isfinite(value):
                raise ConfigurationError(f"{key}: must be finite, got {value!r}")
        for key, value in positive:
            if value <= 0:
                raise ConfigurationError(f"{key}: must be > 0, got {value!r}")
        for key, value in nonneg:
            if value < 0:
                raise ConfigurationError(f"{key}: must be >= 0, got {value!r}")
        return self


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("on", "true", "yes", "1"):
        return True
    if lowered in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# key -> (attribute, parser, formatter)
_KEYS = {
    "scenario.ratio": ("ratio", str, str),
    "scenario.n_ue_per_node": ("n_ue_per_node", int, str),
    "channel.shadowing_sigma_db": ("shadowing_sigma_db", float, repr),
    "channel.penetration": ("penetration", _parse_bool, lambda b: "on" if b else "off"),
    "radio.noise_figure_db": ("noise_figure_db", float, repr),
    "radio.tx_power_dbm": ("tx_power_dbm", float, repr),
    "radio.se_floor_sinr_db": ("se_floor_sinr_db", float, repr),
    "radio.se_cap": ("se_cap", float, repr),
    "traffic.lambda": ("lam", float, repr),
    "traffic.lambda_scale": ("lambda_scale", float, repr),
    "traffic.file_size_mbytes": ("file_size_mbytes", float, repr),
    "engine.tti_ms": ("tti_ms", float, repr),
    "engine.duration_s": ("duration_s", float, repr),
    "run.seed": ("seed", int, str),
    "run.experiment": ("experiment", str, str),
}


def parse_config_text(text: str) -> SimConfig:
    """Parse flat `key = value` lines; blank lines and # comments ignored."""
    cfg = SimConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected `key = value`, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigurationError(f"line {lineno}: unknown key {key!r}")
        attr, parser, _ = _KEYS[key]
        try:
            setattr(cfg, attr, parser(value))
        except ValueError:
            raise ConfigurationError(
                f"line {lineno}: malformed value for {key}: {value!r}") from None
    return cfg.validate()


def parse_config(path) -> SimConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def emit_config(cfg: SimConfig) -> str:
    """Render cfg as config-file text; parse_config_text round-trips it."""
    lines = []
    for key, (attr, _, fmt) in _KEYS.items():
        lines.append(f"{key} = {fmt(getattr(cfg, attr))}")
    return "\n".join(lines) + "\n"


def config_fields() -> tuple:
    return tuple(f.name for f in fields(SimConfig))
