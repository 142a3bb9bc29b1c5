"""Propagation: indoor-hotspot LoS path loss, penetration, lognormal shadowing.

Frequencies in GHz, distances in m, losses in dB. All functions accept
scalars or numpy arrays for the distance argument.
"""

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT_M_S = 3.0e8

# Indoor penetration: base loss in dB per band, plus 0.5 dB per metre of
# in-building depth d_m drawn uniform on [0, min(25, link distance)].
PENETRATION_BASE_DB = {2.0: 20.0, 3.5: 23.0, 5.0: 27.0}
PENETRATION_DEPTH_MAX_M = 25.0


@dataclass(frozen=True)
class LinkLoss:
    pathloss_db: float
    shadowing_db: float = 0.0
    penetration_db: float = 0.0

    def __post_init__(self):
        if self.penetration_db < 0:
            raise ValueError("penetration loss cannot be negative")

    @property
    def total_db(self) -> float:
        return self.pathloss_db + self.shadowing_db + self.penetration_db


def _clamped(d_m):
    # co-located drops land arbitrarily close to a node; clamp to 1 m
    return np.maximum(d_m, 1.0)


def inh_los_pathloss(d_m, fc_ghz):
    """Indoor-hotspot LoS loss: 16.9 log10(d) + 32.8 + 20 log10(fc)."""
    if fc_ghz <= 0:
        raise ValueError("carrier frequency must be positive")
    return 16.9 * np.log10(_clamped(d_m)) + 32.8 + 20.0 * np.log10(fc_ghz)


def breakpoint_distance(fc_ghz: float, h_bs_m: float, h_ut_m: float) -> float:
    """Dual-slope breakpoint 4 h'_BS h'_UT fc / c with effective heights h - 1."""
    return 4.0 * (h_bs_m - 1.0) * (h_ut_m - 1.0) * fc_ghz * 1e9 / SPEED_OF_LIGHT_M_S


def umi_los_pathloss(d_m, fc_ghz, h_bs_m: float, h_ut_m: float):
    """Outdoor (UMi) LoS dual-slope loss.

    Below the breakpoint: 22 log10(d) + 28 + 20 log10(fc). At or above:
    40 log10(d) + 7.8 - 18 log10(h_BS - 1) - 18 log10(h_UT - 1) + 2 log10(fc).
    """
    if fc_ghz <= 0:
        raise ValueError("carrier frequency must be positive")
    if h_bs_m <= 1.0 or h_ut_m <= 1.0:
        raise ValueError("antenna heights must exceed 1 m (effective height > 0)")
    d = _clamped(d_m)
    d_bp = breakpoint_distance(fc_ghz, h_bs_m, h_ut_m)
    near = 22.0 * np.log10(d) + 28.0 + 20.0 * np.log10(fc_ghz)
    far = (40.0 * np.log10(d) + 7.8
           - 18.0 * np.log10(h_bs_m - 1.0) - 18.0 * np.log10(h_ut_m - 1.0)
           + 2.0 * np.log10(fc_ghz))
    return np.where(d < d_bp, near, far) if isinstance(d, np.ndarray) \
        else (near if d < d_bp else far)


def penetration_band(fc_ghz: float) -> float:
    """Nearest tabulated penetration band (2, 3.5 or 5 GHz) for a carrier."""
    return min(PENETRATION_BASE_DB, key=lambda b: abs(b - fc_ghz))


def penetration_loss(band_ghz: float, d_m):
    """Indoor penetration loss: band base (20/23/27 dB) + 0.5 dB per metre."""
    if band_ghz not in PENETRATION_BASE_DB:
        raise ValueError(f"unknown penetration band {band_ghz!r}; "
                         f"expected one of {sorted(PENETRATION_BASE_DB)}")
    d = np.asarray(d_m, dtype=float)
    if np.any(d < 0) or np.any(d > PENETRATION_DEPTH_MAX_M):
        raise ValueError(f"in-building depth must lie in [0, {PENETRATION_DEPTH_MAX_M}] m")
    out = PENETRATION_BASE_DB[band_ghz] + 0.5 * d
    return out if isinstance(d_m, np.ndarray) else float(out)


def sample_wall_depth(link_distance_m, rng):
    """Per-link in-building depth, uniform on [0, min(25, link distance)]."""
    hi = np.minimum(link_distance_m, PENETRATION_DEPTH_MAX_M)
    return rng.random(np.shape(link_distance_m)) * hi


def shadow_sample(sigma_db: float, rng, size=None):
    """Zero-mean lognormal shadowing draw(s) in dB."""
    if sigma_db < 0:
        raise ValueError("shadowing sigma must be >= 0")
    if sigma_db == 0:
        return 0.0 if size is None else np.zeros(size)
    return rng.normal(0.0, sigma_db, size)
