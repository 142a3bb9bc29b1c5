"""Link budget, SINR and the truncated-Shannon rate abstraction."""

import math

import numpy as np

from .channel import LinkLoss, inh_los_pathloss
from .config import ConfigurationError

THERMAL_NOISE_DBM_PER_HZ = -174.0

# Truncated-Shannon defaults: no service below the SINR floor, spectral
# efficiency capped at the highest LTE modulation/coding point.
SE_FLOOR_SINR_DB = -10.0
SE_CAP_BPS_HZ = 6.0


def db_to_lin(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


def lin_to_db(x_lin):
    return 10.0 * np.log10(x_lin)


def received_power(tx_power_dbm: float, loss: LinkLoss) -> float:
    """Coupling gain arithmetic; antenna gain is 0 dBi (2D omni)."""
    return tx_power_dbm - loss.total_db


def noise_power(bandwidth_mhz: float, noise_figure_db: float) -> float:
    """Thermal noise over the carrier bandwidth plus receiver noise figure."""
    if bandwidth_mhz <= 0:
        raise ValueError("bandwidth must be positive")
    return (THERMAL_NOISE_DBM_PER_HZ
            + 10.0 * np.log10(bandwidth_mhz * 1e6)
            + noise_figure_db)


def sinr(serving_dbm: float, interferer_dbm, noise_dbm: float) -> float:
    """Geometry SINR in dB; interference summed in the linear domain."""
    interference = float(np.sum(db_to_lin(interferer_dbm))) if len(interferer_dbm) else 0.0
    return float(lin_to_db(db_to_lin(serving_dbm) / (interference + db_to_lin(noise_dbm))))


def spectral_efficiency(sinr_db, floor_db: float = SE_FLOOR_SINR_DB,
                        cap: float = SE_CAP_BPS_HZ):
    """Truncated Shannon: 0 below floor_db, else min(log2(1 + snr), cap)."""
    if isinstance(sinr_db, np.ndarray):
        se = np.minimum(np.log2(1.0 + 10.0 ** (sinr_db / 10.0)), cap)
        return np.where(sinr_db < floor_db, 0.0, se)
    if sinr_db < floor_db:
        return 0.0
    return min(math.log2(1.0 + 10.0 ** (sinr_db / 10.0)), cap)


def rx_power_matrix(points_xy: np.ndarray, node_xy: np.ndarray, fc_ghz: float,
                    tx_power_dbm: float, shadowing_db=0.0,
                    penetration_db=0.0) -> np.ndarray:
    """Received power in dBm from every node at every point, shape (n, m).

    All indoor links use the InH LoS model; shadowing/penetration are
    per-link arrays (or 0 when disabled).
    """
    delta = points_xy[:, None, :] - node_xy[None, :, :]
    dist = np.sqrt((delta ** 2).sum(axis=2))
    return (tx_power_dbm - inh_los_pathloss(dist, fc_ghz)
            - shadowing_db - penetration_db)


def associate(ue, carrier_id: int, layout, shadowing=None) -> int:
    """Serving node for a UE on one carrier: max received power, frozen
    shadowing, ties broken by lowest node id."""
    nodes = layout.nodes_with_carrier(carrier_id)
    if not nodes:
        raise ConfigurationError(f"no node carries carrier {carrier_id}")
    spec = layout.carrier(carrier_id)
    best_id, best_rx = None, -np.inf
    for node in sorted(nodes, key=lambda n: n.id):
        d = np.hypot(ue.position.x - node.position.x, ue.position.y - node.position.y)
        sh = shadowing.get(node.id, 0.0) if shadowing else 0.0
        rx = spec.tx_power_dbm - float(inh_los_pathloss(d, spec.center_freq_ghz)) - sh
        if rx > best_rx:
            best_id, best_rx = node.id, rx
    return best_id
