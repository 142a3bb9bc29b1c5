"""Deployment geometry: indoor office layouts, carrier tables, UE drops.

The office is a 120 m x 50 m rectangle. Licensed small cells sit on the
long-axis centerline; unlicensed densification adds rows above and below
(4:8 uses two rows of 4, 4:16 two rows of 8). In the 4:4 layout the two
carrier types are co-located on the same four nodes.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import ConfigurationError

OFFICE_WIDTH_M = 120.0
OFFICE_HEIGHT_M = 50.0

RATIO_LABELS = ("4:4", "4:8", "4:16")

# Coverage-experiment carrier frequencies (GHz)
LICENSED_FC_GHZ = 2.6
UNLICENSED_FC_GHZ = 5.8


class BandClass(Enum):
    LICENSED = "licensed"
    UNLICENSED = "unlicensed"


class SiteKind(Enum):
    MACRO = "macro"
    SMALL = "small"


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float


@dataclass(frozen=True)
class CarrierSpec:
    id: int
    center_freq_ghz: float
    bandwidth_mhz: float
    band_class: BandClass
    tx_power_dbm: float
    site_kind: SiteKind

    def __post_init__(self):
        if self.center_freq_ghz <= 0 or self.bandwidth_mhz <= 0:
            raise ConfigurationError(
                f"carrier {self.id}: frequency and bandwidth must be positive")


@dataclass(frozen=True)
class NodeSite:
    id: int
    position: Point2D
    carrier_ids: frozenset


@dataclass(frozen=True)
class DeploymentLayout:
    width: float
    height: float
    nodes: tuple
    carriers: tuple
    ratio_label: str

    def carrier(self, carrier_id: int) -> CarrierSpec:
        for c in self.carriers:
            if c.id == carrier_id:
                return c
        raise ConfigurationError(f"unknown carrier id {carrier_id}")

    def nodes_with_carrier(self, carrier_id: int) -> tuple:
        return tuple(n for n in self.nodes if carrier_id in n.carrier_ids)


@dataclass
class UeTerminal:
    id: int
    position: Point2D
    capability: int = 3
    mode: object = None
    assigned_carriers: tuple = ()


def _centerline_positions():
    return [Point2D(15.0 + 30.0 * k, 25.0) for k in range(4)]


def _two_row_positions(per_row: int):
    if per_row == 4:
        xs = [15.0 + 30.0 * k for k in range(4)]
    elif per_row == 8:
        xs = [7.5 + 15.0 * k for k in range(8)]
    else:
        raise ConfigurationError(f"unsupported row size {per_row}")
    return [Point2D(x, y) for y in (12.5, 37.5) for x in xs]


def _validate_layout(layout: DeploymentLayout) -> DeploymentLayout:
    carrier_ids = {c.id for c in layout.carriers}
    if len(carrier_ids) != len(layout.carriers):
        raise ConfigurationError("carrier ids must be unique")
    node_ids = [n.id for n in layout.nodes]
    if len(set(node_ids)) != len(node_ids):
        raise ConfigurationError("node ids must be unique")
    for node in layout.nodes:
        if not node.carrier_ids:
            raise ConfigurationError(f"node {node.id} carries no carrier")
        if not node.carrier_ids <= carrier_ids:
            raise ConfigurationError(f"node {node.id} references unknown carriers")
        p = node.position
        if not (0.0 <= p.x <= layout.width and 0.0 <= p.y <= layout.height):
            raise ConfigurationError(f"node {node.id} lies outside the office")
    return layout


def build_layout(ratio_label: str, tx_power_dbm: float = 24.0) -> DeploymentLayout:
    """Coverage-experiment layout for one licensed:unlicensed ratio.

    Carrier 1 is the 2.6 GHz licensed small-cell carrier (always on the
    four centerline nodes), carrier 2 the 5.8 GHz unlicensed one. The
    unlicensed carrier count matches the ratio label exactly: co-located
    on the centerline for 4:4, on 8 or 16 dedicated two-row nodes
    otherwise.
    """
    if ratio_label not in RATIO_LABELS:
        raise ConfigurationError(
            f"unknown ratio label {ratio_label!r}; expected one of {RATIO_LABELS}")

    licensed = CarrierSpec(1, LICENSED_FC_GHZ, 20.0, BandClass.LICENSED,
                           tx_power_dbm, SiteKind.SMALL)
    unlicensed = CarrierSpec(2, UNLICENSED_FC_GHZ, 20.0, BandClass.UNLICENSED,
                             tx_power_dbm, SiteKind.SMALL)

    nodes = []
    if ratio_label == "4:4":
        for i, pos in enumerate(_centerline_positions()):
            nodes.append(NodeSite(i, pos, frozenset({1, 2})))
    else:
        for i, pos in enumerate(_centerline_positions()):
            nodes.append(NodeSite(i, pos, frozenset({1})))
        per_row = 4 if ratio_label == "4:8" else 8
        for j, pos in enumerate(_two_row_positions(per_row)):
            nodes.append(NodeSite(4 + j, pos, frozenset({2})))

    layout = DeploymentLayout(OFFICE_WIDTH_M, OFFICE_HEIGHT_M, tuple(nodes),
                              (licensed, unlicensed), ratio_label)
    return _validate_layout(layout)


def build_carrier_system(tx_power_dbm: float = 24.0) -> DeploymentLayout:
    """Four-carrier system for the throughput experiment.

    Carrier 1 is the macro licensed anchor (2 GHz); it is always reachable,
    has no geometric model and carries no counted throughput. Carriers 2
    (3.5 GHz / 10 MHz licensed) and 3-4 (5.8 GHz / 20 MHz unlicensed) sit
    on every one of the four small-cell nodes of the 4:4 layout.
    """
    carriers = (
        CarrierSpec(1, 2.0, 20.0, BandClass.LICENSED, tx_power_dbm, SiteKind.MACRO),
        CarrierSpec(2, 3.5, 10.0, BandClass.LICENSED, tx_power_dbm, SiteKind.SMALL),
        CarrierSpec(3, 5.8, 20.0, BandClass.UNLICENSED, tx_power_dbm, SiteKind.SMALL),
        CarrierSpec(4, 5.8, 20.0, BandClass.UNLICENSED, tx_power_dbm, SiteKind.SMALL),
    )
    nodes = tuple(NodeSite(i, pos, frozenset({2, 3, 4}))
                  for i, pos in enumerate(_centerline_positions()))
    layout = DeploymentLayout(OFFICE_WIDTH_M, OFFICE_HEIGHT_M, nodes,
                              carriers, "4:4")
    return _validate_layout(layout)


def counted_carrier_ids(layout: DeploymentLayout) -> tuple:
    """Carriers whose throughput is counted: the ones on small-cell sites."""
    return tuple(sorted(c.id for c in layout.carriers
                        if c.site_kind is SiteKind.SMALL))


def drop_ues(layout: DeploymentLayout, n_per_node: int, rng) -> list:
    """Drop n_per_node UEs per counted small-cell node, uniform over the office."""
    if n_per_node < 0:
        raise ConfigurationError("n_per_node must be >= 0")
    counted = set(counted_carrier_ids(layout))
    n_nodes = sum(1 for n in layout.nodes if n.carrier_ids & counted)
    n_ues = n_per_node * n_nodes
    xy = drop_points(n_ues, rng, layout.width, layout.height)
    return [UeTerminal(i, Point2D(float(xy[i, 0]), float(xy[i, 1])))
            for i in range(n_ues)]


def drop_points(n: int, rng, width: float = OFFICE_WIDTH_M,
                height: float = OFFICE_HEIGHT_M) -> np.ndarray:
    """n i.i.d. uniform positions over the office rectangle, shape (n, 2)."""
    xy = rng.random((n, 2))
    xy[:, 0] *= width
    xy[:, 1] *= height
    return xy
