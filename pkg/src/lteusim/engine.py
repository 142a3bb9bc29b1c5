"""Discrete-time TTI engine and the two experiment drivers.

Per TTI, every (node, carrier) with n active jobs splits its capacity
equally: each job gets floor(bandwidth * SE(SINR) / n * TTI) bits per
carrier, summed over the job's small-cell carriers. Interference is
activity-coupled: only nodes currently serving at least one job on a
carrier interfere on it. Between two events (an arrival becoming
schedulable, a completion, the run end) nothing changes, so the run loop
advances whole blocks of TTIs at once; `schedule_tti` is the one-TTI
reference path and the two are exactly equivalent (tested).
"""

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import policy, scenario
from .channel import penetration_band, penetration_loss, sample_wall_depth, shadow_sample
from .config import ConfigurationError, SimConfig
from .metrics import CdfCurve, ThroughputReport, per_file_throughput_mbps, percentile
from .policy import Mode
from .radio import db_to_lin, noise_power, rx_power_matrix, spectral_efficiency
from .rng import substream
from .traffic import FileJob, poisson_arrivals

CASES = ("ca", "dcsa")
POLICIES = ("fixed", "flexible")
GAP_PERCENTILES = (0.05, 0.5)

_INF = float("inf")


# ---------------------------------------------------------------------------
# throughput experiment
# ---------------------------------------------------------------------------

@dataclass
class EngineState:
    """One throughput run: frozen radio state plus the mutable job ledger."""
    cfg: SimConfig
    case: str
    policy: str
    seed: int
    # frozen at setup
    n_ue: int = 0
    counted_ids: tuple = ()
    bw_mhz: dict = field(default_factory=dict)
    noise_lin: dict = field(default_factory=dict)
    lin_rx: dict = field(default_factory=dict)      # carrier -> (n_ue, n_nodes)
    serving: dict = field(default_factory=dict)     # carrier -> (n_ue,) node index
    fixed_unlicensed: dict = field(default_factory=dict)
    fixed_modes: dict = field(default_factory=dict)
    arrivals: list = field(default_factory=list)
    ues: list = field(default_factory=list)
    end_tti: int = 0
    # mutable
    clock_tti: int = 0
    next_arrival: int = 0
    queues: list = field(default_factory=list)      # per UE deque of FileJob
    completed: list = field(default_factory=list)

    @property
    def clock_s(self) -> float:
        return self.clock_tti * self.cfg.tti_s

    def active_jobs(self) -> list:
        """Head-of-line job per UE (a UE's carriers serve its files FIFO)."""
        return [q[0] for q in self.queues if q]


def _setup_state(cfg: SimConfig, case: str, policy_name: str, lam: float,
                 seed: int) -> EngineState:
    if case not in CASES:
        raise ConfigurationError(f"unknown case {case!r}; expected one of {CASES}")
    if policy_name not in POLICIES:
        raise ConfigurationError(f"unknown policy {policy_name!r}; expected one of {POLICIES}")
    layout = scenario.build_carrier_system(cfg.tx_power_dbm)
    specs = policy.validate_carrier_table(layout.carriers)

    st = EngineState(cfg, case, policy_name, seed)
    st.counted_ids = scenario.counted_carrier_ids(layout)
    st.ues = scenario.drop_ues(layout, cfg.n_ue_per_node, substream(seed, "ue-drop"))
    st.n_ue = len(st.ues)
    ue_xy = np.array([[u.position.x, u.position.y] for u in st.ues]).reshape(st.n_ue, 2)
    node_xy = np.array([[n.position.x, n.position.y] for n in layout.nodes])

    # shadowing (and optional penetration) frozen per (UE, node, band)
    per_band_shadow, per_band_pen = {}, {}
    dist = np.sqrt(((ue_xy[:, None, :] - node_xy[None, :, :]) ** 2).sum(axis=2))
    for band in sorted({specs[c].center_freq_ghz for c in st.counted_ids}):
        per_band_shadow[band] = shadow_sample(
            cfg.shadowing_sigma_db, substream(seed, "shadow", band), dist.shape)
        if cfg.penetration:
            depth = sample_wall_depth(dist, substream(seed, "penetration", band))
            per_band_pen[band] = penetration_loss(penetration_band(band), depth)
        else:
            per_band_pen[band] = 0.0

    for cid in st.counted_ids:
        spec = specs[cid]
        band = spec.center_freq_ghz
        rx = rx_power_matrix(ue_xy, node_xy, band, spec.tx_power_dbm,
                             per_band_shadow[band], per_band_pen[band])
        st.lin_rx[cid] = db_to_lin(rx)
        st.serving[cid] = np.argmax(rx, axis=1)  # argmax keeps the lowest node id on ties
        st.bw_mhz[cid] = spec.bandwidth_mhz
        st.noise_lin[cid] = float(db_to_lin(noise_power(spec.bandwidth_mhz,
                                                        cfg.noise_figure_db)))

    st.fixed_unlicensed = policy.allocate_fixed(range(st.n_ue),
                                                policy.UNLICENSED_CARRIERS)
    # same uniform-at-initialization rule, applied to the supported modes
    st.fixed_modes = policy.allocate_fixed(range(st.n_ue),
                                           (Mode.CA, Mode.DC, Mode.SA))
    st.arrivals = poisson_arrivals(lam * cfg.lambda_scale, cfg.duration_s,
                                   st.n_ue, substream(seed, "arrivals"))
    st.queues = [deque() for _ in range(st.n_ue)]
    st.end_tti = int(round(cfg.duration_s / cfg.tti_s))
    return st


def _activity(state: EngineState):
    """Active-job counts per (node, carrier) and active node list per carrier."""
    counts = {}
    for job in state.active_jobs():
        for cid in policy.counted(job.carriers):
            key = (int(state.serving[cid][job.ue_id]), cid)
            counts[key] = counts.get(key, 0) + 1
    active_nodes = {cid: sorted({n for (n, c) in counts if c == cid})
                    for cid in state.counted_ids}
    return counts, active_nodes


def _carrier_sinr_db(state: EngineState, ue: int, cid: int, active_nodes) -> float:
    """Geometry SINR on one carrier against the currently active co-channel set."""
    row = state.lin_rx[cid][ue]
    serving = int(state.serving[cid][ue])
    interference = 0.0
    for n in active_nodes[cid]:
        if n != serving:
            interference += float(row[n])
    return 10.0 * math.log10(float(row[serving]) / (interference + state.noise_lin[cid]))


def _quotas(state: EngineState):
    """Whole bits each active job receives per TTI under equal sharing."""
    counts, active_nodes = _activity(state)
    cfg = state.cfg
    quotas = []
    for job in state.active_jobs():
        bits = 0
        for cid in policy.counted(job.carriers):
            serving = int(state.serving[cid][job.ue_id])
            n_sharing = counts[(serving, cid)]
            se = spectral_efficiency(_carrier_sinr_db(state, job.ue_id, cid, active_nodes),
                                     cfg.se_floor_sinr_db, cfg.se_cap)
            bits += int(state.bw_mhz[cid] * 1e6 * se / n_sharing * cfg.tti_s)
        quotas.append((job, bits))
    return quotas


def _rate_estimate(state: EngineState, ue: int, cid: int, counts, active_nodes) -> float:
    """CSI-feedback rate estimate in Mbit/s if this UE joined carrier cid now."""
    serving = int(state.serving[cid][ue])
    n_active = counts.get((serving, cid), 0)
    se = spectral_efficiency(_carrier_sinr_db(state, ue, cid, active_nodes),
                             state.cfg.se_floor_sinr_db, state.cfg.se_cap)
    return state.bw_mhz[cid] * se / (n_active + 1)


def _fixed_mode_set(state: EngineState, ue: int, mode: Mode) -> tuple:
    """Frozen carrier set for a fixed-allocation UE in a given mode."""
    u = state.fixed_unlicensed[ue]
    return {Mode.CA: (1, 2, u), Mode.DC: (1, 2, u), Mode.SA: (3, 4)}[mode]


def _assign(state: EngineState, ue: int):
    """Mode and carrier assignment for one arrival, per case and policy.

    The fixed policy freezes everything at initialization (mode and
    carriers, uniform over UEs); the flexible policy re-decides on every
    arrival from loading and CSI estimates.
    """
    if state.policy == "fixed":
        mode = Mode.CA if state.case == "ca" else state.fixed_modes[ue]
        return mode, _fixed_mode_set(state, ue, mode)

    counts, active_nodes = _activity(state)
    est = {cid: _rate_estimate(state, ue, cid, counts, active_nodes)
           for cid in state.counted_ids}
    best_u = policy.allocate_flexible({3: est[3], 4: est[4]})
    pairs = ((2, 3), (2, 4), (3, 4))
    best_pair = max(pairs, key=lambda p: est[p[0]] + est[p[1]])
    mode_sets = {Mode.CA: (1, 2, best_u), Mode.DC: (1,) + best_pair,
                 Mode.SA: (3, 4)}
    if state.case == "ca":
        mode = Mode.CA
    else:
        totals = {m: sum(est[c] for c in policy.counted(s))
                  for m, s in mode_sets.items()}
        mode = policy.select_mode(totals)
    return mode, mode_sets[mode]


def _admit_due_arrivals(state: EngineState):
    """Attach every arrival whose first schedulable TTI has been reached."""
    tti_s = state.cfg.tti_s
    while state.next_arrival < len(state.arrivals):
        t, ue = state.arrivals[state.next_arrival]
        if math.ceil(t / tti_s) > state.clock_tti:
            break
        mode, carriers = _assign(state, ue)
        job = FileJob(ue, t, state.cfg.file_size_bits, state.cfg.file_size_bits,
                      mode=mode, carriers=carriers)
        state.ues[ue].mode = mode
        state.ues[ue].assigned_carriers = carriers
        state.queues[ue].append(job)
        state.next_arrival += 1


def _serve(state: EngineState, quotas, k: int):
    """Advance k TTIs with frozen quotas, recording completions exactly."""
    for job, q in quotas:
        if q <= 0:
            continue
        ttis_needed = -(-job.remaining_bits // q)
        if ttis_needed <= k:
            job.remaining_bits = 0
            job.completion_time = (state.clock_tti + ttis_needed) * state.cfg.tti_s
        else:
            job.remaining_bits -= q * k
    state.clock_tti += k
    for queue in state.queues:
        while queue and queue[0].completed:
            state.completed.append(queue.popleft())


def schedule_tti(state: EngineState) -> list:
    """Serve exactly one TTI; returns (job, bits served this TTI) pairs.

    Reference path for the block-advance run loop.
    """
    quotas = _quotas(state)
    served = [(job, min(q, job.remaining_bits)) for job, q in quotas]
    _serve(state, quotas, 1)
    return served


def _next_arrival_tti(state: EngineState):
    if state.next_arrival >= len(state.arrivals):
        return None
    t, _ = state.arrivals[state.next_arrival]
    return math.ceil(t / state.cfg.tti_s)


def run_throughput(config: SimConfig, case: str, policy_name: str, lam: float,
                   seed=None, stepped: bool = False) -> ThroughputReport:
    """Simulate one (case, policy, load, seed) combination.

    Case "ca" forces every arrival into CA mode; "dcsa" lets each arrival
    pick CA/DC/SA by estimated counted rate. Only bits on small-cell
    carriers count, which is every served bit (the macro carrier serves
    none). `stepped=True` replays the run strictly TTI by TTI.
    """
    config.validate()
    seed = config.seed if seed is None else seed
    state = _setup_state(config, case, policy_name, lam, seed)

    while state.clock_tti < state.end_tti:
        _admit_due_arrivals(state)
        if stepped:
            if not state.active_jobs() and state.next_arrival >= len(state.arrivals):
                break
            schedule_tti(state)
            continue
        quotas = _quotas(state)
        next_arr = _next_arrival_tti(state)
        k_arrival = (next_arr - state.clock_tti) if next_arr is not None else _INF
        k_complete = min((-(-job.remaining_bits // q) for job, q in quotas if q > 0),
                         default=_INF)
        # always finite: the run end bounds the block
        k = int(min(k_arrival, k_complete, state.end_tti - state.clock_tti))
        _serve(state, quotas, k)

    samples = tuple(per_file_throughput_mbps(j) for j in state.completed)
    mean = float(np.mean(samples)) if samples else float("nan")
    return ThroughputReport(case, policy_name, lam, seed, mean,
                            len(state.completed), samples)


# ---------------------------------------------------------------------------
# coverage experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverageResult:
    curves: dict     # (ratio, band_ghz, metric) -> CdfCurve, pooled over seeds
    gaps: dict       # (ratio, percentile) -> seed-averaged RSRP gap in dB
    seed_gaps: dict  # (ratio, percentile) -> tuple of per-seed gaps


def run_coverage(config: SimConfig, ratios=scenario.RATIO_LABELS,
                 n_samples: int = 10000, seeds=None,
                 percentiles=GAP_PERCENTILES) -> CoverageResult:
    """Serving-power (RSRP) and geometry-SINR CDFs per ratio and band.

    Test points are dropped uniformly; every node of a band transmits.
    Penetration must be disabled for this experiment.
    """
    config.validate()
    if config.penetration:
        raise ConfigurationError("coverage experiment runs without penetration loss")
    if n_samples <= 0:
        raise ValueError("coverage needs at least one test point")
    seeds = (config.seed,) if seeds is None else tuple(seeds)

    pooled = {}
    seed_gaps = {(r, p): [] for r in ratios for p in percentiles}
    for seed in seeds:
        points = scenario.drop_points(n_samples, substream(seed, "coverage-points"))
        for ratio in ratios:
            layout = scenario.build_layout(ratio, config.tx_power_dbm)
            rsrp_by_band = {}
            for carrier in layout.carriers:
                band = carrier.center_freq_ghz
                node_xy = np.array([[n.position.x, n.position.y]
                                    for n in layout.nodes_with_carrier(carrier.id)])
                shadow = shadow_sample(config.shadowing_sigma_db,
                                       substream(seed, "coverage-shadow", ratio, band),
                                       (n_samples, len(node_xy)))
                rx = rx_power_matrix(points, node_xy, band, carrier.tx_power_dbm, shadow)
                rsrp = rx.max(axis=1)
                lin = db_to_lin(rx)
                total = lin.sum(axis=1)
                serving = lin.max(axis=1)
                noise = db_to_lin(noise_power(carrier.bandwidth_mhz,
                                              config.noise_figure_db))
                sinr_db = 10.0 * np.log10(serving / (total - serving + noise))
                rsrp_by_band[band] = rsrp
                pooled.setdefault((ratio, band, "rsrp_dbm"), []).append(rsrp)
                pooled.setdefault((ratio, band, "sinr_db"), []).append(sinr_db)
            lic = CdfCurve(rsrp_by_band[scenario.LICENSED_FC_GHZ])
            unl = CdfCurve(rsrp_by_band[scenario.UNLICENSED_FC_GHZ])
            for p in percentiles:
                seed_gaps[(ratio, p)].append(percentile(lic, p) - percentile(unl, p))

    curves = {key: CdfCurve(np.concatenate(parts)) for key, parts in pooled.items()}
    gaps = {key: float(np.mean(vals)) for key, vals in seed_gaps.items()}
    return CoverageResult(curves, gaps,
                          {k: tuple(v) for k, v in seed_gaps.items()})
