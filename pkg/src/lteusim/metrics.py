"""Empirical CDFs, percentile/gap queries and throughput aggregation."""

import math
from dataclasses import dataclass

import numpy as np


class CdfCurve:
    """Empirical CDF over a sample set (values in dB or dBm)."""

    def __init__(self, samples):
        self._values = np.sort(np.asarray(samples, dtype=float))

    def __len__(self):
        return len(self._values)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def probabilities(self) -> np.ndarray:
        n = len(self._values)
        return np.arange(1, n + 1) / n

    def percentile(self, p: float) -> float:
        return percentile(self, p)


def percentile(curve: CdfCurve, p: float) -> float:
    """Smallest sample whose empirical CDF reaches p (0 < p < 1)."""
    n = len(curve)
    if n == 0:
        raise ValueError("percentile of an empty curve")
    if not 0.0 < p < 1.0:
        raise ValueError(f"percentile fraction must lie in (0, 1), got {p}")
    k = math.ceil(n * p)
    return float(curve.values[k - 1])


def coverage_gap(licensed: CdfCurve, unlicensed: CdfCurve, p: float) -> float:
    """Licensed-minus-unlicensed value at the p-th percentile, in dB."""
    return percentile(licensed, p) - percentile(unlicensed, p)


def per_file_throughput_mbps(job) -> float:
    """One completed transfer's throughput: size / download time."""
    if not job.completed:
        raise ValueError(f"job for UE {job.ue_id} has not completed")
    return job.size_bits / (job.completion_time - job.arrival_time) / 1e6


def mean_user_throughput(jobs) -> float:
    """Mean per-file throughput over completed transfers, in Mbit/s.

    Only small-cell-carrier bits count; the macro carrier serves none,
    so a job's full size qualifies.
    """
    samples = [per_file_throughput_mbps(j) for j in jobs]
    if not samples:
        raise ValueError("no completed jobs to average")
    return float(np.mean(samples))


@dataclass(frozen=True)
class ThroughputReport:
    case: str
    policy: str
    lam: float
    seed: int
    mean_user_tput_mbps: float  # nan when no file completed
    completed_files: int
    samples: tuple = ()
