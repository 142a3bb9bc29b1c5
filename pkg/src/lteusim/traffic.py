"""FTP model 1 traffic: Poisson file arrivals over a fixed UE population."""

import math
from dataclasses import dataclass

import numpy as np

BITS_PER_MBYTE = 8_000_000  # decimal convention


@dataclass
class FileJob:
    ue_id: int
    arrival_time: float
    size_bits: int
    remaining_bits: int
    completion_time: float = None
    mode: object = None
    carriers: tuple = ()

    @property
    def completed(self) -> bool:
        return self.completion_time is not None


def poisson_arrivals(lam: float, duration_s: float, n_ues: int, rng) -> list:
    """Arrival times with i.i.d. exponential gaps of mean 1/lam, each
    attached to a UE drawn uniformly from the population.

    Returns [(arrival_time, ue_id), ...] strictly increasing in time.
    Exact duplicate timestamps (probability ~0 in float64) are bumped by
    the smallest representable increment.
    """
    if lam < 0:
        raise ValueError("arrival rate must be >= 0")
    arrivals = []
    if lam == 0 or duration_s <= 0 or n_ues <= 0:
        return arrivals
    t = 0.0
    while True:
        t += rng.exponential(1.0 / lam)
        if t >= duration_s:
            break
        if arrivals and t <= arrivals[-1][0]:
            t = math.nextafter(arrivals[-1][0], math.inf)
        arrivals.append((t, int(rng.integers(n_ues))))
    return arrivals
