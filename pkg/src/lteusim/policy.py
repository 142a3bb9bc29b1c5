"""Operation modes and carrier-selection policies.

A UE's carrier capability is three. CA anchors on the macro (carrier 1)
plus the small-cell licensed carrier (2) plus one unlicensed carrier;
DC anchors on the macro plus any two distinct small-cell carriers;
standalone uses both unlicensed carriers and no licensed one at all.
Only small-cell carriers (2-4) carry counted throughput, so carrier 1
contributes zero to every rate estimate.
"""

from enum import Enum

from .config import ConfigurationError

UE_CARRIER_CAPABILITY = 3

MACRO_CARRIER = 1
SMALL_LICENSED_CARRIER = 2
UNLICENSED_CARRIERS = (3, 4)


class Mode(Enum):
    CA = "ca"
    DC = "dc"
    SA = "sa"


# Feasible full assignments per mode, each within the capability bound.
_CANDIDATES = {
    Mode.CA: ((1, 2, 3), (1, 2, 4)),
    Mode.DC: ((1, 2, 3), (1, 2, 4), (1, 3, 4)),
    Mode.SA: ((3, 4),),
}

# Tie-break: prefer the mode that uses unlicensed spectrum the most.
_MODE_PRECEDENCE = (Mode.SA, Mode.DC, Mode.CA)


def candidate_carriers(mode: Mode) -> tuple:
    """All feasible carrier assignments for a mode, as sorted id tuples."""
    return _CANDIDATES[mode]


def assignment_valid(mode: Mode, carriers) -> bool:
    return (len(carriers) <= UE_CARRIER_CAPABILITY
            and tuple(sorted(carriers)) in _CANDIDATES[mode])


def counted(carriers) -> tuple:
    """Small-cell carriers of an assignment (macro carrier dropped)."""
    return tuple(c for c in carriers if c != MACRO_CARRIER)


def validate_carrier_table(carriers):
    specs = {c.id: c for c in carriers}
    if sorted(specs) != [1, 2, 3, 4]:
        raise ConfigurationError("carrier table must hold exactly carriers 1-4")
    if specs[2].bandwidth_mhz != 10.0:
        raise ConfigurationError("carrier 2 must be the 10 MHz licensed carrier")
    for cid in UNLICENSED_CARRIERS:
        if specs[cid].band_class.value != "unlicensed" or specs[cid].bandwidth_mhz != 20.0:
            raise ConfigurationError(f"carrier {cid} must be unlicensed, 20 MHz")
    return specs


def allocate_fixed(ue_ids, unlicensed_carriers) -> dict:
    """Round-robin unlicensed-carrier assignment, frozen for the whole run."""
    carriers = list(unlicensed_carriers)
    if not carriers:
        raise ConfigurationError("fixed allocation needs at least one unlicensed carrier")
    return {ue: carriers[i % len(carriers)] for i, ue in enumerate(ue_ids)}


def allocate_flexible(estimates: dict) -> int:
    """CSI-driven pick: carrier with the highest estimated rate, ties to
    the lowest carrier id."""
    if not estimates:
        raise ValueError("flexible allocation needs a non-empty estimate map")
    return max(sorted(estimates), key=lambda c: estimates[c])


def select_mode(per_mode_estimates: dict) -> Mode:
    """Pick the mode whose (best feasible) counted rate is highest.

    Ties resolve SA > DC > CA. All three modes must be present.
    """
    missing = set(Mode) - set(per_mode_estimates)
    if missing:
        raise ValueError(f"mode estimates missing {sorted(m.value for m in missing)}")
    # max keeps the first of equals, so precedence order implements the tie-break
    return max(_MODE_PRECEDENCE, key=lambda m: per_mode_estimates[m])
