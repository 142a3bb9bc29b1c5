"""Throughput-gain figure: grouped bars per load with DC/SA-over-CA gains."""

import argparse
from statistics import mean, stdev

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import THROUGHPUT_HEADER, read_rows


def _ordered_unique(values):
    seen = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen


def plot_throughput(throughput_csv, out_path) -> dict:
    """Render seed-averaged mean-user-throughput bars and return the gains.

    Bars are grouped (case x policy) per load; the DC/SA percentage gain
    over CA is printed above each policy pair. Error bars show the spread
    over seeds and are omitted for single-seed data.
    """
    rows = read_rows(throughput_csv, THROUGHPUT_HEADER)
    by_combo = {}
    for row in rows:
        key = (row["case"], row["policy"], row["lambda"])
        by_combo.setdefault(key, []).append(float(row["mean_user_tput_mbps"]))

    loads = _ordered_unique(row["lambda"] for row in rows)
    policies = _ordered_unique(row["policy"] for row in rows)
    for lam in loads:
        for pol in policies:
            for case in ("ca", "dcsa"):
                if (case, pol, lam) not in by_combo:
                    raise ValueError(f"{throughput_csv}: no rows for "
                                     f"case={case}, policy={pol}, lambda={lam}")

    seeds_per_combo = min(len(v) for v in by_combo.values())
    averaged = {key: mean(vals) for key, vals in by_combo.items()}
    spread = {key: (stdev(vals) if len(vals) > 1 else 0.0)
              for key, vals in by_combo.items()}
    gains = {}
    for lam in loads:
        for pol in policies:
            ca = averaged[("ca", pol, lam)]
            dcsa = averaged[("dcsa", pol, lam)]
            gains[(pol, lam)] = f"{(dcsa - ca) / ca * 100:.1f}%"

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    width = 0.18
    colors = {"ca": "tab:blue", "dcsa": "tab:orange"}
    draw_error_bars = seeds_per_combo > 1
    for gi, lam in enumerate(loads):
        for pi, pol in enumerate(policies):
            xs = gi + (pi - (len(policies) - 1) / 2) * (2.4 * width)
            pair_top = 0.0
            for ci, case in enumerate(("ca", "dcsa")):
                key = (case, pol, lam)
                x = xs + (ci - 0.5) * width
                err = spread[key] if draw_error_bars else None
                ax.bar(x, averaged[key], width=width, color=colors[case],
                       yerr=err, capsize=3 if draw_error_bars else 0,
                       label=case.upper() if (gi, pi) == (0, 0) else None)
                pair_top = max(pair_top, averaged[key] + (err or 0.0))
            ax.text(xs, pair_top * 1.02, gains[(pol, lam)], ha="center", fontsize=9)
            ax.text(xs, -0.06, pol, ha="center", fontsize=8,
                    transform=ax.get_xaxis_transform())
    ax.set_xticks(range(len(loads)))
    ax.set_xticklabels([f"lambda = {lam} files/s" for lam in loads])
    ax.tick_params(axis="x", pad=18)
    ax.set_ylabel("Mean user throughput (Mbit/s)")
    ax.set_ylim(bottom=0.0)
    handles, labels = ax.get_legend_handles_labels()
    ax.legend(handles, ["CA only", "DC/standalone"], loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"gains": gains, "means": averaged, "error_bars": draw_error_bars}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=plot_throughput.__doc__)
    parser.add_argument("throughput_csv")
    parser.add_argument("out", help="output image path (png/pdf/svg)")
    args = parser.parse_args(argv)
    try:
        result = plot_throughput(args.throughput_csv, args.out)
    except (ValueError, OSError) as exc:
        parser.exit(2, f"plot-throughput: {exc}\n")
    gains = ", ".join(f"{pol}@{lam}: {g}" for (pol, lam), g in result["gains"].items())
    print(f"wrote {args.out} (gains {gains})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
