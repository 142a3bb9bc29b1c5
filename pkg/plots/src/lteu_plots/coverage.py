"""Coverage-CDF figure: one curve per (ratio, band), median-gap callouts."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import COVERAGE_HEADER, GAPS_HEADER, read_rows


def plot_coverage(coverage_csv, gaps_csv, out_path, metric="rsrp_dbm") -> dict:
    """Render the coverage comparison and return the drawn labels.

    One empirical CDF per (ratio, band) for the chosen metric; the median
    gaps are annotated exactly as printed in gaps.csv.
    """
    rows = read_rows(coverage_csv, COVERAGE_HEADER)
    curves = {}
    for row in rows:
        if row["metric"] != metric:
            continue
        curves.setdefault((row["ratio"], row["band_ghz"]), []).append(
            float(row["sample_value"]))
    if not curves:
        raise ValueError(f"{coverage_csv}: no rows for metric {metric!r}")

    annotations = []
    for row in read_rows(gaps_csv, GAPS_HEADER):
        if row["percentile"] == "0.5":
            annotations.append(f"{row['ratio']}: median gap {row['gap_db']} dB")

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    labels = []
    for (ratio, band), samples in curves.items():
        samples = sorted(samples)
        n = len(samples)
        label = f"{ratio} {band}GHz"
        style = "-" if band == "2.6" else "--"
        ax.step(samples, [(k + 1) / n for k in range(n)], style,
                where="post", label=label)
        labels.append(label)
    ax.set_xlabel(f"{metric.replace('_', ' ')}")
    ax.set_ylabel("CDF")
    ax.set_ylim(0.0, 1.0)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8, loc="lower right")
    if annotations:
        ax.text(0.02, 0.98, "\n".join(annotations), transform=ax.transAxes,
                va="top", fontsize=8,
                bbox=dict(boxstyle="round", facecolor="white", alpha=0.8))
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"labels": labels, "annotations": annotations}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=plot_coverage.__doc__)
    parser.add_argument("coverage_csv")
    parser.add_argument("gaps_csv")
    parser.add_argument("out", help="output image path (png/pdf/svg)")
    parser.add_argument("--metric", default="rsrp_dbm",
                        choices=["rsrp_dbm", "sinr_db"])
    args = parser.parse_args(argv)
    try:
        result = plot_coverage(args.coverage_csv, args.gaps_csv, args.out,
                               metric=args.metric)
    except (ValueError, OSError) as exc:
        parser.exit(2, f"plot-coverage: {exc}\n")
    print(f"wrote {args.out} ({len(result['labels'])} curves)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
