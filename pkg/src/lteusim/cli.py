"""Command-line front end: runs experiments, emits CSVs and a manifest.

Reals are written with 6 significant digits and '.' decimals so reruns
with the same manifest are byte-identical.
"""

import argparse
import sys
from pathlib import Path

from . import __version__, engine, scenario
from .config import ConfigurationError, SimConfig, emit_config, parse_config

COVERAGE_CSV = "coverage_cdf.csv"
GAPS_CSV = "gaps.csv"
THROUGHPUT_CSV = "throughput.csv"
SUMMARY_CSV = "summary.csv"
MANIFEST = "manifest.txt"


def _fmt(x) -> str:
    return "%.6g" % x


def _csv_list(text: str) -> list:
    return [item.strip() for item in text.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lteusim",
        description="Deterministic LTE-U coverage and throughput simulator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=Path, default=None,
                       help="flat key=value config file (defaults otherwise)")
        p.add_argument("--seed", type=int, default=None,
                       help="base seed (default: run.seed from the config)")
        p.add_argument("--seeds", type=int, default=1,
                       help="number of consecutive seeds to run")
        p.add_argument("--out", type=Path, default=Path("."),
                       help="output directory")

    cov = sub.add_parser("coverage", help="licensed vs unlicensed coverage CDFs")
    common(cov)
    cov.add_argument("--ratios", type=_csv_list, default=list(scenario.RATIO_LABELS),
                     help="comma-separated ratio labels (default 4:4,4:8,4:16)")
    cov.add_argument("--samples", type=int, default=10000,
                     help="uniform test points per seed")

    tput = sub.add_parser("throughput", help="CA vs DC/standalone mean user throughput")
    common(tput)
    tput.add_argument("--cases", type=_csv_list, default=list(engine.CASES),
                      help="comma-separated cases from {ca,dcsa}")
    tput.add_argument("--policies", type=_csv_list, default=list(engine.POLICIES),
                      help="comma-separated policies from {fixed,flexible}")
    tput.add_argument("--loads", type=_csv_list, default=["2.5", "10"],
                      help="comma-separated arrival rates in files/s")
    return parser


def _load_config(args, experiment: str) -> SimConfig:
    cfg = parse_config(args.config) if args.config else SimConfig()
    cfg.experiment = experiment
    if args.seed is not None:
        cfg.seed = args.seed
    if args.seeds < 1:
        raise ConfigurationError("--seeds must be >= 1")
    return cfg.validate()


def _seed_list(cfg: SimConfig, count: int) -> list:
    return [cfg.seed + i for i in range(count)]


def _write(path: Path, lines) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_manifest(out: Path, cfg: SimConfig, seeds, flags: str) -> None:
    lines = [f"# lteusim {__version__}",
             f"# flags: {flags}",
             "# seeds: " + " ".join(str(s) for s in seeds)]
    lines.extend(emit_config(cfg).splitlines())
    _write(out / MANIFEST, lines)


def cmd_coverage(args) -> int:
    cfg = _load_config(args, "coverage")
    seeds = _seed_list(cfg, args.seeds)
    for ratio in args.ratios:
        if ratio not in scenario.RATIO_LABELS:
            raise ConfigurationError(f"unknown ratio {ratio!r} in --ratios")
    result = engine.run_coverage(cfg, ratios=tuple(args.ratios),
                                 n_samples=args.samples, seeds=seeds)

    rows = ["ratio,band_ghz,metric,sample_value"]
    for ratio in args.ratios:
        for band in (scenario.LICENSED_FC_GHZ, scenario.UNLICENSED_FC_GHZ):
            for metric in ("rsrp_dbm", "sinr_db"):
                curve = result.curves[(ratio, band, metric)]
                rows.extend(f"{ratio},{_fmt(band)},{metric},{_fmt(v)}"
                            for v in curve.values)
    _write(args.out / COVERAGE_CSV, rows)

    gap_rows = ["ratio,percentile,gap_db"]
    for ratio in args.ratios:
        for p in engine.GAP_PERCENTILES:
            gap_rows.append(f"{ratio},{_fmt(p)},{_fmt(result.gaps[(ratio, p)])}")
    _write(args.out / GAPS_CSV, gap_rows)

    flags = f"ratios={','.join(args.ratios)} samples={args.samples}"
    _write_manifest(args.out, cfg, seeds, flags)
    return 0


def cmd_throughput(args) -> int:
    cfg = _load_config(args, "throughput")
    seeds = _seed_list(cfg, args.seeds)
    for case in args.cases:
        if case not in engine.CASES:
            raise ConfigurationError(f"unknown case {case!r} in --cases")
    for pol in args.policies:
        if pol not in engine.POLICIES:
            raise ConfigurationError(f"unknown policy {pol!r} in --policies")
    try:
        loads = [float(l) for l in args.loads]
    except ValueError:
        raise ConfigurationError(f"malformed --loads value in {args.loads}") from None

    rows = ["case,policy,lambda,seed,mean_user_tput_mbps,completed_files"]
    summary = ["case,policy,lambda,mean_user_tput_mbps,n_seeds"]
    for case in args.cases:
        for pol in args.policies:
            for lam in loads:
                means = []
                for seed in seeds:
                    rep = engine.run_throughput(cfg, case, pol, lam, seed)
                    rows.append(f"{case},{pol},{_fmt(lam)},{seed},"
                                f"{_fmt(rep.mean_user_tput_mbps)},{rep.completed_files}")
                    means.append(rep.mean_user_tput_mbps)
                overall = sum(means) / len(means)
                summary.append(f"{case},{pol},{_fmt(lam)},{_fmt(overall)},{len(seeds)}")
    _write(args.out / THROUGHPUT_CSV, rows)
    _write(args.out / SUMMARY_CSV, summary)

    flags = (f"cases={','.join(args.cases)} policies={','.join(args.policies)} "
             f"loads={','.join(args.loads)}")
    _write_manifest(args.out, cfg, seeds, flags)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        if args.command == "coverage":
            return cmd_coverage(args)
        return cmd_throughput(args)
    except (ConfigurationError, ValueError) as exc:
        print(f"lteusim: configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lteusim: i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
