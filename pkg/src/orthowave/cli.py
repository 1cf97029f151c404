"""Command line interface.

Subcommands cover the full pipeline: signal generation, denoising,
Lorenz/entropy diagnostics, atom extraction, polyphase certification,
Monte Carlo benchmarks, image denoising and the filter-pair grid search.
Machine-readable output is JSON or CSV only; plotting stays external.

Exit codes: 0 success, 1 usage error, 2 data/validation error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench, diagnostics, filters, pgm, recipes, signals
from .errors import OrthowaveError
from .shrinkage import ThresholdRule, denoise
from .wavmat import apply, atom

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def build_parser():
    parser = _Parser(prog="orthowave",
                     description="Wavelet matrices, composite transforms, "
                                 "threshold denoising and diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("signal", parents=[], help="generate a test signal")
    p.add_argument("--name", required=True,
                   choices=signals.available_signals() + ["combined"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--snr", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noisy", action="store_true",
                   help="add unit-variance Gaussian noise (stream 0)")
    p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("denoise", help="threshold-denoise a signal file")
    p.add_argument("--recipe", required=True)
    p.add_argument("--rule", default="universal",
                   help='"universal", "universal,mad", or "universal,sigma=V"')
    p.add_argument("--exempt-scaling", action="store_true")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("lorenz", help="Lorenz curve and energy profile")
    p.add_argument("--recipe", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--csv", default=None, help="curve output (default stdout)")
    p.add_argument("--json", default=None, help="EnergyProfile output")

    p = sub.add_parser("atoms", help="extract analysis atoms")
    p.add_argument("--recipe", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", required=True, help="comma-separated indices")
    p.add_argument("--out", default=None)

    p = sub.add_parser("polyphase-check",
                       help="two-channel perfect-reconstruction certificate")
    p.add_argument("--h1", required=True)
    p.add_argument("--h2", default=None,
                   help="second filter; collapses h1*up2(h2) when given")
    p.add_argument("--grid", type=int, default=filters.DEFAULT_GRID)
    p.add_argument("--json", default=None, help="report output (default stdout)")
    p.add_argument("--csv", default=None, help="per-frequency determinant CSV")

    p = sub.add_parser("bench", help="Monte Carlo AMSE benchmark from JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("image-denoise", help="2-D denoising benchmark on a PGM")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--recipe", required=True, help="row/column operator")
    p.add_argument("--recipe2", default=None,
                   help="column operator when different")
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("grid-search", help="rank product pairs by AMSE")
    p.add_argument("--candidates", required=True, help="comma-separated filters")
    p.add_argument("--in", dest="infile", default=None, help="PGM image target")
    p.add_argument("--signal", default=None, help="1-D signal target")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--snr", type=float, default=None)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    return parser


def _write_lines(lines, path):
    if path is None:
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")


def _write_json(payload, path):
    text = json.dumps(payload, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w") as f:
            f.write(text + "\n")


def _parse_rule(text, exempt_scaling):
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if not parts or parts[0] != "universal":
        raise ValueError(f"unsupported rule {text!r}")
    sigma_source, sigma = "auto", None
    for extra in parts[1:]:
        if extra == "mad":
            sigma_source = "auto"
        elif extra.startswith("sigma="):
            value = extra.split("=", 1)[1]
            if value == "mad":
                sigma_source = "auto"
            else:
                sigma_source, sigma = "known", float(value)
        else:
            raise ValueError(f"unsupported rule option {extra!r}")
    return ThresholdRule(sigma_source=sigma_source, sigma=sigma,
                         exempt_scaling=exempt_scaling)


def cmd_signal(args):
    if args.name == "combined":
        x, _ = signals.combined_signal(args.n)
    else:
        x = signals.make_signal(args.name, args.n)
    if args.snr is not None:
        x = signals.rescale_to_snr(x, args.snr)
    if args.noisy:
        x = x + signals.gaussian_noise(signals.NoiseSource(args.seed, 0), args.n)
    if args.out is None:
        for v in x:
            print(repr(float(v)))
    else:
        signals.write_signal_file(x, args.out)
    return 0


def cmd_denoise(args):
    y = signals.read_signal_file(args.infile)
    op = recipes.build_recipe(args.recipe, len(y))
    rule = _parse_rule(args.rule, args.exempt_scaling)
    s_hat, report = denoise(y, op, rule)
    signals.write_signal_file(s_hat, args.out)
    print(json.dumps({
        "recipe": op.recipe,
        "n": op.n,
        "thresholds": list(report.thresholds),
        "kept": report.kept,
        "sigmas": [s if s is None else float(s) for s in report.sigmas],
        "imag_residue": report.imag_residue,
    }, indent=2))
    return 0


def cmd_lorenz(args):
    y = signals.read_signal_file(args.infile)
    op = recipes.build_recipe(args.recipe, len(y))
    d = apply(op, y)
    curve = diagnostics.lorenz(d)
    lines = ["p,L"] + [f"{p!r},{v!r}" for p, v in curve.points]
    _write_lines(lines, args.csv)
    profile = diagnostics.energy_profile(d)
    _write_json({
        "recipe": op.recipe,
        "total_energy": profile.total_energy,
        "top_fractions": {str(q): v for q, v in profile.top_fractions.items()},
        "gini": profile.gini,
        "complexity": profile.complexity,
    }, args.json)
    return 0


def cmd_atoms(args):
    op = recipes.build_recipe(args.recipe, args.n)
    ks = [int(v) for v in args.k.split(",") if v.strip()]
    lines = ["k,i,re,im"]
    for k in ks:
        xi = np.asarray(atom(op, k), dtype=complex)
        lines += [f"{k},{i},{v.real!r},{v.imag!r}" for i, v in enumerate(xi)]
    _write_lines(lines, args.out)
    return 0


def cmd_polyphase_check(args):
    h1 = filters.get_filter(args.h1)
    if args.h2 is None:
        taps = h1.tap_array()
    else:
        taps = filters.collapse_product_filter(h1, filters.get_filter(args.h2))
    report = filters.polyphase_determinant(taps, filters.qmf_taps(taps),
                                           grid_size=args.grid)
    _write_json({
        "filters": [args.h1] + ([args.h2] if args.h2 else []),
        "collapsed_taps": [[v.real, v.imag] for v in report.collapsed_taps],
        "value_at_nyquist": [report.value_at_nyquist.real,
                             report.value_at_nyquist.imag],
        "min_abs_det": report.min_abs_det,
        "is_perfect_reconstruction": report.is_perfect_reconstruction,
        "grid_size": len(report.omegas),
    }, args.json)
    if args.csv:
        lines = ["omega,det_re,det_im"]
        lines += [f"{w!r},{d.real!r},{d.imag!r}"
                  for w, d in zip(report.omegas, report.dets)]
        _write_lines(lines, args.csv)
    return 0


def cmd_bench(args):
    with open(args.config) as f:
        cfg = bench.config_from_dict(json.load(f))
    report = bench.run_mc(cfg, workers=args.workers, out_dir=args.out_dir)
    for m in report.methods:
        print(f"{m.name}\tamse={m.amse:.6f}\tvar={m.mse_variance:.6g}")
    if args.out_dir is None:
        print(json.dumps(report.to_dict()))
    return 0


def cmd_image_denoise(args):
    img = pgm.read_pgm(args.infile)
    w1 = recipes.build_recipe(args.recipe, img.height)
    w2 = recipes.build_recipe(args.recipe2, img.width) if args.recipe2 else w1
    rule = ThresholdRule(sigma_source="known", sigma=args.sigma)
    report = bench.image_mc(img, [(w1.recipe, w1, w2)], args.sigma, rule,
                            master_seed=args.seed, replicates=args.reps,
                            workers=args.workers)
    m = report.methods[0]
    print(f"{m.name}\tamse={m.amse:.6f}\tvar={m.mse_variance:.6g}")
    if args.out_dir is not None:
        bench.write_report(report, args.out_dir, "image_report")
        denoised, _ = bench.denoise_image(img, w1, w2, args.sigma, rule,
                                          signals.NoiseSource(args.seed, 0))
        pgm.write_pgm(denoised, f"{args.out_dir}/denoised.pgm")
    return 0


def cmd_grid_search(args):
    names = [c.strip() for c in args.candidates.split(",") if c.strip()]
    if (args.infile is None) == (args.signal is None):
        raise ValueError("give exactly one of --in (image) / --signal")
    if args.infile is not None:
        if args.sigma is None:
            raise ValueError("image grid search needs --sigma")
        target = pgm.read_pgm(args.infile)
        cfg = bench.McConfig(recipes=(("probe", "wavmat(haar,L=1)"),),
                             signal="doppler", n=target.width,
                             replicates=args.reps, master_seed=args.seed,
                             sigma=args.sigma)
    else:
        target = args.signal
        if (args.sigma is None) == (args.snr is None):
            raise ValueError("signal grid search needs exactly one of "
                             "--sigma / --snr")
        cfg = bench.McConfig(recipes=(("probe", "wavmat(haar,L=1)"),),
                             signal=args.signal, n=args.n,
                             replicates=args.reps, master_seed=args.seed,
                             sigma=args.sigma, snr=args.snr)
    entries = bench.grid_search_pairs(names, target, cfg, levels=args.levels)
    lines = ["first,second,amse"]
    lines += [f"{e.first},{e.second or ''},{e.amse!r}" for e in entries]
    _write_lines(lines, args.out)
    return 0


_COMMANDS = {
    "signal": cmd_signal,
    "denoise": cmd_denoise,
    "lorenz": cmd_lorenz,
    "atoms": cmd_atoms,
    "polyphase-check": cmd_polyphase_check,
    "bench": cmd_bench,
    "image-denoise": cmd_image_denoise,
    "grid-search": cmd_grid_search,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else USAGE_EXIT
    try:
        return _COMMANDS[args.command](args)
    except (OrthowaveError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"orthowave: {e}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
