"""Monte Carlo AMSE benchmarks for 1-D signals and 2-D images.

The engine is paired by design: replicate j draws noise from stream j of
the master seed and every method denoises that same noisy realization,
so method comparisons share noise and reruns are bit-reproducible no
matter how many workers execute the replicates.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .compose import inverse_transform2d, transform2d
from .errors import NonSquare, NotPowerOfTwo, ReplicateFailure
from .pgm import GrayImage
from .recipes import build_recipe
from .shrinkage import (AUTO, KNOWN, MAD_FINEST, ThresholdRule, denoise,
                        universal_threshold)
from .signals import (NoiseSource, combined_signal, gaussian_noise,
                      make_signal, read_signal_file, rescale_to_snr)
from .wavmat import WaveletOperator

WORKERS_ENV = "ORTHOWAVE_WORKERS"

#: recipes behind the adaptive (block-diagonal) benchmark
ADAPTIVE_RECIPE = ("blockdiag(wavmat(sym4,L=3),wavmat(haar,L=3),"
                   "wavmat(db4,L=3),wavmat(db3,L=3))")
ADAPTIVE_SINGLES = ("sym4", "haar", "db4", "db3")

#: cross-family benchmark on the doppler signal: a complex/real product,
#: its Kronecker and similarity variants, and the two single bases.  The
#: kron/product factor phases are free conventions of the construction;
#: these defaults are the calibrated operating point of the benchmark.
DOPPLER_BENCH_RECIPES = (
    ("kron", "kron(wavmat(cd6,L=3,eps=111,n=128),wavmat(haar,L=3,eps=111,n=8))"),
    ("similarity", "similarity(wavmat(cd6,L=3),wavmat(haar,L=3))"),
    ("product", "product(wavmat(cd6,L=3,eps=100),wavmat(haar,L=3))"),
    ("cd6", "wavmat(cd6,L=3)"),
    ("haar", "wavmat(haar,L=3)"),
)


@dataclass(frozen=True)
class McConfig:
    """One benchmark: named transforms, a clean signal, noise, a rule."""

    recipes: tuple
    signal: str
    n: int
    replicates: int = 200
    master_seed: int = 0
    snr: float | None = None
    sigma: float | None = None
    rule: ThresholdRule | None = None

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if (self.snr is None) == (self.sigma is None):
            raise ValueError("specify exactly one of snr / sigma")

    def resolved_rule(self):
        """Default: the noise level is known inside a simulation (1 in
        snr mode, the configured sigma otherwise)."""
        if self.rule is not None:
            return self.rule
        sigma = 1.0 if self.snr is not None else float(self.sigma)
        return ThresholdRule(sigma_source=KNOWN, sigma=sigma)

    def to_dict(self):
        return {
            "recipes": [[name, text] for name, text in self.recipes],
            "signal": self.signal,
            "n": self.n,
            "replicates": self.replicates,
            "master_seed": self.master_seed,
            "snr": self.snr,
            "sigma": self.sigma,
            "rule": None if self.rule is None else {
                "kind": self.rule.kind,
                "lambda_source": self.rule.lambda_source,
                "sigma_source": self.rule.sigma_source,
                "sigma": self.rule.sigma,
                "lam": self.rule.lam,
                "exempt_scaling": self.rule.exempt_scaling,
            },
        }


def config_from_dict(raw):
    rule_raw = raw.get("rule")
    rule = None if rule_raw is None else ThresholdRule(
        kind=rule_raw.get("kind", "hard"),
        lambda_source=rule_raw.get("lambda_source", "universal"),
        sigma_source=rule_raw.get("sigma_source", AUTO),
        sigma=rule_raw.get("sigma"),
        lam=rule_raw.get("lam"),
        exempt_scaling=rule_raw.get("exempt_scaling", False),
    )
    return McConfig(
        recipes=tuple((str(n), str(t)) for n, t in raw["recipes"]),
        signal=str(raw["signal"]),
        n=int(raw["n"]),
        replicates=int(raw.get("replicates", 200)),
        master_seed=int(raw.get("master_seed", 0)),
        snr=raw.get("snr"),
        sigma=raw.get("sigma"),
        rule=rule,
    )


def config_fingerprint(cfg: McConfig) -> str:
    blob = json.dumps(cfg.to_dict(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class MethodResult:
    name: str
    amse: float
    mse_variance: float
    mse_list: tuple

    @classmethod
    def from_mses(cls, name, mses):
        arr = np.asarray(mses, dtype=float)
        var = float(arr.var(ddof=1)) if len(arr) > 1 else 0.0
        return cls(name=name, amse=float(arr.mean()), mse_variance=var,
                   mse_list=tuple(arr.tolist()))


@dataclass(frozen=True)
class McReport:
    config_fingerprint: str
    methods: tuple
    seed: int
    wall_time_s: float
    config: dict | None = None

    def method(self, name):
        for m in self.methods:
            if m.name == name:
                return m
        raise KeyError(name)

    def to_dict(self):
        out = {
            "config_fingerprint": self.config_fingerprint,
            "methods": [
                {"name": m.name, "amse": m.amse,
                 "mse_variance": m.mse_variance, "mse": list(m.mse_list)}
                for m in self.methods
            ],
            "seed": self.seed,
            "wall_time_s": self.wall_time_s,
        }
        if self.config is not None:
            out["config"] = self.config
        return out

    def content_equal(self, other):
        """Equality of the scientific payload (wall time excluded)."""
        a, b = self.to_dict(), other.to_dict()
        a.pop("wall_time_s"), b.pop("wall_time_s")
        return a == b


def resolve_worker_count(workers=None):
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    return max(1, workers)


def resolve_clean_signal(cfg: McConfig):
    """Clean target: a named generator, the combined signal, or a file."""
    name = cfg.signal.strip().lower()
    if name == "combined":
        x, _ = combined_signal(cfg.n)
    elif os.path.exists(cfg.signal):
        x = read_signal_file(cfg.signal)
        if len(x) != cfg.n:
            raise ValueError(f"file signal has length {len(x)}, config says {cfg.n}")
    else:
        x = make_signal(name, cfg.n)
    if cfg.snr is not None:
        x = rescale_to_snr(x, cfg.snr)
    return x


def _mse(estimate, truth):
    return float(np.mean(np.abs(estimate - truth) ** 2))


def run_mc(cfg: McConfig, workers=None, out_dir=None, basename="mc_report"):
    """Paired Monte Carlo denoising benchmark; optionally persist reports."""
    t0 = time.perf_counter()
    x = resolve_clean_signal(cfg)
    noise_scale = 1.0 if cfg.snr is not None else float(cfg.sigma)
    operators = [(name, build_recipe(text, cfg.n)) for name, text in cfg.recipes]

    rule = cfg.resolved_rule()

    def one_replicate(j):
        try:
            eps = gaussian_noise(NoiseSource(cfg.master_seed, j), cfg.n)
            y = x + noise_scale * eps
            return [_mse(denoise(y, op, rule)[0], x) for _, op in operators]
        except Exception as e:
            raise ReplicateFailure(j, e) from e

    per_replicate = _run_indexed(one_replicate, cfg.replicates,
                                 resolve_worker_count(workers))
    by_method = np.asarray(per_replicate, dtype=float).T
    methods = tuple(MethodResult.from_mses(name, mses)
                    for (name, _), mses in zip(operators, by_method))
    report = McReport(config_fingerprint=config_fingerprint(cfg),
                      methods=methods, seed=cfg.master_seed,
                      wall_time_s=time.perf_counter() - t0,
                      config=cfg.to_dict())
    if out_dir is not None:
        write_report(report, out_dir, basename)
    return report


def _run_indexed(task, count, workers):
    if workers <= 1:
        return [task(j) for j in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(count)))


def doppler_config(replicates=200, master_seed=0, snr=5.0, n=1024, rule=None):
    """Composite-vs-single benchmark on the doppler signal."""
    return McConfig(recipes=DOPPLER_BENCH_RECIPES, signal="doppler", n=n,
                    replicates=replicates, master_seed=master_seed, snr=snr,
                    rule=rule)


def adaptive_config(replicates=200, master_seed=0, snr=5.0, n=1024,
                    rule=None):
    """Block-diagonal adaptive transform vs its four single bases."""
    recipes = [("adaptive", ADAPTIVE_RECIPE)]
    recipes += [(name, f"wavmat({name},L=3)") for name in ADAPTIVE_SINGLES]
    return McConfig(recipes=tuple(recipes), signal="combined", n=n,
                    replicates=replicates, master_seed=master_seed, snr=snr,
                    rule=rule)


def run_adaptive_mc(replicates=200, master_seed=0, snr=5.0, workers=None,
                    out_dir=None):
    return run_mc(adaptive_config(replicates, master_seed, snr),
                  workers=workers, out_dir=out_dir, basename="adaptive_report")


def _check_image(img: GrayImage, w1, w2):
    if img.width != img.height:
        raise NonSquare(f"image is {img.width}x{img.height}")
    if img.width & (img.width - 1):
        raise NotPowerOfTwo(f"side {img.width} is not a power of two")
    if (w1.n, w2.n) != (img.height, img.width):
        raise ValueError(f"operators sized ({w1.n},{w2.n}) do not fit "
                         f"{img.height}x{img.width}")


def denoise_image(img: GrayImage, w1: WaveletOperator, w2: WaveletOperator,
                  sigma, rule: ThresholdRule, src: NoiseSource):
    """Add noise, 2-D transform, hard-threshold, reconstruct, score.

    The MSE against the clean image is computed in floating point before
    the output is clamped back to [0, maxval].  The supplied sigma feeds
    the universal threshold directly unless the rule asks for MAD
    estimation from the finest 2-D band.
    """
    _check_image(img, w1, w2)
    n_pixels = img.width * img.height
    noise = gaussian_noise(src, n_pixels).reshape(img.pixels.shape)
    noisy = img.pixels + float(sigma) * noise

    coeffs = transform2d(noisy, w1, w2)
    if rule.lambda_source == "fixed":
        lam = rule.lam
    else:
        sigma_hat = float(sigma) if rule.sigma_source in (AUTO, KNOWN) else \
            _mad_sigma_2d(coeffs, rule.sigma_source)
        if rule.sigma_source == KNOWN and rule.sigma is not None:
            sigma_hat = rule.sigma
        lam = universal_threshold(n_pixels, sigma_hat)
    keep = np.abs(coeffs) > lam
    if rule.exempt_scaling:
        r = _scaling_len(w1)
        c = _scaling_len(w2)
        keep[:r, :c] = True
    recon = inverse_transform2d(np.where(keep, coeffs, 0), w1, w2)
    if np.iscomplexobj(recon):
        recon = recon.real
    mse = _mse(recon, img.pixels)
    return GrayImage(pixels=np.clip(recon, 0.0, img.maxval),
                     maxval=img.maxval), mse


def _scaling_len(op):
    idx = op.layout.scaling_indices()
    return len(idx) if len(idx) else 0


def _mad_sigma_2d(coeffs, source):
    n = coeffs.shape[0]
    block = coeffs[n // 2:, n // 2:] if source == MAD_FINEST else coeffs
    return float(np.median(np.abs(block))) / 0.6745


def image_mc(img, methods, sigma, rule, master_seed=0, replicates=50,
             workers=None):
    """Paired image benchmark; `methods` is a list of (name, w1, w2)."""
    t0 = time.perf_counter()

    def one_replicate(j):
        try:
            src = NoiseSource(master_seed, j)
            return [denoise_image(img, w1, w2, sigma, rule, src)[1]
                    for _, w1, w2 in methods]
        except Exception as e:
            raise ReplicateFailure(j, e) from e

    per_replicate = _run_indexed(one_replicate, replicates,
                                 resolve_worker_count(workers))
    by_method = np.asarray(per_replicate, dtype=float).T
    results = tuple(MethodResult.from_mses(name, mses)
                    for (name, _, _), mses in zip(methods, by_method))
    blob = json.dumps({"image_shape": list(img.pixels.shape), "sigma": sigma,
                       "replicates": replicates, "master_seed": master_seed,
                       "methods": [m[0] for m in methods]}, sort_keys=True)
    return McReport(config_fingerprint=hashlib.sha256(blob.encode()).hexdigest(),
                    methods=results, seed=master_seed,
                    wall_time_s=time.perf_counter() - t0)


@dataclass(frozen=True)
class GridEntry:
    first: str
    second: str | None
    amse: float

    @property
    def label(self):
        return self.first if self.second is None else \
            f"{self.first}*{self.second}"


def grid_search_pairs(candidates, target, cfg: McConfig, levels=3,
                      workers=None):
    """Rank every ordered product pair (and each single) by AMSE.

    `target` may be a GrayImage (2-D pipeline at cfg.sigma) or a signal
    name/path (1-D pipeline under cfg).  Ascending AMSE; ties break
    lexicographically on the label.
    """
    candidates = list(dict.fromkeys(candidates))
    if not candidates:
        raise ValueError("need at least one candidate filter")
    combos = [(name, None) for name in candidates]
    combos += [(a, b) for a in candidates for b in candidates]

    def recipe_for(a, b):
        if b is None:
            return f"wavmat({a},L={levels})"
        return f"product(wavmat({a},L={levels}),wavmat({b},L={levels}))"

    if isinstance(target, GrayImage):
        methods = []
        for a, b in combos:
            op = build_recipe(recipe_for(a, b), target.width)
            methods.append((f"{a}" if b is None else f"{a}*{b}", op, op))
        report = image_mc(target, methods, cfg.sigma, cfg.resolved_rule(),
                          cfg.master_seed, cfg.replicates, workers)
        mses = [m.amse for m in report.methods]
    else:
        recipes = tuple((f"{a}" if b is None else f"{a}*{b}", recipe_for(a, b))
                        for a, b in combos)
        sub = McConfig(recipes=recipes, signal=str(target), n=cfg.n,
                       replicates=cfg.replicates, master_seed=cfg.master_seed,
                       snr=cfg.snr, sigma=cfg.sigma, rule=cfg.rule)
        report = run_mc(sub, workers=workers)
        mses = [m.amse for m in report.methods]

    entries = [GridEntry(first=a, second=b, amse=mse)
               for (a, b), mse in zip(combos, mses)]
    return sorted(entries, key=lambda e: (e.amse, e.label))


def write_report(report: McReport, out_dir, basename):
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, f"{basename}.json")
    with open(json_path, "w") as f:
        json.dump(report.to_dict(), f, indent=2)
    csv_path = os.path.join(out_dir, f"{basename}.csv")
    with open(csv_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["method", "replicate", "mse"])
        for m in report.methods:
            for j, mse in enumerate(m.mse_list):
                writer.writerow([m.name, j, repr(mse)])
    return json_path, csv_path
