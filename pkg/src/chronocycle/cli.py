"""Command-line pipeline: synth -> embed -> ph -> optimize -> export.

Configuration comes from an optional key=value file plus per-flag overrides;
every numeric field is validated up front so bad configs fail as usage
errors before any work starts.  Exit codes: 0 ok, 1 usage, 2 data error,
3 solver error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields
from typing import Optional, Union

import numpy as np

from .embedding import (
    EmbeddingParams,
    LabeledPointCloud,
    embedding_dimension,
    orthogonality_score,
    read_series_csv,
    sliding_window,
    spectrum,
    subsample_indices,
    write_series_csv,
)
from .lpsolver import SolverStalled
from .optimize import RelaxationPolicy, optimize_all
from .reduction import full_diagram, reduce as reduce_filtration
from .rips import ENCLOSING, RipsConfig, build_rips, count_rips_simplices
from .signals import double_sine, noisy_sine
from .weights import KINDS, EUCLIDEAN


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; route through exit 1
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# configuration


@dataclass
class PipelineConfig:
    input: Optional[str] = None
    out_dir: str = "."
    seed: int = 0
    kind: str = "double_sine"
    n: int = 1000
    t_end: float = 60 * math.pi
    sigma: float = 0.1
    threshold_fraction: float = 0.1
    tau_count: int = 200
    tau_min: Optional[float] = None
    tau_max: Optional[float] = None
    d: Optional[int] = None
    tau: Optional[float] = None
    max_dim: int = 1
    max_radius: Union[float, str] = ENCLOSING
    subsample_ph: int = 1000
    simplex_cap: int = 5_000_000
    subsample_opt: int = 500
    policy: str = "full"
    kinds: str = "vertex,simplex,length"
    significance: Optional[float] = None
    optimize_dim: int = 1
    backend: str = "builtin"
    round_tol: float = 1e-6

    def validate(self):
        if self.n < 2:
            raise UsageError("n must be at least 2")
        if self.sigma < 0:
            raise UsageError("sigma must be non-negative")
        if not self.t_end > 0:
            raise UsageError("t_end must be positive")
        if not 0 < self.threshold_fraction <= 1:
            raise UsageError("threshold_fraction must be in (0, 1]")
        if self.tau_count < 1:
            raise UsageError("tau_count must be positive")
        for name in ("tau_min", "tau_max", "tau"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise UsageError(f"{name} must be positive")
        if self.d is not None and self.d < 1:
            raise UsageError("d must be at least 1")
        if not 1 <= self.max_dim <= 3:
            raise UsageError("max_dim must be between 1 and 3")
        if self.max_radius != ENCLOSING and not float(self.max_radius) > 0:
            raise UsageError("max_radius must be positive or 'enclosing'")
        if self.subsample_ph < 2 or self.subsample_opt < 2:
            raise UsageError("subsample sizes must be at least 2")
        if self.simplex_cap < 1:
            raise UsageError("simplex_cap must be positive")
        if self.kind not in ("noisy_sine", "double_sine"):
            raise UsageError(f"unknown synth kind {self.kind!r}")
        if self.backend not in ("builtin", "external"):
            raise UsageError(f"unknown backend {self.backend!r}")
        if not self.round_tol > 0:
            raise UsageError("round_tol must be positive")
        if self.significance is not None and self.significance < 0:
            raise UsageError("significance must be non-negative")
        if not 0 <= self.optimize_dim <= self.max_dim:
            raise UsageError("optimize_dim must lie within [0, max_dim]")
        self.parse_policy()
        if not self.kind_list():
            raise UsageError("kinds must name at least one weight kind")

    def parse_policy(self) -> RelaxationPolicy:
        spec = self.policy.strip()
        try:
            if spec == "full":
                return RelaxationPolicy.full()
            if spec.startswith("fraction:"):
                return RelaxationPolicy.fraction(float(spec.split(":", 1)[1]))
            if spec.startswith("absolute:"):
                return RelaxationPolicy.absolute(float(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(f"bad policy {self.policy!r}: {exc}")
        raise UsageError(
            f"bad policy {self.policy!r} (full | fraction:RHO | absolute:EPS)"
        )

    def kind_list(self) -> list[str]:
        out = []
        for part in self.kinds.split(","):
            part = part.strip()
            if not part:
                continue
            if part not in KINDS + (EUCLIDEAN,):
                raise UsageError(f"unknown weight kind {part!r}")
            out.append(part)
        return out


_FIELD_TYPES = {f.name: f for f in fields(PipelineConfig)}


def _convert(key: str, raw: str):
    if key not in _FIELD_TYPES:
        raise UsageError(f"unknown config key {key!r}")
    try:
        if key in ("input", "out_dir", "kind", "policy", "kinds", "backend"):
            return raw
        if key == "max_radius":
            return raw if raw == ENCLOSING else float(raw)
        if key in ("seed", "n", "tau_count", "max_dim", "subsample_ph",
                   "simplex_cap", "subsample_opt", "optimize_dim", "d"):
            return int(raw)
        return float(raw)
    except ValueError:
        raise UsageError(f"bad value for {key}: {raw!r}")


def load_config_file(path) -> dict:
    """TOML-like key = value lines; # comments; quotes optional."""
    out = {}
    try:
        with open(path) as fh:
            for ln, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{ln}: expected key = value")
                key, _, raw = line.partition("=")
                key, raw = key.strip(), raw.strip().strip("\"'")
                out[key] = _convert(key, raw)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    return out


def build_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig()
    if getattr(args, "config", None):
        for key, val in load_config_file(args.config).items():
            setattr(cfg, key, val)
    for key in _FIELD_TYPES:
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, _convert(key, val) if isinstance(val, str) else val)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# deterministic file output


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return None
    return obj


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(_jsonable(obj), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed JSON in {path}: {exc}")


def _path(cfg: PipelineConfig, name: str) -> str:
    return os.path.join(cfg.out_dir, name)


# ---------------------------------------------------------------------------
# commands


def cmd_synth(cfg: PipelineConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    if cfg.kind == "noisy_sine":
        ts = noisy_sine(n=cfg.n, t_end=cfg.t_end, sigma=cfg.sigma, seed=cfg.seed)
    else:
        ts = double_sine(n=cfg.n, t_end=cfg.t_end)
    out = _path(cfg, "series.csv")
    write_series_csv(ts, out)
    print(out)
    return 0


def cmd_embed(cfg: PipelineConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    src = cfg.input or _path(cfg, "series.csv")
    try:
        ts = read_series_csv(src)
    except OSError as exc:
        raise DataError(f"cannot read series {src}: {exc}")
    s = spectrum(ts, cfg.threshold_fraction)
    d = cfg.d if cfg.d is not None else embedding_dimension(s)
    period_max = 2 * math.pi / min(s.frequencies)
    lo = cfg.tau_min if cfg.tau_min is not None else period_max / cfg.tau_count
    hi = cfg.tau_max if cfg.tau_max is not None else period_max
    if not lo <= hi:
        raise UsageError("tau_min must not exceed tau_max")
    grid = np.linspace(lo, hi, cfg.tau_count)
    curve = [(float(t), orthogonality_score(s, d, float(t))) for t in grid]
    if cfg.tau is not None:
        tau = cfg.tau
    else:
        tau = min(curve, key=lambda p: (p[1], p[0]))[0]
    pc = sliding_window(ts, EmbeddingParams(d=d, tau=tau))
    out = _path(cfg, "embedding.json")
    write_json(out, {
        "schema": 1,
        "d": d,
        "tau": tau,
        "curve": [[t, sc] for t, sc in curve],
        "peaks": s.peaks,
        "points": pc.points,
        "labels": pc.labels,
    })
    print(out)
    return 0


def _load_cloud(cfg: PipelineConfig):
    emb = read_json(_path(cfg, "embedding.json"))
    pts = np.asarray(emb["points"], float)
    labels = np.asarray(emb["labels"], float)
    if len(pts) < 2:
        raise DataError("embedding has fewer than 2 points")
    return emb, LabeledPointCloud(points=pts, labels=labels)


def _guarded_rips(cfg: PipelineConfig, cloud: LabeledPointCloud):
    rips_cfg = RipsConfig(max_dim=cfg.max_dim, max_radius=cfg.max_radius)
    counts = count_rips_simplices(cloud.points, rips_cfg)
    total = sum(counts)
    if total > cfg.simplex_cap:
        raise DataError(
            f"simplex budget exceeded: {total} simplices > cap {cfg.simplex_cap}"
            " (lower max_radius, max_dim, or the subsample size)"
        )
    return build_rips(cloud, rips_cfg)


def _pair_row(pr, f, to_embedding):
    return {
        "dim": pr.dim,
        "birth": pr.birth,
        "death": None if pr.essential else pr.death,
        "birth_simplex": pr.birth_simplex,
        "death_simplex": pr.death_simplex,
        "initial_rep": [
            [to_embedding[v] for v in f.simplices[i]]
            for i in pr.initial_rep.support
        ],
    }


def cmd_ph(cfg: PipelineConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    _, pc = _load_cloud(cfg)
    k = min(cfg.subsample_ph, len(pc))
    idx = subsample_indices(len(pc), k)
    cloud = LabeledPointCloud(points=pc.points[idx], labels=pc.labels[idx])
    filt = _guarded_rips(cfg, cloud)
    dec = reduce_filtration(filt)
    pairs = full_diagram(dec, max_dim=cfg.max_dim)
    to_emb = [int(i) for i in idx]
    out = _path(cfg, "diagram.json")
    write_json(out, {
        "schema": 1,
        "subsample_indices": to_emb,
        "max_dim": cfg.max_dim,
        "pairs": [_pair_row(pr, filt, to_emb) for pr in pairs],
    })
    print(out)
    return 0


def cmd_optimize(cfg: PipelineConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    if not os.path.exists(_path(cfg, "diagram.json")):
        raise DataError("diagram.json not found: run the ph command first")
    _, pc = _load_cloud(cfg)
    k = min(cfg.subsample_opt, len(pc))
    idx = subsample_indices(len(pc), k)
    cloud = LabeledPointCloud(points=pc.points[idx], labels=pc.labels[idx])
    filt = _guarded_rips(cfg, cloud)
    dec = reduce_filtration(filt)
    pairs = dec.pairs(cfg.optimize_dim)
    policy = cfg.parse_policy()
    reps = optimize_all(
        pairs,
        policy,
        cfg.kind_list(),
        filt,
        dec,
        cloud.labels,
        points=cloud.points,
        significance=cfg.significance,
        backend=cfg.backend,
        round_tol=cfg.round_tol,
    )
    to_emb = [int(i) for i in idx]
    rows = []
    for rep in reps:
        sol = rep.solution
        support = [
            [to_emb[v] for v in filt.simplices[g]] for g in sol.support
        ]
        rows.append({
            "pair": {
                "dim": rep.pair.dim,
                "birth": rep.pair.birth,
                "death": None if rep.pair.essential else rep.pair.death,
                "birth_simplex": rep.pair.birth_simplex,
                "death_simplex": rep.pair.death_simplex,
            },
            "kind": rep.loss_kind,
            "policy": rep.policy.describe(),
            "relaxed_birth": rep.relaxed_birth,
            "objective": sol.objective,
            "residual": sol.residual,
            "iterations": sol.iterations,
            "dispersion": rep.dispersion,
            "fractional": not rep.rounded_is_cycle,
            "support": support,
            "coefficients": sol.support_coefficients,
            "support_labels": sorted(
                {float(cloud.labels[v]) for s in sol.support
                 for v in filt.simplices[s]}
            ),
        })
    out = _path(cfg, "representatives.json")
    write_json(out, {"schema": 1, "subsample_indices": to_emb, "classes": rows})
    print(out)
    return 0


def cmd_export(cfg: PipelineConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    dia = read_json(_path(cfg, "diagram.json"))
    with open(_path(cfg, "diagram.csv"), "w", newline="") as fh:
        fh.write("dim,birth,death\n")
        for row in dia["pairs"]:
            death = "" if row["death"] is None else repr(float(row["death"]))
            fh.write(f"{row['dim']},{float(row['birth'])!r},{death}\n")

    emb = read_json(_path(cfg, "embedding.json"))
    pts = np.asarray(emb["points"], float)
    labels = np.asarray(emb["labels"], float)
    centered = pts - pts.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = vt[:3]
    # deterministic orientation: largest-magnitude loading positive
    for i in range(len(comps)):
        j = int(np.argmax(np.abs(comps[i])))
        if comps[i][j] < 0:
            comps[i] = -comps[i]
    proj = centered @ comps.T
    if proj.shape[1] < 3:
        proj = np.hstack([proj, np.zeros((len(proj), 3 - proj.shape[1]))])
    with open(_path(cfg, "pca.csv"), "w", newline="") as fh:
        fh.write("pc1,pc2,pc3,label\n")
        for row, lab in zip(proj, labels):
            fh.write(
                f"{float(row[0])!r},{float(row[1])!r},"
                f"{float(row[2])!r},{float(lab)!r}\n"
            )

    reps_path = _path(cfg, "representatives.json")
    if os.path.exists(reps_path):
        reps = read_json(reps_path)
        series_path = cfg.input or _path(cfg, "series.csv")
        try:
            ts = read_series_csv(series_path)
        except OSError as exc:
            raise DataError(f"cannot read series {series_path}: {exc}")
        span = (emb["d"] - 1) * emb["tau"]
        for i, row in enumerate(reps["classes"]):
            starts = sorted({lab for lab in row["support_labels"]})
            path = _path(cfg, f"overlay_{i}.csv")
            with open(path, "w", newline="") as fh:
                fh.write("t,value,in_support\n")
                for t, v in zip(ts.times(), ts.values):
                    flag = int(
                        any(s - 1e-12 <= t <= s + span + 1e-12 for s in starts)
                    )
                    fh.write(f"{float(t)!r},{float(v)!r},{flag}\n")
    print(_path(cfg, "diagram.csv"))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--config", help="key = value configuration file")
    sub.add_argument("--out-dir", dest="out_dir", help="output directory")
    sub.add_argument("--seed", type=int, help="random seed")


def make_parser() -> _Parser:
    parser = _Parser(prog="chronocycle", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("synth", help="generate a synthetic series CSV")
    _add_common(p)
    p.add_argument("--kind", choices=["noisy_sine", "double_sine"])
    p.add_argument("--n", type=int)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--sigma", type=float)

    p = subs.add_parser("embed", help="sliding-window embedding of a series")
    _add_common(p)
    p.add_argument("--input", help="series CSV (default out_dir/series.csv)")
    p.add_argument("--threshold-fraction", dest="threshold_fraction", type=float)
    p.add_argument("--tau-count", dest="tau_count", type=int)
    p.add_argument("--tau-min", dest="tau_min", type=float)
    p.add_argument("--tau-max", dest="tau_max", type=float)
    p.add_argument("--d", type=int, help="override the embedding dimension")
    p.add_argument("--tau", type=float, help="override the delay")

    p = subs.add_parser("ph", help="Rips persistence of the embedding")
    _add_common(p)
    p.add_argument("--max-dim", dest="max_dim", type=int)
    p.add_argument("--max-radius", dest="max_radius")
    p.add_argument("--subsample", dest="subsample_ph", type=int)
    p.add_argument("--simplex-cap", dest="simplex_cap", type=int)

    p = subs.add_parser("optimize", help="time-optimal cycle representatives")
    _add_common(p)
    p.add_argument("--max-dim", dest="max_dim", type=int)
    p.add_argument("--max-radius", dest="max_radius")
    p.add_argument("--subsample", dest="subsample_opt", type=int)
    p.add_argument("--simplex-cap", dest="simplex_cap", type=int)
    p.add_argument("--policy", help="full | fraction:RHO | absolute:EPS")
    p.add_argument("--kinds", help="comma list: vertex,simplex,length")
    p.add_argument("--significance", type=float)
    p.add_argument("--dim", dest="optimize_dim", type=int)
    p.add_argument("--backend", choices=["builtin", "external"])
    p.add_argument("--round-tol", dest="round_tol", type=float)

    p = subs.add_parser("export", help="flatten outputs to CSV plot tables")
    _add_common(p)
    p.add_argument("--input", help="series CSV for overlays")

    return parser


_COMMANDS = {
    "synth": cmd_synth,
    "embed": cmd_embed,
    "ph": cmd_ph,
    "optimize": cmd_optimize,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        cfg = build_config(args)
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SolverStalled as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
