"""Command-line front end.

Every subcommand writes plot-ready CSV (or JSON with ``--format json``) and a
JSON summary into ``--out``. Failures exit non-zero with a JSON error object
on stderr. Set ``PRIVGP_LOG`` (e.g. ``INFO``) to control logging.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys

import numpy as np

from . import pipeline, privacy, sampling, studies
from .errors import PrivGPError
from .gp import Dataset, GPModel, fit_constant_mean_and_variance, read_csv, write_csv
from .kernels import KernelSpec, as_points
from .privacy import PrivacySpec
from .satellite import OrbitParams, read_segments, write_segments

log = logging.getLogger("privgp")


class Output:
    """Writes tables and summaries into one directory."""

    def __init__(self, out_dir, fmt="csv"):
        self.dir = out_dir
        self.fmt = fmt
        os.makedirs(out_dir, exist_ok=True)
        self.written = []

    def table(self, name, header, rows):
        rows = [list(r) for r in rows]
        if self.fmt == "json":
            path = os.path.join(self.dir, name + ".json")
            with open(path, "w") as fh:
                json.dump({"columns": list(header), "rows": _jsonable(rows)}, fh, indent=1)
        else:
            path = os.path.join(self.dir, name + ".csv")
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(header)
                for r in rows:
                    w.writerow([repr(v) if isinstance(v, float) else v for v in r])
        self.written.append(path)
        return path

    def matrix(self, name, labels, mat):
        header = ["x"] + [f"{v:g}" for v in labels]
        return self.table(name, header, [[float(l)] + [float(v) for v in row]
                                         for l, row in zip(labels, mat)])

    def summary(self, name, data):
        path = os.path.join(self.dir, name + ".json")
        with open(path, "w") as fh:
            json.dump(_jsonable(data), fh, indent=2, sort_keys=True)
        self.written.append(path)
        return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _read_json(text_or_path):
    if os.path.exists(text_or_path):
        with open(text_or_path) as fh:
            return json.load(fh)
    return json.loads(text_or_path)


def _config(args):
    return _read_json(args.config) if getattr(args, "config", None) else {}


# -- generic subcommands -------------------------------------------------------

def cmd_fit(args, out):
    cfg = _config(args)
    data = read_csv(args.data or cfg["dataset"])
    kernel = KernelSpec.from_dict(_read_json(args.kernel) if args.kernel else cfg["kernel"])
    model = fit_constant_mean_and_variance(data.X, data.Y, kernel, args.nugget)
    path = out.summary("model", model.to_dict())
    return {"model": path, "mean": model.mean, "variance": model.kernel.amplitude,
            "degenerate": model.degenerate}


def cmd_solve_noise(args, out):
    cfg = _config(args)
    data = read_csv(args.data or cfg["dataset"])
    model = GPModel.from_dict(_read_json(args.model or cfg["model"]))
    spec = PrivacySpec.from_dict(_read_json(args.privacy) if args.privacy else cfg["privacy"])
    noise = privacy.compute_noise(model, data.X, spec, tol=args.tol)
    out.table("sigma", [f"c{j}" for j in range(noise.sigma.shape[0])], noise.sigma.tolist())
    check = privacy.check_privacy(model, data.X, noise.sigma, spec)
    summary = {**noise.to_dict(), "min_floor_slack": check.min_slack}
    out.summary("noise", summary)
    return summary


def _read_matrix(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return np.array([[float(v) for v in r] for r in rows[1:] if r])


def cmd_obfuscate(args, out):
    cfg = _config(args)
    data = read_csv(args.data or cfg["dataset"])
    sigma = _read_matrix(args.sigma)
    draw = sampling.sample_noise(sigma, args.seed)
    W = sampling.obfuscate(data.Y, draw)
    path = os.path.join(out.dir, "obfuscated.csv")
    write_csv(path, Dataset(data.X, W))
    return {"obfuscated": path, "seed": draw.seed, "sigma_fingerprint": draw.sigma_fingerprint}


def _probe_points(args, d):
    if args.points:
        with open(args.points, newline="") as fh:
            rows = list(csv.reader(fh))
        return as_points([[float(v) for v in r] for r in rows[1:] if r], d)
    lo, hi, n = args.grid
    return as_points(np.linspace(float(lo), float(hi), int(n)), d)


def cmd_predict(args, out):
    rel = pipeline.load(args.released)
    Xs = _probe_points(args, rel.X.shape[1])
    pred = rel.predict(Xs)
    d = Xs.shape[1]
    header = [f"x_{i + 1}" for i in range(d)] + ["mean", "variance", "std"]
    rows = [list(map(float, x)) + [float(m), float(v), float(s)]
            for x, m, v, s in zip(Xs, pred.mean, pred.variance, pred.std)]
    return {"predictions": out.table("predictions", header, rows)}


def cmd_pipeline(args, out):
    if not args.config:
        raise PrivGPError("pipeline needs --config")
    config = pipeline.PipelineConfig.load(args.config)
    if args.seed is not None:
        config.seed = args.seed
    config.output = os.path.join(out.dir, "released.json")
    config.tol = args.tol
    rel = pipeline.run(config)
    check = rel.check()
    return {"released": config.output, "trace": rel.noise.trace,
            "provenance": rel.noise.provenance.value,
            "min_floor_slack": None if check is None else check.min_slack}


# -- studies -------------------------------------------------------------------

def cmd_example1(args, out):
    r = studies.example1(theta=args.theta, s=args.s, xi=args.xi, tol=args.tol)
    X = r["X"][:, 0]
    out.matrix("sigma_opt", X, r["sigma_opt"])
    out.table("noise_variances", ["x", "diagonal", "proposed"],
              zip(X.tolist(), np.diag(r["sigma_diag"]).tolist(), np.diag(r["sigma_opt"]).tolist()))
    c = r["curves"]
    out.table("predictive_variance", ["x", "diagonal", "proposed", "unsecured"],
              zip(r["grid"].tolist(), c["diagonal"].tolist(), c["proposed"].tolist(),
                  c["unsecured"].tolist()))
    out.summary("summary", r["summary"])
    return r["summary"]


def cmd_example2(args, out):
    c_values = args.c if args.c else studies.default_c_grid(args.c_count)
    r = studies.example2(c_values=c_values, c_curve=args.c_curve, tol=args.tol)
    weak = r["summary"]["trace_weak"]
    out.table("traces", ["c", "trace_strong", "trace_weak", "status"],
              [(c, t, weak, st) for c, t, st in r["traces"]])
    cv = r["curves"]
    out.table("predictive_variance", ["x", "weak", "strong"],
              zip(r["grid"].tolist(), cv["weak"].tolist(), cv["strong"].tolist()))
    summary = dict(r["summary"])
    summary["rejected_c"] = [c for c, _, st in r["traces"] if st != "ok"]
    out.summary("summary", summary)
    return summary


def cmd_example3(args, out):
    r = studies.example3(theta0=args.theta0)
    out.table("boundary", ["d", "c", "theta_lower", "theta_upper"], r["boundary"])
    out.table("probes", ["d", "c", "theta", "valid", "closed_form", "numeric_check", "reason"],
              r["probes"])
    agree = sum(p[3] == p[4] for p in r["probes"])
    summary = {"probes": len(r["probes"]), "agree_with_closed_form": agree}
    out.summary("summary", summary)
    return summary


def cmd_satellite(args, out):
    params = read_segments(args.segments) if args.segments else OrbitParams(args.e, args.a)
    r = studies.satellite_study(params, alphas=tuple(args.alphas), n=args.n, seed=args.seed or 0,
                                grid_points=args.grid_points, channel=args.channel)
    write_csv(os.path.join(out.dir, "data.csv"), r["data"])
    write_segments(os.path.join(out.dir, "segments.json"), params)
    t = r["t"]
    unsec = r["unsecured"]
    reports = []
    for alpha, rel in r["releases"].items():
        released = rel["released"]
        pred = rel["prediction"]
        tag = f"{alpha:g}".replace(".", "p")
        out.table(f"obfuscated_H{tag}", ["t", "w"], zip(released.X[:, 0].tolist(), released.W.tolist()))
        out.table(f"band_H{tag}",
                  ["t", "truth", "private", "mean", "lower", "upper",
                   "unsecured_mean", "unsecured_lower", "unsecured_upper"],
                  zip(t.tolist(), r["truth"].tolist(), r["inside"].astype(int).tolist(),
                      pred.mean.tolist(), (pred.mean - 2 * pred.std).tolist(),
                      (pred.mean + 2 * pred.std).tolist(), unsec.mean.tolist(),
                      (unsec.mean - 2 * unsec.std).tolist(), (unsec.mean + 2 * unsec.std).tolist()))
        pipeline.save(released, os.path.join(out.dir, f"released_H{tag}.json"))
        reports.append(rel["report"])
    summary = {**r["summary"], "reports": reports}
    out.summary("report", summary)
    return summary


COMMANDS = {
    "fit": cmd_fit,
    "solve-noise": cmd_solve_noise,
    "obfuscate": cmd_obfuscate,
    "predict": cmd_predict,
    "pipeline": cmd_pipeline,
    "example1": cmd_example1,
    "example2": cmd_example2,
    "example3": cmd_example3,
    "satellite": cmd_satellite,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--tol", type=float, default=1e-7, help="SDP duality-gap tolerance")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="privgp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", parents=[common], help="MLE of constant mean and signal variance")
    p.add_argument("--data")
    p.add_argument("--kernel", help="unit-amplitude correlation kernel (JSON text or file)")
    p.add_argument("--nugget", type=float, default=0.0)

    p = sub.add_parser("solve-noise", parents=[common], help="compute the noise covariance")
    p.add_argument("--data")
    p.add_argument("--model", help="GP model JSON (text or file)")
    p.add_argument("--privacy", help="privacy spec JSON (text or file)")

    p = sub.add_parser("obfuscate", parents=[common], help="sample noise and form W = Y + Z")
    p.add_argument("--data")
    p.add_argument("--sigma", required=True, help="noise covariance CSV")

    p = sub.add_parser("predict", parents=[common], help="predict from a released model")
    p.add_argument("--released", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", help="CSV of probe points with a header row")
    g.add_argument("--grid", nargs=3, metavar=("LO", "HI", "N"))

    sub.add_parser("pipeline", parents=[common], help="train, obfuscate and release")

    p = sub.add_parser("example1", parents=[common], help="one sensitive input")
    p.add_argument("--theta", type=float, default=10.0)
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--xi", type=float, default=0.5)

    p = sub.add_parser("example2", parents=[common], help="weak versus strong floors")
    p.add_argument("--c", type=float, nargs="*", help="explicit c values")
    p.add_argument("--c-count", type=int, default=20)
    p.add_argument("--c-curve", type=float, default=0.45)

    p = sub.add_parser("example3", parents=[common], help="kernel-pair validity region")
    p.add_argument("--theta0", type=float, default=10.0)

    p = sub.add_parser("satellite", parents=[common], help="orbit release study")
    p.add_argument("--e", type=float, default=0.1)
    p.add_argument("--a", type=float, default=1.5)
    p.add_argument("--n", type=int, default=61)
    p.add_argument("--alphas", type=float, nargs="+", default=[0.1, 0.5])
    p.add_argument("--grid-points", type=int, default=21)
    p.add_argument("--channel", default="radius")
    p.add_argument("--segments", help="segments JSON sidecar overriding --e/--a")
    return parser


def main(argv=None):
    logging.basicConfig(level=os.environ.get("PRIVGP_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.seed is None and args.command == "obfuscate":
        args.seed = 0
    try:
        out = Output(args.out, args.format)
        result = COMMANDS[args.command](args, out)
    except (PrivGPError, OSError, KeyError, ValueError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        print(json.dumps({"error": code, "message": str(exc)}), file=sys.stderr)
        return 1
    print(json.dumps(_jsonable(result), indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
