"""Command-line front end.

Every numeric experiment is described by a flat `key = value` config
(file via --config, flags override file) and emits CSV or JSON artifacts
plus a short human summary. Exit codes: 0 success, 2 validation failure,
3 numerical refusal (under-resolution, non-integrable weight, ...); the
suite command exits 1 when a criterion fails.
"""

import argparse
import sys

import numpy as np

from . import (
    admissibility,
    asymptotics,
    levelset,
    oscillatory,
    spectra,
    suite as suite_mod,
)
from .errors import NumericalError, ValidationError, WeyllabError
from .parallel import thread_count
from .reportio import csv_text, fmt_human, json_text
from .symbols import parse_symbol

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class ExperimentConfig:
    """Ordered `key = value` record of one experiment; round-trips bytewise."""

    def __init__(self, pairs):
        self.pairs = list(pairs)

    @classmethod
    def parse(cls, text):
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValidationError(f"config: line {lineno} is not 'key = value'")
            key, value = line.split("=", 1)
            pairs.append((key.strip(), value.strip()))
        return cls(pairs)

    def serialize(self):
        return "".join(f"{k} = {v}\n" for k, v in self.pairs)

    def get(self, key, default=None):
        for k, v in self.pairs:
            if k == key:
                return v
        return default

    def set(self, key, value):
        for i, (k, _) in enumerate(self.pairs):
            if k == key:
                self.pairs[i] = (key, value)
                return
        self.pairs.append((key, value))

    def __eq__(self, other):
        return isinstance(other, ExperimentConfig) and self.pairs == other.pairs


# ---------------------------------------------------------------------------
# value parsing

def _vec(text):
    try:
        return np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError:
        raise ValidationError(f"vector: cannot parse {text!r}")


def _multi(text, dim):
    if text is None:
        return (0,) * dim
    try:
        idx = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(f"multi-index: cannot parse {text!r}")
    if len(idx) != dim:
        raise ValidationError(f"multi-index: expected {dim} entries, got {len(idx)}")
    return idx


def _l_list(text):
    """Either 'a:b:count' (geometric) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError("L-list: geometric form is min:max:count")
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        return list(np.geomspace(lo, hi, count))
    return [float(v) for v in text.split(",") if v.strip()]


def _need(cfg, key):
    v = cfg.get(key)
    if v is None:
        raise ValidationError(f"{key}: required parameter missing")
    return v


def _symbol(cfg):
    return parse_symbol(_need(cfg, "symbol"))


# ---------------------------------------------------------------------------
# command handlers: config -> (machine_text, human_lines)

def _run_weyl(cfg, fmt):
    sym = _symbol(cfg)
    L = float(_need(cfg, "L"))
    res = cfg.get("resolution")
    count, pred = spectra.weyl_count(sym, L, int(res) if res else None)
    rel = abs(count - pred) / pred
    human = [f"count={count} prediction={fmt_human(pred)} rel_err={fmt_human(rel)}"]
    if fmt == "csv":
        return csv_text(["count", "prediction", "rel_err"], [[count, pred, rel]]), human
    payload = {"command": "weyl", "L": L, "count": count, "prediction": pred, "rel_err": rel}
    return json_text(payload) + "\n", human


def _kernel_rows(cfg):
    L = float(_need(cfg, "L"))
    model = cfg.get("model", "torus")
    grid = int(cfg.get("grid", "1"))
    if model == "dirichlet":
        s = float(_need(cfg, "s"))
        x = float(_need(cfg, "x"))
        y = float(cfg.get("y", _need(cfg, "x")))
        allow = cfg.get("allow-boundary", "false") == "true"
        ys = np.linspace(x, y, grid) if grid > 1 else [y]
        rows = []
        for yv in ys:
            val = spectra.dirichlet_kernel(s, L, x, yv, allow_boundary=allow)
            rows.append([x, float(yv), val, 0.0])
        return ["x", "y", "re", "im"], rows
    sym = _symbol(cfg)
    n = sym.dim
    if cfg.get("s") is not None:
        z = complex(-float(cfg.get("s")), 0.0)
    else:
        z = complex(float(cfg.get("z-re", "0")), float(cfg.get("z-im", "0")))
    alpha = _multi(cfg.get("alpha"), n)
    beta = _multi(cfg.get("beta"), n)
    x = _vec(_need(cfg, "x"))
    y = _vec(_need(cfg, "y"))
    if x.size != n or y.size != n:
        raise ValidationError(f"x/y: expected {n}-vectors")
    band = spectra.enumerate_band(sym, L)
    header = [f"x_{j + 1}" for j in range(n)] + [f"y_{j + 1}" for j in range(n)] + ["re", "im"]
    rows = []
    targets = [x + t * (y - x) for t in np.linspace(0.0, 1.0, grid)] if grid > 1 else [y]
    for yv in targets:
        req = spectra.KernelRequest(z=z, alpha=alpha, beta=beta, x=tuple(x), y=tuple(yv), L=L)
        val = spectra.torus_kernel(req, band)
        rows.append(list(x) + [float(v) for v in yv] + [val.real, val.imag])
    return header, rows


def _run_kernel(cfg, fmt):
    header, rows = _kernel_rows(cfg)
    human = [f"{len(rows)} kernel value(s); last re={fmt_human(rows[-1][-2])} im={fmt_human(rows[-1][-1])}"]
    if fmt == "json":
        payload = {"command": "kernel", "samples": [dict(zip(header, r)) for r in rows]}
        return json_text(payload) + "\n", human
    return csv_text(header, rows), human


def _run_rescale_scan(cfg, fmt, threads):
    sym = _symbol(cfg)
    n = sym.dim
    s = float(_need(cfg, "s"))
    alpha = _multi(cfg.get("alpha"), n)
    beta = _multi(cfg.get("beta"), n)
    w = _vec(cfg.get("w", ",".join(["0.4"] * n)))
    h_max = float(cfg.get("h-max", "2"))
    L_list = _l_list(_need(cfg, "L-list"))
    resolution = int(cfg.get("resolution", "4096"))
    if n == 2:
        hs = [np.zeros(2)] + [
            r * np.array([np.cos(phi), np.sin(phi)])
            for r in np.linspace(h_max / 4.0, h_max, 4)
            for phi in (0.0, np.pi / 4.0, np.pi / 2.0)
        ]
    else:
        hs = [np.full(n, v) for v in np.linspace(0.0, h_max, 9)]
    rows = asymptotics.rescaled_error_scan(
        sym, s, alpha, beta, w, hs, L_list, resolution, threads
    )
    human = [f"L={r.L:g} sup_err={fmt_human(r.sup_err)}" for r in rows]
    if fmt == "json":
        payload = {
            "command": "rescale-scan",
            "s": s,
            "rows": [{"L": r.L, "sup_err": r.sup_err} for r in rows],
        }
        return json_text(payload) + "\n", human
    return csv_text(["L", "sup_err"], [[r.L, r.sup_err] for r in rows]), human


def _fit_payload(command, fit, target, extra=None, samples=None):
    payload = {
        "command": command,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "target": target,
        "rel_err": abs(fit.slope / target - 1.0) if target else float("nan"),
        "max_abs_residual": fit.max_abs_residual,
        "sample_count": fit.sample_count,
        "design": fit.design,
    }
    if extra:
        payload.update(extra)
    if samples is not None:
        payload["samples"] = samples
    return payload


def _run_log_fit(cfg, fmt):
    model_name = cfg.get("model", "torus")
    s = float(_need(cfg, "s"))
    L_list = _l_list(_need(cfg, "L-list"))
    if model_name == "dirichlet":
        model = spectra.Dirichlet1D()
        x = float(_need(cfg, "x"))
    elif model_name == "torus":
        sym = _symbol(cfg)
        model = spectra.TorusModel(sym)
        x = _vec(_need(cfg, "x"))
        if x.size != sym.dim:
            raise ValidationError(f"x: expected a {sym.dim}-vector")
    else:
        raise ValidationError(f"model: unknown model {model_name!r}")
    res = asymptotics.log_fit_diagonal(model, s, x, L_list)
    samples = [{"L": L, "value": v} for L, v in res.samples]
    payload = _fit_payload(
        "log-fit",
        res.fit,
        res.slope_target,
        {"g_hat": res.g_hat, "g_target": res.g_target},
        samples,
    )
    human = [
        f"slope={fmt_human(res.fit.slope)} target={fmt_human(res.slope_target)} "
        f"rel_err={fmt_human(abs(res.fit.slope / res.slope_target - 1.0))}"
    ]
    if fmt == "csv":
        return csv_text(["L", "value"], [[L, v] for L, v in res.samples]), human
    return json_text(payload) + "\n", human


def _run_green_fit(cfg, fmt, threads):
    sym = _symbol(cfg)
    s = float(_need(cfg, "s"))
    L_list = _l_list(_need(cfg, "L-list"))
    kappa_min = float(cfg.get("kappa-min", "1"))
    d_min = float(cfg.get("d-min", "0.02"))
    d_max = float(cfg.get("d-max", "0.5"))
    count = int(cfg.get("pairs", "12"))
    base = _vec(cfg.get("base", ",".join(["0.9"] * sym.dim)))
    angle = float(cfg.get("angle", "0.3"))
    if sym.dim == 2:
        direction = np.array([np.cos(angle), np.sin(angle)])
    else:
        direction = np.zeros(sym.dim)
        direction[0] = 1.0
    pairs = [(base, base + d * direction) for d in np.geomspace(d_min, d_max, count)]
    res = asymptotics.offdiag_green_fit(
        sym, s, pairs, L_list, kappa_min, int(cfg.get("resolution", "4096")), threads
    )
    L_top = max(res.q_hat)
    samples = [
        {"separation": sep, "K": q - res.g_target * np.log(sep), "q_hat": q}
        for (_, sep), q in zip(res.pairs, res.q_hat[L_top])
    ]
    payload = _fit_payload(
        "green-fit",
        res.fit,
        res.g_target,
        {"g_hat": res.g_hat, "g_target": res.g_target, "q_spread": res.q_spread},
        samples,
    )
    human = [
        f"slope={fmt_human(res.fit.slope)} target={fmt_human(res.g_target)} "
        f"q_spread={fmt_human(res.q_spread)}"
    ]
    if fmt == "csv":
        rows = [[s_["separation"], s_["K"], s_["q_hat"]] for s_ in samples]
        return csv_text(["separation", "K", "q_hat"], rows), human
    return json_text(payload) + "\n", human


def _run_limit_kernel(cfg, fmt):
    sym = _symbol(cfg)
    n = sym.dim
    s = float(_need(cfg, "s"))
    alpha = _multi(cfg.get("alpha"), n)
    beta = _multi(cfg.get("beta"), n)
    h = _vec(cfg.get("h", ",".join(["0"] * n)))
    quad = levelset.build_quadrature(sym, int(cfg.get("resolution", "4096")))
    val = asymptotics.limit_kernel(sym, s, alpha, beta, h, quad)
    human = [f"value re={fmt_human(val.real)} im={fmt_human(val.imag)}"]
    if fmt == "csv":
        return csv_text(["re", "im"], [[val.real, val.imag]]), human
    payload = {"command": "limit-kernel", "s": s, "re": val.real, "im": val.imag}
    return json_text(payload) + "\n", human


def _run_osc_decay(cfg, fmt, threads):
    sym = _symbol(cfg)
    h = _vec(_need(cfg, "h"))
    t_min = float(cfg.get("t-min", "10"))
    t_max = float(cfg.get("t-max", "1000"))
    per_decade = int(cfg.get("per-decade", "40"))
    res = cfg.get("resolution")
    probe = oscillatory.probe_decay(
        sym, h, t_min, t_max, per_decade, int(res) if res else None, threads
    )
    fit = oscillatory.decay_slope(probe, int(cfg.get("block", "10")))
    human = [f"envelope slope={fmt_human(fit.slope)} resolution={probe.resolution}"]
    if fmt == "json":
        payload = _fit_payload(
            "osc-decay",
            fit,
            0.0,
            {"resolution": probe.resolution},
            [
                {"t": t, "abs_J": abs(v), "re_J": v.real, "im_J": v.imag}
                for t, v in zip(probe.t_grid, probe.values)
            ],
        )
        payload["rel_err"] = float("nan")
        return json_text(payload) + "\n", human
    rows = [[t, abs(v), v.real, v.imag] for t, v in zip(probe.t_grid, probe.values)]
    return csv_text(["t", "abs_J", "re_J", "im_J"], rows), human


def _run_admissible(cfg, fmt):
    sym = _symbol(cfg)
    k0 = int(_need(cfg, "k0"))
    resolution = int(cfg.get("resolution", "256"))
    threshold = float(cfg.get("threshold", "1e-8"))
    report = admissibility.check_admissible(sym, k0, resolution, threshold)
    human = [
        f"admissible-on-grid={report.admissible_on_grid} at resolution {resolution} "
        f"min_max_residual={fmt_human(report.min_max_residual)}"
    ]
    directions = [
        {
            "omega": list(d.omega),
            "residuals": {str(k): v for k, v in d.residuals.items()},
            "witness": d.witness,
        }
        for d in report.per_direction
    ]
    payload = {
        "command": "admissible",
        "k0": report.k0,
        "resolution": report.grid_resolution,
        "threshold": report.threshold,
        "admissible_on_grid": report.admissible_on_grid,
        "min_max_residual": report.min_max_residual,
        "directions": directions,
    }
    if fmt == "csv":
        rows = [
            list(d.omega) + [d.residuals.get(k, float("nan")) for k in range(2, k0 + 1)]
            + [d.witness if d.witness is not None else -1]
            for d in report.per_direction
        ]
        header = (
            [f"omega_{j + 1}" for j in range(sym.dim)]
            + [f"residual_k{k}" for k in range(2, k0 + 1)]
            + ["witness"]
        )
        return csv_text(header, rows), human
    return json_text(payload) + "\n", human


def _run_disintegration(cfg, fmt):
    sym = _symbol(cfg)
    resolution = int(cfg.get("resolution", "4096"))
    test = cfg.get("test", "gaussian")
    quad = levelset.build_quadrature(sym, resolution)
    err = levelset.verify_disintegration(sym, quad, test)
    total = quad.total
    human = [f"nu_total={fmt_human(total)} {test}_rel_err={fmt_human(err)}"]
    if fmt == "csv":
        return csv_text(["nu_total", "test", "rel_err"], [[total, test, err]]), human
    payload = {
        "command": "disintegration",
        "resolution": resolution,
        "nu_total": total,
        "test": test,
        "rel_err": err,
    }
    return json_text(payload) + "\n", human


def _run_link_check(cfg, fmt):
    sym = _symbol(cfg)
    L = float(_need(cfg, "L"))
    x = _vec(_need(cfg, "x"))
    y = _vec(_need(cfg, "y"))
    names = cfg.get("weight", "step,inv,invsqrt").split(",")
    band = spectra.enumerate_band(sym, L)
    rows = []
    for name in names:
        if name not in spectra.BUILTIN_WEIGHTS:
            raise ValidationError(f"weight: unknown weight {name!r}")
        d, i = spectra.kernel_weighted(spectra.BUILTIN_WEIGHTS[name], L, x, y, band)
        rows.append([name, d.real, d.imag, i.real, i.imag, abs(d - i) / abs(d)])
    human = [f"{r[0]}: rel_gap={fmt_human(r[5])}" for r in rows]
    if fmt == "json":
        payload = {
            "command": "link-check",
            "weights": [
                {
                    "weight": r[0],
                    "direct_re": r[1],
                    "direct_im": r[2],
                    "identity_re": r[3],
                    "identity_im": r[4],
                    "rel_gap": r[5],
                }
                for r in rows
            ],
        }
        return json_text(payload) + "\n", human
    return csv_text(
        ["weight", "direct_re", "direct_im", "identity_re", "identity_im", "rel_gap"], rows
    ), human


def _run_suite(cfg, fmt):
    tier = cfg.get("tier") or "quick"
    if tier not in ("quick", "full"):
        raise ValidationError(f"tier: must be quick or full, got {tier!r}")
    results, ok = suite_mod.run_suite(tier)
    human = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        human.append(f"{status} {r.name} [{r.tier}] ({r.seconds:.2f}s)")
        for c in r.checks:
            mark = "ok " if c.ok else "BAD"
            human.append(
                f"  {mark} {c.label}: measured={fmt_human(c.measured)} "
                f"target={fmt_human(c.target)} tol={c.tol}"
            )
    human.append(("ALL PASS" if ok else "FAILURES PRESENT") + f" [{tier}]")
    if fmt == "json":
        payload = [
            {
                "criterion": f"{r.name}/{c.label}",
                "measured": c.measured,
                "target": c.target,
                "tol": c.tol,
                "pass": c.ok,
            }
            for r in results
            for c in r.checks
        ]
        return json_text(payload) + "\n", human, 0 if ok else 1
    rows = [
        [r.name, c.label, c.measured, c.target, c.tol, c.ok]
        for r in results
        for c in r.checks
    ]
    text = csv_text(["criterion", "check", "measured", "target", "tol", "pass"], rows)
    return text, human, 0 if ok else 1


_HANDLERS = {
    "weyl": lambda cfg, fmt, threads: _run_weyl(cfg, fmt),
    "kernel": lambda cfg, fmt, threads: _run_kernel(cfg, fmt),
    "rescale-scan": _run_rescale_scan,
    "log-fit": lambda cfg, fmt, threads: _run_log_fit(cfg, fmt),
    "green-fit": _run_green_fit,
    "limit-kernel": lambda cfg, fmt, threads: _run_limit_kernel(cfg, fmt),
    "osc-decay": _run_osc_decay,
    "admissible": lambda cfg, fmt, threads: _run_admissible(cfg, fmt),
    "disintegration": lambda cfg, fmt, threads: _run_disintegration(cfg, fmt),
    "link-check": lambda cfg, fmt, threads: _run_link_check(cfg, fmt),
    "suite": lambda cfg, fmt, threads: _run_suite(cfg, fmt),
}

_COMMON_OPTS = ("config", "output", "format", "threads", "save-config")

_COMMAND_OPTS = {
    "weyl": ("symbol", "L", "resolution"),
    "kernel": (
        "symbol", "model", "L", "s", "z-re", "z-im", "alpha", "beta", "x", "y",
        "grid", "allow-boundary",
    ),
    "rescale-scan": ("symbol", "s", "alpha", "beta", "w", "h-max", "L-list", "resolution"),
    "log-fit": ("model", "symbol", "s", "x", "L-list"),
    "green-fit": (
        "symbol", "s", "L-list", "kappa-min", "d-min", "d-max", "pairs", "base",
        "angle", "resolution",
    ),
    "limit-kernel": ("symbol", "s", "alpha", "beta", "h", "resolution"),
    "osc-decay": ("symbol", "h", "t-min", "t-max", "per-decade", "resolution", "block"),
    "admissible": ("symbol", "k0", "resolution", "threshold"),
    "disintegration": ("symbol", "resolution", "test"),
    "link-check": ("symbol", "L", "x", "y", "weight"),
    "suite": ("tier",),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weyllab",
        description="numerical laboratory for weighted spectral kernels on exact-spectrum models",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, opts in _COMMAND_OPTS.items():
        p = sub.add_parser(command)
        if command == "suite":
            p.add_argument("tier", nargs="?", default=None, choices=("quick", "full"))
        for opt in opts:
            if command == "suite" and opt == "tier":
                continue
            p.add_argument(f"--{opt}", default=None)
        for opt in _COMMON_OPTS:
            p.add_argument(f"--{opt}", default=None)
    return parser


def resolve_config(args):
    """File config (if any) with explicit flags layered on top."""
    cfg = ExperimentConfig([])
    raw = vars(args)
    if raw.get("config"):
        with open(raw["config"], "r", encoding="utf-8") as fh:
            cfg = ExperimentConfig.parse(fh.read())
    file_cmd = cfg.get("command")
    if file_cmd and file_cmd != args.command:
        raise ValidationError(
            f"command: config file says {file_cmd!r}, CLI says {args.command!r}"
        )
    cfg.set("command", args.command)
    for key in _COMMAND_OPTS[args.command] + ("tier",):
        val = raw.get(key.replace("-", "_"))
        if val is not None:
            cfg.set(key, str(val))
    for key in ("format", "threads"):
        val = raw.get(key)
        if val is not None:
            cfg.set(key, str(val))
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        command = cfg.get("command")
        fmt_explicit = cfg.get("format") is not None
        fmt = cfg.get("format") or ("text" if command == "suite" else "csv")
        if command != "suite" and fmt not in ("csv", "json"):
            raise ValidationError(f"format: must be csv or json, got {fmt!r}")
        threads = thread_count(int(cfg.get("threads")) if cfg.get("threads") else None)
        result = _HANDLERS[command](cfg, fmt, threads)
        machine, human = result[0], result[1]
        status = result[2] if len(result) > 2 else 0
        if args.save_config:
            with open(args.save_config, "w", encoding="utf-8") as fh:
                fh.write(cfg.serialize())
        if args.output:
            # machine artifact to the file, human summary to stdout
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(machine)
            for line in human:
                print(line)
        elif command == "suite" and fmt == "text":
            for line in human:
                print(line)
        elif fmt_explicit:
            # machine format on stdout for pipelines, summary on stderr
            sys.stdout.write(machine)
            if machine and not machine.endswith("\n"):
                print()
            for line in human:
                print(line, file=sys.stderr)
        else:
            for line in human:
                print(line)
        return status
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except WeyllabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
