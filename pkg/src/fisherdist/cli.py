"""Command-line interface.

Subcommands::

    fisherdist distances   # one row per (offset, measure)
    fisherdist coeffs      # one row per measure: fitted vs. predicted constant
    fisherdist cramer-rao  # Monte-Carlo estimator report
    fisherdist entropy     # differential entropy of the family density

Options may also come from ``--config FILE``, a ``key = value`` text file whose
keys are the long option names (``sigma``, ``delta-max``, ``weights``, ...).
Flags given on the command line win over the file, which wins over defaults.

Exit status: 0 on success, 2 on usage errors, 3 on numerical or domain errors.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from .cramer_rao import EstimationConfig, biased_estimator_comparison, simulate_estimation
from .divergences import WeightPair, shannon_entropy
from .exceptions import FisherDistError
from .expansion import LadderSpec, coefficient_report, sweep_distances
from .families import FamilySpec, evaluate_density
from .grid import Grid

logger = logging.getLogger("fisherdist")

COMMANDS = ("distances", "coeffs", "cramer-rao", "entropy")
EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3

DISTANCE_HEADER = ("measure", "delta_alpha", "value", "weights_pi1", "weights_pi2")
COEFF_HEADER = ("measure", "c_hat", "predicted_c", "convergence_order", "residual")
CRAMER_RAO_HEADER = (
    "estimator",
    "mean_estimate",
    "mean_square_error",
    "fisher_per_sample",
    "cramer_rao_bound",
    "efficiency",
)
ENTROPY_HEADER = ("family", "alpha", "entropy")


class UsageError(Exception):
    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


def _parse_bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_weights(text):
    parts = [p for p in str(text).replace("/", ",").split(",") if p.strip()]
    if len(parts) == 1:
        pi1 = float(parts[0])
        return (pi1, 1.0 - pi1)
    if len(parts) != 2:
        raise ValueError(f"expected two weights like 0.3,0.7, got {text!r}")
    return (float(parts[0]), float(parts[1]))


def _parse_offsets(text):
    return [float(p) for p in str(text).split(",") if p.strip()]


def _parse_family(text):
    return str(text).strip().replace("_", "-")


# option name -> (converter, default); defaults of None are resolved per command
OPTIONS = {
    "family": (_parse_family, "gaussian-location"),
    "sigma": (float, 1.0),
    "mu": (float, 0.0),
    "separation": (float, 1.0),
    "mix_weight": (float, 0.3),
    "alpha": (float, None),
    "delta_max": (float, 1e-1),
    "delta_min": (float, 1e-3),
    "ratio": (float, 10.0**0.25),
    "include_negatives": (_parse_bool, False),
    "delta_alpha": (_parse_offsets, None),
    "weights": (_parse_weights, (0.5, 0.5)),
    "x_min": (float, -12.0),
    "x_max": (float, 12.0),
    "n_points": (int, 4801),
    "samples": (int, 1000),
    "trials": (int, 10_000),
    "seed": (int, 0),
    "shrink": (float, None),
    "output": (str, "-"),
    "format": (str, None),
}


@dataclass
class RunConfig:
    command: str
    family: FamilySpec
    alpha: float
    ladder: LadderSpec
    weights: WeightPair
    grid: Grid
    output: str = "-"
    format: str = "csv"
    delta_alpha: Optional[list] = None
    samples: int = 1000
    trials: int = 10_000
    seed: int = 0
    shrink: Optional[float] = None
    options: dict = field(default_factory=dict, repr=False)

    def estimation(self):
        return EstimationConfig(self.family, self.alpha, self.samples, self.trials, self.seed)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fisherdist",
        description="Distances between neighbouring parameterized states vs. Fisher information.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key = value file of option defaults")
    g = common.add_argument_group("family")
    g.add_argument("--family", choices=("gaussian-location", "gaussian-scale", "two-gaussian-mixture"),
                   type=_parse_family)
    g.add_argument("--sigma", type=float, help="width (location and mixture families)")
    g.add_argument("--mu", type=float, help="centre of the gaussian-scale family")
    g.add_argument("--separation", type=float, help="distance between mixture components")
    g.add_argument("--mix-weight", type=float, help="weight of the left mixture component")
    g.add_argument("--alpha", type=float, help="reference parameter (default 1 for gaussian-scale, else 0)")
    g = common.add_argument_group("ladder")
    g.add_argument("--delta-max", type=float)
    g.add_argument("--delta-min", type=float)
    g.add_argument("--ratio", type=float, help="geometric step between ladder offsets")
    g.add_argument("--include-negatives", action="store_const", const=True)
    g.add_argument("--delta-alpha", type=_parse_offsets, metavar="D[,D...]",
                   help="explicit offsets for `distances`, replacing the ladder")
    g.add_argument("--weights", type=_parse_weights, metavar="PI1,PI2",
                   help="weights of the weighted Jensen-Shannon divergence")
    g = common.add_argument_group("grid")
    g.add_argument("--x-min", type=float)
    g.add_argument("--x-max", type=float)
    g.add_argument("--n-points", type=int, help="odd number of grid points")
    g = common.add_argument_group("cramer-rao")
    g.add_argument("--samples", type=int, help="samples per trial N")
    g.add_argument("--trials", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--shrink", type=float, help="also report the shrunken estimator shrink * mean")
    g = common.add_argument_group("output")
    g.add_argument("--output", "-o", metavar="PATH", help="output file; '-' for stdout")
    g.add_argument("--format", choices=("csv", "json"))

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    helps = {
        "distances": "all seven distances along the offset ladder",
        "coeffs": "fitted proportionality constants per measure",
        "cramer-rao": "Monte-Carlo check of the Cramer-Rao bound",
        "entropy": "differential Shannon entropy of the family density",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _read_config_file(path):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError("config", f"cannot read {path}: {exc.strerror}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("config", f"{path}:{lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in OPTIONS:
            raise UsageError(key, f"unknown option in {path}:{lineno}")
        converter = OPTIONS[key][0]
        try:
            values[key] = converter(raw)
        except ValueError as exc:
            raise UsageError(key, f"bad value {raw!r}: {exc}") from exc
    return values


def _checked(field_name, build):
    try:
        return build()
    except (FisherDistError, ValueError, TypeError) as exc:
        raise UsageError(field_name, str(exc)) from exc


def parse_config(argv=None):
    """Parse ``argv`` (and any ``--config`` file) into a validated :class:`RunConfig`.

    Raises :class:`UsageError` naming the offending option; argparse itself
    exits with status 2 on malformed command lines.
    """
    ns = _build_parser().parse_args(argv)
    from_file = _read_config_file(ns.config) if ns.config else {}
    opts = {}
    for key, (_, default) in OPTIONS.items():
        given = getattr(ns, key, None)
        opts[key] = given if given is not None else from_file.get(key, default)

    kind = opts["family"].replace("-", "_")
    if kind not in ("gaussian_location", "gaussian_scale", "two_gaussian_mixture"):
        raise UsageError("family", f"unknown family {opts['family']!r}")
    if opts["alpha"] is None:
        opts["alpha"] = 1.0 if kind == "gaussian_scale" else 0.0
    if opts["format"] is None:
        opts["format"] = "json" if ns.command in ("cramer-rao", "entropy") else "csv"
    if opts["format"] not in ("csv", "json"):
        raise UsageError("format", f"expected csv or json, got {opts['format']!r}")

    for name in ("sigma", "separation"):
        if not opts[name] > 0:
            raise UsageError(name, f"must be positive, got {opts[name]}")
    if not 0 < opts["mix_weight"] < 1:
        raise UsageError("mix_weight", f"must lie strictly inside (0, 1), got {opts['mix_weight']}")
    family = _checked("family", lambda: FamilySpec(
        kind, sigma=opts["sigma"], mu=opts["mu"], separation=opts["separation"], weight=opts["mix_weight"],
    ))
    if not math.isfinite(opts["alpha"]):
        raise UsageError("alpha", "must be finite")
    if kind == "gaussian_scale" and opts["alpha"] <= 0:
        raise UsageError("alpha", f"gaussian-scale needs alpha > 0, got {opts['alpha']}")
    ladder = _checked("ladder", lambda: LadderSpec(
        opts["delta_max"], opts["delta_min"], opts["ratio"], opts["include_negatives"]
    ))
    weights = _checked("weights", lambda: WeightPair(*opts["weights"]))
    grid = _checked("grid", lambda: Grid(opts["x_min"], opts["x_max"], opts["n_points"]))

    config = RunConfig(
        command=ns.command,
        family=family,
        alpha=opts["alpha"],
        ladder=ladder,
        weights=weights,
        grid=grid,
        output=opts["output"],
        format=opts["format"],
        delta_alpha=opts["delta_alpha"],
        samples=opts["samples"],
        trials=opts["trials"],
        seed=opts["seed"],
        shrink=opts["shrink"],
        options=opts,
    )
    if ns.command == "cramer-rao":
        _checked("cramer-rao", config.estimation)
        if config.shrink is not None and not 0 < config.shrink <= 1:
            raise UsageError("shrink", f"must lie in (0, 1], got {config.shrink}")
    return config


def resolved_options(config):
    """Flat, JSON-friendly view of the fully resolved configuration."""
    out = {"command": config.command, "family": config.family.kind}
    out.update(config.family.params())
    out["alpha"] = config.alpha
    if config.command in ("distances", "coeffs"):
        if config.command == "distances" and config.delta_alpha is not None:
            out["delta_alpha"] = list(config.delta_alpha)
        else:
            out.update(
                delta_max=config.ladder.delta_max,
                delta_min=config.ladder.delta_min,
                ratio=config.ladder.ratio,
                include_negatives=config.ladder.include_negatives,
            )
        out["weights"] = [config.weights.pi1, config.weights.pi2]
    if config.command != "cramer-rao":
        out.update(x_min=config.grid.x_min, x_max=config.grid.x_max, n_points=config.grid.n_points)
    else:
        out.update(samples=config.samples, trials=config.trials, seed=config.seed, shrink=config.shrink)
    out["format"] = config.format
    return out


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _render(header, rows, meta, fmt):
    if fmt == "json":
        payload = {"config": meta, "rows": [dict(zip(header, row)) for row in rows]}
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={_fmt(value) if not isinstance(value, list) else json.dumps(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _compute(config):
    if config.command == "distances":
        ladder = config.delta_alpha if config.delta_alpha is not None else config.ladder
        records = sweep_distances(config.family, config.alpha, ladder, config.weights, config.grid)
        rows = [
            (
                r.measure,
                r.delta_alpha,
                r.value,
                r.weights.pi1 if r.weights else None,
                r.weights.pi2 if r.weights else None,
            )
            for r in records
        ]
        return DISTANCE_HEADER, rows
    if config.command == "coeffs":
        fits = coefficient_report(config.family, config.alpha, config.ladder, config.weights, config.grid)
        return COEFF_HEADER, [
            (f.measure, f.c_hat, f.predicted_c, f.convergence_order, f.residual) for f in fits
        ]
    if config.command == "cramer-rao":
        est = config.estimation()
        if config.shrink is None:
            reports = [("sample_mean", simulate_estimation(est))]
        else:
            unbiased, shrunk = biased_estimator_comparison(est, config.shrink)
            reports = [("sample_mean", unbiased), ("shrunk_mean", shrunk)]
        rows = [(name,) + tuple(r.to_dict().values()) for name, r in reports]
        return CRAMER_RAO_HEADER, rows
    density = evaluate_density(config.family, config.alpha, config.grid)
    return ENTROPY_HEADER, [(config.family.kind, config.alpha, shannon_entropy(density))]


def run(config):
    """Execute ``config`` and write its output; returns the exit status."""
    meta = resolved_options(config)
    logger.info("resolved configuration: %s", meta)
    try:
        header, rows = _compute(config)
    except FisherDistError as exc:
        print(f"fisherdist: error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = _render(header, rows, meta, config.format)
    if config.output == "-":
        sys.stdout.write(text)
    else:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"fisherdist: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
