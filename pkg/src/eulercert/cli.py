"""Command-line entry point.

One invocation carries one workspace configuration (norm, tolerance,
equality mode, sample density), given by --config and overridden by flags.
Outputs are deterministic: identical invocations print identical bytes.
Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import jsonio
from .certify import MetricKind, concentrate_to_point, link, probe_metric, verify
from .constructible import euler_integral, oracle_integral, pushforward
from .distance import sum_bound
from .flags import build_flag, graded_sheaf
from .geometry import Norm, TOL_DIST, decimal_up
from .jsonio import SchemaError
from .sheafsum import local_euler


@dataclass(frozen=True)
class WorkspaceConfig:
    dimension: Optional[int] = None
    norm: Norm = Norm.L2
    tol_dist: Fraction = TOL_DIST
    equality_mode: str = "exact"
    sample_density: int = 64

    def __post_init__(self):
        if self.dimension is not None and self.dimension not in (1, 2, 3):
            raise SchemaError(f"unsupported dimension: {self.dimension}")
        if self.tol_dist <= 0:
            raise SchemaError("tol_dist must be positive")
        if self.equality_mode not in ("exact", "sampled"):
            raise SchemaError(f"unknown equality mode: {self.equality_mode}")
        if self.equality_mode == "exact" and self.dimension == 3:
            raise SchemaError("exact equality mode requires dimension <= 2")
        if self.sample_density < 1:
            raise SchemaError("sample_density must be positive")


def _load_config(args: argparse.Namespace) -> WorkspaceConfig:
    fields: dict = {}
    if args.config:
        raw = _read_json(args.config)
        if not isinstance(raw, dict):
            raise SchemaError(f"{args.config}: config must be a JSON object")
        for key in ("dimension", "norm", "tol_dist", "equality_mode", "sample_density"):
            if key in raw:
                fields[key] = raw[key]
    if args.norm:
        fields["norm"] = args.norm
    if args.tol_dist:
        fields["tol_dist"] = args.tol_dist
    if args.equality_mode:
        fields["equality_mode"] = args.equality_mode
    if args.sample_density:
        fields["sample_density"] = args.sample_density
    if args.dimension:
        fields["dimension"] = args.dimension
    if "norm" in fields:
        try:
            fields["norm"] = Norm(str(fields["norm"]).lower())
        except ValueError:
            raise SchemaError(f"unknown norm: {fields['norm']!r}") from None
    if "tol_dist" in fields:
        fields["tol_dist"] = jsonio.parse_rational(fields["tol_dist"])
    if "sample_density" in fields:
        fields["sample_density"] = int(fields["sample_density"])
    if "dimension" in fields:
        fields["dimension"] = int(fields["dimension"])
    return WorkspaceConfig(**fields)


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _load_cf(path: str, cfg: WorkspaceConfig):
    try:
        f = jsonio.cf_from_json(_read_json(path))
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if cfg.dimension is not None and f.dimension != cfg.dimension:
        raise SchemaError(f"{path}: dimension {f.dimension} != configured {cfg.dimension}")
    return f


def _load_sheaf(path: str):
    try:
        return jsonio.sheaf_from_json(_read_json(path))
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def _parse_point(text: str):
    return tuple(jsonio.parse_rational(part) for part in text.split(","))


def _emit(obj: dict, out: Optional[str]) -> None:
    text = json.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eulercert", description=__doc__)
    ap.add_argument("--config", help="JSON workspace config file")
    ap.add_argument("--dimension", type=int, help="expected ambient dimension (validation)")
    ap.add_argument("--norm", choices=[n.value for n in Norm], help="workspace norm")
    ap.add_argument("--tol-dist", dest="tol_dist", help="comparison tolerance for bounds")
    ap.add_argument("--equality-mode", dest="equality_mode", choices=["exact", "sampled"])
    ap.add_argument("--sample-density", dest="sample_density", type=int)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="Euler integral of a constructible function")
    p.add_argument("cf")
    p = sub.add_parser("oracle-integrate", help="independent cell-complex Euler integral")
    p.add_argument("cf")
    p = sub.add_parser("pushforward", help="direct image along an affine map")
    p.add_argument("cf")
    p.add_argument("--map", required=True)
    p = sub.add_parser("chi", help="local Euler characteristic of a sheaf sum")
    p.add_argument("sheaf")
    p = sub.add_parser("flag", help="graded sheaf of a homothety flag")
    p.add_argument("polytope")
    p.add_argument("--center", required=True)
    p.add_argument("--steps", required=True, type=int)
    p = sub.add_parser("bound", help="certified convolution-distance bound")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("concentrate", help="certificate collapsing a function to a point mass")
    p.add_argument("cf")
    p.add_argument("--target", default=None)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--out")
    p = sub.add_parser("link", help="certificate chaining two functions of equal integral")
    p.add_argument("cf1")
    p.add_argument("cf2")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--out")
    p = sub.add_parser("verify", help="independently re-check a certificate")
    p.add_argument("cert")
    p = sub.add_parser("probe", help="bound vs metric table over a shrinking schedule")
    p.add_argument("cf")
    p.add_argument("--metric", required=True, choices=[k.value for k in MetricKind])
    p.add_argument("--target", default=None)
    p.add_argument("--schedule", required=True)
    return ap


def run(argv: Sequence[str]) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return _dispatch(args, cfg)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _origin(dim: int):
    return tuple(Fraction(0) for _ in range(dim))


def _dispatch(args: argparse.Namespace, cfg: WorkspaceConfig) -> int:
    cmd = args.command
    if cmd == "integrate":
        print(euler_integral(_load_cf(args.cf, cfg)))
        return 0
    if cmd == "oracle-integrate":
        print(oracle_integral(_load_cf(args.cf, cfg)))
        return 0
    if cmd == "pushforward":
        f = _load_cf(args.cf, cfg)
        try:
            m = jsonio.affine_map_from_json(_read_json(args.map))
        except SchemaError as exc:
            raise SchemaError(f"{args.map}: {exc}") from None
        _emit(jsonio.cf_to_json(pushforward(f, m)), None)
        return 0
    if cmd == "chi":
        _emit(jsonio.cf_to_json(local_euler(_load_sheaf(args.sheaf))), None)
        return 0
    if cmd == "flag":
        try:
            poly = jsonio.polytope_from_json(_read_json(args.polytope))
        except SchemaError as exc:
            raise SchemaError(f"{args.polytope}: {exc}") from None
        fl = build_flag(poly, _parse_point(args.center), args.steps, cfg.norm)
        _emit(
            {"eta": fl.spacing.decimal_up(), "sheaf": jsonio.sheaf_to_json(graded_sheaf(fl))},
            None,
        )
        return 0
    if cmd == "bound":
        left = _load_sheaf(args.left)
        right = _load_sheaf(args.right)
        bound, matching = sum_bound(left, right, cfg.norm)
        print(bound.decimal_up())
        print("pairs " + " ".join(f"{i}-{j}" for i, j in matching.pairs))
        print("unmatched_f " + " ".join(str(i) for i in matching.unmatched_left))
        print("unmatched_g " + " ".join(str(j) for j in matching.unmatched_right))
        return 0
    if cmd == "concentrate":
        f = _load_cf(args.cf, cfg)
        target = _parse_point(args.target) if args.target else _origin(f.dimension)
        cert = concentrate_to_point(f, target, jsonio.parse_rational(args.epsilon), cfg.norm)
        _emit(jsonio.cert_to_json(cert), args.out)
        return 0
    if cmd == "link":
        f = _load_cf(args.cf1, cfg)
        g = _load_cf(args.cf2, cfg)
        cert = link(f, g, jsonio.parse_rational(args.epsilon), cfg.norm)
        _emit(jsonio.cert_to_json(cert), args.out)
        return 0
    if cmd == "verify":
        try:
            cert = jsonio.cert_from_json(_read_json(args.cert))
        except SchemaError as exc:
            raise SchemaError(f"{args.cert}: {exc}") from None
        report = verify(cert, cfg.norm, cfg.tol_dist, cfg.sample_density)
        for note in report.notes:
            print(f"note: {note}")
        if report.passed:
            print("PASS")
            return 0
        print("FAIL")
        for item in report.failures:
            print(f"- {item}")
        return 1
    if cmd == "probe":
        f = _load_cf(args.cf, cfg)
        target = _parse_point(args.target) if args.target else _origin(f.dimension)
        schedule = [jsonio.parse_rational(part) for part in args.schedule.split(",")]
        rows = probe_metric(MetricKind(args.metric), f, target, schedule, cfg.norm)
        print("epsilon,dc_bound,delta")
        for row in rows:
            print(f"{decimal_up(row.epsilon)},{row.dc_bound.decimal_up()},{row.delta.decimal_up()}")
        return 0
    raise SchemaError(f"unknown command: {cmd}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
