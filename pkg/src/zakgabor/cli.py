"""Command-line front end.

Subcommands read a problem description (JSON) and print a report (JSON with
sorted keys). Exit codes: 0 success, 2 invalid input, 3 inadmissible
parameters for ``construct-windows``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .admissibility import (
    admits_complete,
    admits_frame,
    admits_riesz_onb,
    cardinality_relations,
)
from .arithmetic import GaborParams, derive_params
from .construction import (
    InadmissibleError,
    construct_windows,
    make_parseval_windows,
    verify_construction,
)
from .frame_analysis import (
    DEFAULT_GRID,
    FRAME_TOL,
    PARSEVAL_TOL,
    analyze_system,
    necessary_density_check,
)
from .oracle import DEFAULT_N_MAX, truncated_completeness, truncated_frame_bounds
from .periodic_set import PeriodicSet, kappa_cards, require_periodic, section_card
from .zak import FiniteSignal, ThetaGrid
from .zak_matrix import DEFAULT_RANK_TOL

log = logging.getLogger("zakgabor")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INADMISSIBLE = 3
ORACLE_RTOL = 0.05


class SpecError(ValueError):
    """Invalid problem description."""


@dataclass
class ProblemSpec:
    periodic_set: PeriodicSet
    params: GaborParams
    windows: list[FiniteSignal] | None = None

    @classmethod
    def from_json(cls, data) -> ProblemSpec:
        if not isinstance(data, dict):
            raise SpecError("spec must be a JSON object")
        try:
            S = PeriodicSet.from_json(data["periodic_set"])
            raw = data["params"]
            params = derive_params(raw["L"], raw["M"], raw["N"])
        except KeyError as exc:
            raise SpecError(f"missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            raise SpecError(str(exc)) from None
        try:
            require_periodic(S, params.N)
        except ValueError as exc:
            raise SpecError(str(exc)) from None
        windows = None
        if data.get("windows") is not None:
            try:
                windows = [FiniteSignal.from_json(w) for w in data["windows"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise SpecError(f"bad window: {exc}") from None
            if len(windows) != params.L:
                raise SpecError(
                    f"window count mismatch: L={params.L} but {len(windows)} windows given"
                )
            for l, w in enumerate(windows):
                if not w.lies_in(S):
                    raise SpecError(f"window {l} has support outside S")
        return cls(S, params, windows)

    def to_json(self) -> dict:
        out = {
            "periodic_set": self.periodic_set.to_json(),
            "params": {"L": self.params.L, "M": self.params.M, "N": self.params.N},
        }
        if self.windows is not None:
            out["windows"] = [w.to_json() for w in self.windows]
        return out


def load_spec(path: str) -> ProblemSpec:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc}") from None
    return ProblemSpec.from_json(data)


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float in report")
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and 17 significant digits for every float."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted((str(k), v) for k, v in obj.items())
        body = ",\n".join(f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}"
                          for k, v in items)
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def base_report(command: str, spec: ProblemSpec, args) -> dict:
    S, params = spec.periodic_set, spec.params
    rel = cardinality_relations(S, params)
    cards = kappa_cards(S, params)
    return {
        "tool": {"name": "zakgabor", "version": __version__},
        "command": command,
        "settings": {
            "grid": args.grid,
            "rank_tol": args.rank_tol,
            "parseval_tol": args.parseval_tol,
            "frame_tol": FRAME_TOL,
            "n_max": args.n_max,
        },
        "spec": spec.to_json(),
        "params": params.as_dict(),
        "admissibility": {
            "complete": admits_complete(S, params),
            "frame": admits_frame(S, params),
            "parseval_frame": admits_frame(S, params),
            "riesz_basis": admits_riesz_onb(S, params),
            "orthonormal_basis": admits_riesz_onb(S, params),
            "density": necessary_density_check(S, params),
        },
        "cardinality": {
            "kappa_cards": {str(j): c for j, c in enumerate(cards)},
            "capacity_qL": params.q * params.L,
            "section_card_N": section_card(S, params.N),
            "LM": params.L * params.M,
            "sum": rel.sum,
            "bound_holds": rel.bound_holds,
            "equality_holds": rel.equality_holds,
        },
    }


def _verdict(windows, spec: ProblemSpec, args) -> dict:
    v = analyze_system(windows, spec.periodic_set, spec.params, ThetaGrid(args.grid),
                       rank_tol=args.rank_tol, parseval_tol=args.parseval_tol,
                       check_grid=True)
    return v.to_json()


def cmd_analyze(args) -> tuple[dict, int]:
    spec = load_spec(args.spec)
    report = base_report("analyze", spec, args)
    if spec.windows is not None:
        report["verdict"] = _verdict(spec.windows, spec, args)
    return report, EXIT_OK


def cmd_construct(args) -> tuple[dict, int]:
    spec = load_spec(args.spec)
    report = base_report("construct-windows", spec, args)
    try:
        wc = construct_windows(spec.periodic_set, spec.params)
    except InadmissibleError as exc:
        report["error"] = {"message": str(exc), "j": exc.j, "card": exc.card,
                           "capacity_qL": exc.cap}
        return report, EXIT_INADMISSIBLE
    windows = make_parseval_windows(wc, spec.params.M)
    report["construction"] = {
        "E_sets": [list(E) for E in wc.E_sets],
        "union_card": wc.union_card,
        "provenance": [asdict(pl) for pl in wc.provenance],
        "checks": verify_construction(wc, spec.periodic_set, spec.params),
        "parseval_windows": [w.to_json() for w in windows],
    }
    report["verdict"] = _verdict(windows, spec, args)
    return report, EXIT_OK


def oracle_section(windows, spec: ProblemSpec, verdict: dict, n_max: int,
                   rank_tol: float) -> dict:
    S, params = spec.periodic_set, spec.params
    a_est, b_est = truncated_frame_bounds(windows, S, params, n_max)
    complete = truncated_completeness(windows, S, params, n_max, rank_tol)
    A, B = verdict["lower_bound"], verdict["upper_bound"]
    if verdict["is_frame"]:
        bounds_agree = (abs(a_est - A) <= ORACLE_RTOL * A
                        and abs(b_est - B) <= ORACLE_RTOL * B)
    else:
        bounds_agree = None
    agreement = complete == verdict["complete"] and bounds_agree is not False
    return {
        "n_max": n_max,
        "lower_estimate": a_est,
        "upper_estimate": b_est,
        "complete": complete,
        "relative_tolerance": ORACLE_RTOL,
        "bounds_agree": bounds_agree,
        "completeness_agree": complete == verdict["complete"],
        "agreement": agreement,
    }


def cmd_oracle(args) -> tuple[dict, int]:
    spec = load_spec(args.spec)
    if args.n_max < 4:
        raise SpecError("truncation too small")
    report = base_report("oracle-check", spec, args)
    if args.construct:
        try:
            wc = construct_windows(spec.periodic_set, spec.params)
        except InadmissibleError as exc:
            report["error"] = {"message": str(exc), "j": exc.j, "card": exc.card,
                               "capacity_qL": exc.cap}
            return report, EXIT_INADMISSIBLE
        windows = make_parseval_windows(wc, spec.params.M)
        report["construction"] = {"E_sets": [list(E) for E in wc.E_sets]}
    elif spec.windows is None:
        raise SpecError("oracle-check needs windows (or --construct)")
    else:
        windows = spec.windows
    verdict = _verdict(windows, spec, args)
    report["verdict"] = verdict
    report["oracle"] = oracle_section(windows, spec, verdict, args.n_max, args.rank_tol)
    return report, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="problem JSON file, or - for stdin")
    common.add_argument("--grid", type=int, default=DEFAULT_GRID,
                        help="theta samples per unit interval (default %(default)s)")
    common.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    common.add_argument("--parseval-tol", type=float, default=PARSEVAL_TOL)
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX,
                        help="oracle truncation (default %(default)s)")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="zakgabor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common],
                   help="admissibility flags and, with windows, the frame verdict"
                   ).set_defaults(func=cmd_analyze)
    sub.add_parser("construct-windows", parents=[common],
                   help="build Parseval-frame windows when admissible"
                   ).set_defaults(func=cmd_construct)
    p = sub.add_parser("oracle-check", parents=[common],
                       help="cross-check the Zak-domain verdict by brute force")
    p.add_argument("--construct", action="store_true",
                   help="check the constructed Parseval windows instead of the given ones")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.grid < 1:
            raise SpecError("--grid must be positive")
        if not 0 < args.rank_tol < 1:
            raise SpecError("--rank-tol must lie in (0, 1)")
        report, code = args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INADMISSIBLE:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
