"""Command-line surface: run any operation, emit comparison rows as CSV
(default) or JSON, sweep parameter ranges, and run the acceptance suite.

Exit codes: 0 success, 2 usage/parameter error, 1 internal error. Rows
are deterministic; the runtime_ms aux field is the one non-reproducible
output and --deterministic suppresses it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import dirichlet_characters as dcm
from . import landau_estimators as le
from . import mertens_lab as ml
from . import prime_engine as pe

SCHEMA_VERSION = "1"
CSV_HEADER = ["schema_version", "command", "params", "empirical", "predicted", "ratio", "aux"]


def _round12(v: float | None) -> float | None:
    """Round to 12 significant digits so serialized values round-trip exactly."""
    if v is None:
        return None
    return float(f"{float(v):.12g}")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


@dataclass
class ComparisonRow:
    """One serializable record: command, flattened parameters, the empirical
    integer (or None), the predicted real (or None), their ratio, and an
    aux bag (factor breakdowns, cutoffs, runtimes)."""

    command: str
    params: dict
    empirical: int | None
    predicted: float | None
    ratio: float | None
    aux: dict = field(default_factory=dict)

    def to_obj(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": dict(self.params),
            "empirical": self.empirical,
            "predicted": self.predicted,
            "ratio": self.ratio,
            "aux": dict(self.aux),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "ComparisonRow":
        return cls(
            command=obj["command"],
            params=dict(obj["params"]),
            empirical=obj["empirical"],
            predicted=obj["predicted"],
            ratio=obj["ratio"],
            aux=dict(obj["aux"]),
        )

    def csv_cells(self) -> list[str]:
        return [
            SCHEMA_VERSION,
            self.command,
            ";".join(f"{k}={_fmt(v)}" for k, v in self.params.items()),
            "" if self.empirical is None else str(self.empirical),
            "" if self.predicted is None else _fmt(self.predicted),
            "" if self.ratio is None else _fmt(self.ratio),
            ";".join(f"{k}={_fmt(v)}" for k, v in self.aux.items()),
        ]


def make_row(
    command: str,
    params: dict,
    empirical: int | None,
    predicted: float | None,
    aux: dict | None = None,
    ratio: float | None = None,
) -> ComparisonRow:
    """Build a row with 12-significant-digit floats.

    The ratio field stays the exact double quotient of the (rounded)
    operands: re-rounding it to 12 digits would break the requirement that
    ratio recomputes from empirical/predicted to 1e-12 relative. CSV still
    renders it at 12 digits; JSON carries the exact field so parsing the
    output reproduces the row bit for bit.
    """
    predicted = _round12(predicted)
    if ratio is None and empirical is not None and predicted is not None:
        ratio = empirical / predicted
    aux = {
        k: (_round12(v) if isinstance(v, float) else v) for k, v in (aux or {}).items()
    }
    return ComparisonRow(
        command=command,
        params={k: (_round12(v) if isinstance(v, float) else v) for k, v in params.items()},
        empirical=empirical,
        predicted=predicted,
        ratio=None if ratio is None else float(ratio),
        aux=aux,
    )


def rows_to_csv(rows: list[ComparisonRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_cells())
    return buf.getvalue()


def rows_to_json(rows: list[ComparisonRow]) -> str:
    return json.dumps([r.to_obj() for r in rows], indent=2) + "\n"


def rows_from_json(text: str) -> list[ComparisonRow]:
    return [ComparisonRow.from_obj(obj) for obj in json.loads(text)]


# ---------------------------------------------------------------------------
# handlers


def _factor_aux(factors: list[tuple[str, float]]) -> dict:
    return {f"factor_{name}": value for name, value in factors}


def _handle_goldbach(args) -> list[ComparisonRow]:
    witness = le.goldbach_count(args.n)
    params = {"n": args.n, "cutoff": args.cutoff}
    aux: dict = {"ordered": witness.ordered_count, "ratio_convention": "unordered/main"}
    if args.n >= 6:
        main, factors = le.goldbach_main_term(args.n, args.cutoff)
        scales = le.goldbach_residue(args.n)
        hl = le.goldbach_hl_reference(args.n, args.cutoff)
        aux.update(_factor_aux(factors))
        aux.update(
            residue_bound=scales.bound,
            loss_bound=scales.loss,
            hl_reference_ordered=hl,
            ratio_ordered_vs_hl=witness.ordered_count / hl,
            ratio_ordered_vs_main=witness.ordered_count / main,
        )
        return [make_row("goldbach", params, witness.unordered_count, main, aux)]
    return [make_row("goldbach", params, witness.unordered_count, None, aux)]


def _handle_polignac(args, command="polignac") -> list[ComparisonRow]:
    count = le.polignac_count(args.alpha, args.k, args.limit)
    main, factors = le.polignac_main_term(args.alpha, args.k, args.limit, args.cutoff)
    scales = le.polignac_residue(args.limit)
    params = {"alpha": args.alpha, "k": args.k, "limit": args.limit, "cutoff": args.cutoff}
    aux = dict(_factor_aux(factors), residue_bound=scales.bound, loss_bound=scales.loss)
    return [make_row(command, params, count, main, aux)]


def _handle_twin(args) -> list[ComparisonRow]:
    args.alpha, args.k = 1, 1
    return _handle_polignac(args, command="twin")


def _handle_interval(args) -> list[ComparisonRow]:
    count = le.square_interval_count(args.n)
    aux: dict = {}
    predicted = None
    if args.n >= 2:
        est = le.square_interval_estimate(args.n)
        predicted = est.main
        aux = {
            "residue_constant": est.residue_constant,
            "progression_density": est.progression_density,
            "residue_class_count": est.residue_class_count,
            "base": est.base,
            "alpha": est.alpha,
            "k_odd": est.K,
        }
    return [make_row("interval", {"n": args.n}, count, predicted, aux)]


def _handle_quadratic(args) -> list[ComparisonRow]:
    count = le.quadratic_count(args.limit)
    main, factors = le.quadratic_main_term(args.limit, args.cutoff)
    scales = le.quadratic_residue(args.limit)
    aux = dict(
        _factor_aux(factors),
        even_n=count.even_n,
        n_max=count.n_max,
        residue_bound=scales.bound,
        loss_bound=scales.loss,
    )
    params = {"limit": args.limit, "cutoff": args.cutoff}
    return [make_row("quadratic", params, count.total, main, aux)]


def _handle_mertens(args) -> list[ComparisonRow]:
    x = args.x
    if args.kind == "logsum":
        value = ml.mertens_log_sum(x, threads=args.threads)
        predicted = math.log(x)
        aux = {"value": value, "drift": value - predicted}
    elif args.kind == "product":
        value = ml.mertens_product(x, threads=args.threads)
        predicted = math.exp(ml.EULER_GAMMA) * math.log(x)
        aux = {"value": value}
    else:  # phisum
        value = ml.phi_reciprocal_sum(x)
        predicted = math.log(x)
        aux = {"value": value}
    row = make_row(
        "mertens",
        {"kind": args.kind, "x": x},
        None,
        predicted,
        aux,
        ratio=value / predicted,
    )
    return [row]


def _handle_products(args) -> list[ComparisonRow]:
    params = {"kind": args.kind, "cutoff": args.cutoff}
    if args.kind == "twin":
        est = ml.twin_constant_product(args.cutoff, threads=args.threads)
    elif args.kind == "quadratic":
        est = ml.quadratic_constant_product(args.cutoff, threads=args.threads)
    elif args.kind == "tail":
        params.update(theta=args.theta, w=args.w)
        est = ml.totient_tail_product(args.theta, args.w, args.cutoff, threads=args.threads)
    else:  # window
        params = {"kind": args.kind, "theta": args.theta, "w": args.w, "z": args.z}
        window = ml.totient_window_product(args.theta, args.w, args.z)
        est = window.estimate
        aux = {
            "value": est.value,
            "largest_prime": est.cutoff,
            "ratio_to_logw_over_logz": window.ratio_to_logw_over_logz,
            "ratio_to_logz_over_logw": window.ratio_to_logz_over_logw,
        }
        return [make_row("products", params, None, None, aux)]
    aux = {
        "value": est.value,
        "largest_prime": est.cutoff,
        "theta": est.theta,
        "tail_note": est.tail_note,
    }
    return [make_row("products", params, None, None, aux)]


def _handle_progression(args) -> list[ComparisonRow]:
    got = pe.count_primes_in_progression(args.l, args.d, args.x, threads=args.threads)
    params = {"l": args.l, "d": args.d, "x": args.x}
    return [make_row("progression", params, got.count, got.main, {"error": got.error})]


def _handle_residue(args) -> list[ComparisonRow]:
    report = dcm.residue_sum(args.x, args.a, threads=args.threads)
    params = {"x": args.x, "a": args.a}
    aux = {
        "sum_real": report.sum_value.real,
        "sum_imag": report.sum_value.imag,
        "abs_value": report.abs_value,
        "D": report.D,
    }
    return [
        make_row("residue", params, None, report.bound, aux, ratio=report.ratio)
    ]


_HANDLERS = {
    "goldbach": _handle_goldbach,
    "twin": _handle_twin,
    "polignac": _handle_polignac,
    "interval": _handle_interval,
    "quadratic": _handle_quadratic,
    "mertens": _handle_mertens,
    "products": _handle_products,
    "progression": _handle_progression,
    "residue": _handle_residue,
}

# flag name -> (type caster, default or REQUIRED) per subcommand
_REQUIRED = object()
_FLAGS: dict[str, dict[str, tuple]] = {
    "goldbach": {"--n": (int, _REQUIRED), "--cutoff": (int, ml.DEFAULT_CUTOFF)},
    "twin": {"--limit": (int, _REQUIRED), "--cutoff": (int, ml.DEFAULT_CUTOFF)},
    "polignac": {
        "--alpha": (int, _REQUIRED),
        "--k": (int, _REQUIRED),
        "--limit": (int, _REQUIRED),
        "--cutoff": (int, ml.DEFAULT_CUTOFF),
    },
    "interval": {"--n": (int, _REQUIRED)},
    "quadratic": {"--limit": (int, _REQUIRED), "--cutoff": (int, ml.DEFAULT_CUTOFF)},
    "mertens": {"--kind": (str, _REQUIRED), "--x": (int, _REQUIRED)},
    "products": {
        "--kind": (str, _REQUIRED),
        "--theta": (float, 1.0),
        "--w": (int, 3),
        "--z": (int, 100),
        "--cutoff": (int, ml.DEFAULT_CUTOFF),
    },
    "progression": {"--l": (int, _REQUIRED), "--d": (int, _REQUIRED), "--x": (int, _REQUIRED)},
    "residue": {"--x": (int, _REQUIRED), "--a": (int, 1)},
}
_CHOICES = {
    ("mertens", "--kind"): ["logsum", "product", "phisum"],
    ("products", "--kind"): ["twin", "quadratic", "tail", "window"],
}


def _int_arg(text: str) -> int:
    """Integer flag value; scientific notation like 1e6 is accepted."""
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if value != int(value):
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        return int(value)


def _add_flags(parser: argparse.ArgumentParser, command: str, as_text: bool = False):
    for flag, (caster, default) in _FLAGS[command].items():
        kwargs: dict = {}
        if not as_text:
            kwargs["type"] = _int_arg if caster is int else caster
            choices = _CHOICES.get((command, flag))
            if choices:
                kwargs["choices"] = choices
        if default is _REQUIRED:
            kwargs["required"] = True
        else:
            kwargs["default"] = str(default) if as_text else default
        parser.add_argument(flag, **kwargs)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--deterministic", action="store_true")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="landaulab",
        description="Sieve counts and asymptotic-formula comparisons for the "
        "four classical Landau problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _FLAGS:
        p = sub.add_parser(name, parents=[common])
        _add_flags(p, name)
    # sweep re-parses the target's flags as raw text (range syntax passes
    # through); run() splits those off before this parser sees them
    sweep = sub.add_parser("sweep", parents=[common])
    sweep.add_argument("target", choices=sorted(_FLAGS))
    accept = sub.add_parser("accept", parents=[common])
    accept.add_argument("--only", default=None, help="substring filter on criterion ids")
    return parser


def _parse_range(text: str) -> list[int]:
    """lo:hi:step (inclusive) or a comma list; plain values give one entry."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be lo:hi:step, got {text!r}")
        lo, hi, step = (_int_arg(p) for p in parts)
        if step <= 0:
            raise ValueError(f"range step must be positive, got {step}")
        return list(range(lo, hi + 1, step))
    return [_int_arg(p) for p in text.split(",")]


def _run_sweep(args, rest: list[str]) -> list[ComparisonRow]:
    target = args.target
    text_parser = argparse.ArgumentParser(prog=f"landaulab sweep {target}")
    _add_flags(text_parser, target, as_text=True)
    text_args = text_parser.parse_args(rest)

    fixed: dict[str, object] = {}
    swept: dict[str, list[int]] = {}
    for flag, (caster, _) in _FLAGS[target].items():
        name = flag.lstrip("-")
        raw = getattr(text_args, name)
        if caster is int and ("," in str(raw) or ":" in str(raw)):
            values = _parse_range(str(raw))
            if not values:
                raise ValueError(f"empty sweep range for {flag}: {raw!r}")
            swept[name] = values
        else:
            fixed[name] = caster(raw) if caster is not int else _int_arg(str(raw))

    combos: list[dict] = [dict(fixed)]
    for name, values in swept.items():
        combos = [dict(c, **{name: v}) for c in combos for v in values]
    if not combos:
        raise ValueError("empty sweep range")

    rows: list[ComparisonRow] = []
    for combo in combos:
        ns = argparse.Namespace(threads=args.threads, **combo)
        rows.extend(_HANDLERS[target](ns))
    return rows


def run(argv=None) -> int:
    """Entry point, returning the process exit code instead of raising."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    if argv and argv[0] == "sweep":
        # split off the target's own flags before argparse sees them
        try:
            head, rest = argv[:2], argv[2:]
            common_flags, target_flags = [], []
            it = iter(rest)
            for tok in it:
                if tok in ("--format", "--threads"):
                    common_flags.extend([tok, next(it, "")])
                elif tok == "--deterministic":
                    common_flags.append(tok)
                else:
                    target_flags.append(tok)
            args = parser.parse_args(head + common_flags)
        except SystemExit as exc:
            return int(exc.code or 0)
        try:
            rows = _run_sweep(args, target_flags)
        except SystemExit as exc:
            return int(exc.code or 0)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except Exception as exc:  # pragma: no cover - defensive
            print(f"internal error: {exc}", file=sys.stderr)
            return 1
        _emit(rows, args)
        return 0

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "accept":
        from . import acceptance

        results = acceptance.run_all(only=args.only)
        for r in results:
            print(acceptance.format_line(r))
        return 0 if all(r.passed for r in results) else 1

    start = time.perf_counter()
    try:
        rows = _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = (time.perf_counter() - start) * 1000
    if not args.deterministic:
        for row in rows:
            row.aux["runtime_ms"] = _round12(elapsed_ms)
    _emit(rows, args)
    return 0


def _emit(rows: list[ComparisonRow], args) -> None:
    text = rows_to_json(rows) if args.format == "json" else rows_to_csv(rows)
    sys.stdout.write(text)


def main() -> None:
    sys.exit(run())
