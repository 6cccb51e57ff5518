"""Command-line entry point: ``index2walsh <command> --p P --l L [options]``.

Exit codes: 0 success, 1 a check failed, 2 invalid instance, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import mpmath

from .algebra import embed_complex
from .closed_form import (
    NONZERO_CLASSES,
    cyclotomic_numbers_order2,
    gauss_sum_index2,
    gauss_sum_total,
    quadratic_gauss,
    spectrum,
    trace_beta_table,
)
from .errors import Index2WalshError, InvalidInput
from .oracle import brute_cyclotomic_numbers, brute_gauss_sum, count_matrix
from .params import KClass, Params, validate_instance
from .verify import DEFAULT_VERIFY_BOUND, choose_convention, run_verify

EXIT_OK, EXIT_CHECK, EXIT_INSTANCE, EXIT_USAGE = 0, 1, 2, 64

COMMANDS = ("params", "spectrum", "verify", "gauss", "cyclo", "trace-table")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int | None = None
    l: int | None = None
    q: int | None = None
    format: str = "json"
    verify_bound: int = DEFAULT_VERIFY_BOUND
    precision: int = 30
    output: str | None = None
    seed: int = 0


def _num(x) -> str:
    return mpmath.nstr(x, 20, min_fixed=-30, max_fixed=30)


def _approx(z) -> list[str]:
    return [_num(z.real), _num(z.imag)]


def _rows_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _convention(params: Params, source: str) -> dict:
    return {"b": 1 if params.b > 0 else -1, "delta": params.delta, "source": source}


# ---------------------------------------------------------------------------
# commands; each returns (exit code, rendered text)


def _cmd_params(cfg: RunConfig, params: Params) -> tuple[int, str]:
    anchored, source, _ = choose_convention(params, cfg.verify_bound, cfg.seed)
    d = anchored.to_dict()
    d["convention"] = _convention(anchored, source)
    if cfg.format == "json":
        return EXIT_OK, json.dumps(d, indent=2)
    flat = [[k, json.dumps(v) if isinstance(v, dict) else v] for k, v in d.items()]
    if cfg.format == "csv":
        return EXIT_OK, _rows_csv(["field", "value"], flat)
    return EXIT_OK, "\n".join(f"{k:>10}: {v}" for k, v in flat)


def _cmd_spectrum(cfg: RunConfig, params: Params) -> tuple[int, str]:
    anchored, source, _ = choose_convention(params, cfg.verify_bound, cfg.seed)
    table = spectrum(anchored, cfg.precision, source)
    if cfg.format == "json":
        return EXIT_OK, table.to_json()
    if cfg.format == "csv":
        return EXIT_OK, table.to_csv()
    return EXIT_OK, table.to_text()


def _cmd_verify(cfg: RunConfig, params: Params) -> tuple[int, str]:
    rep = run_verify(params, cfg.verify_bound, cfg.precision, cfg.seed)
    code = EXIT_OK if rep.ok else EXIT_CHECK
    if cfg.format == "json":
        return code, rep.to_json()
    if cfg.format == "csv":
        return code, _rows_csv(["name", "status", "detail"], [[c.name, c.status, c.detail] for c in rep.checks])
    return code, rep.to_text()


def _cmd_gauss(cfg: RunConfig, params: Params) -> tuple[int, str]:
    anchored, source, ctx = choose_convention(params, cfg.verify_bound, cfg.seed)
    part = anchored.partition
    cm = count_matrix(ctx, anchored.N) if ctx is not None else None
    entries = []
    for k in NONZERO_CLASSES:
        if k == KClass.ZERO:
            continue
        i = part.representative(k)
        g = gauss_sum_index2(anchored, i)
        row = {"i": i, "class": str(k), "value": g.to_json(), "symbolic": str(g),
               "approx": _approx(embed_complex(g, cfg.precision)), "brute_approx": None}
        if cm is not None:
            row["brute_approx"] = _approx(brute_gauss_sum(ctx, cm, i, cfg.precision)[0])
        entries.append(row)
    total = gauss_sum_total(anchored)
    quad = None
    if anchored.p != 2:
        qg = quadratic_gauss(anchored.p, anchored.f)
        quad = {"symbolic": str(qg), "approx": _approx(qg.embed(cfg.precision))}
    out = {
        "instance": {"p": anchored.p, "l": anchored.l},
        "convention": _convention(anchored, source),
        "gauss_sums": entries,
        "sum_over_j": {"value": total.to_json(), "symbolic": str(total)},
        "quadratic": quad,
    }
    if cfg.format == "json":
        return EXIT_OK, json.dumps(out, indent=2)
    rows = [[e["i"], e["class"], e["symbolic"], *e["approx"], *(e["brute_approx"] or ["", ""])] for e in entries]
    if cfg.format == "csv":
        return EXIT_OK, _rows_csv(["i", "class", "value_symbolic", "approx_re", "approx_im", "brute_re", "brute_im"], rows)
    lines = [f"G(chi^{r[0]})  [{r[1]}]  = {r[2]}\n    ~ {r[3]} + {r[4]}i" + (f"   brute {r[5]} + {r[6]}i" if r[5] else "") for r in rows]
    lines.append(f"sum over j of G(chi^j) = {total}")
    if quad:
        lines.append(f"G(eta) = {quad['symbolic']}")
    return EXIT_OK, "\n".join(lines)


def _cmd_cyclo(cfg: RunConfig) -> tuple[int, str]:
    q = cfg.q
    closed = cyclotomic_numbers_order2(q)
    brute = brute_cyclotomic_numbers(q, cfg.seed) if q <= cfg.verify_bound else None
    match = None if brute is None else brute == closed
    key = lambda ij: f"({ij[0]},{ij[1]})"  # noqa: E731
    out = {
        "q": q,
        "closed_form": {key(k): v for k, v in closed.items()},
        "enumeration": None if brute is None else {key(k): v for k, v in brute.items()},
        "match": match,
    }
    code = EXIT_CHECK if match is False else EXIT_OK
    if cfg.format == "json":
        return code, json.dumps(out, indent=2)
    rows = [[key(k), v, "" if brute is None else brute[k]] for k, v in closed.items()]
    if cfg.format == "csv":
        return code, _rows_csv(["pair", "closed_form", "enumeration"], rows)
    lines = [f"{r[0]}  closed={r[1]}  enumerated={r[2] if r[2] != '' else 'skipped'}" for r in rows]
    lines.append(f"match: {match}")
    return code, "\n".join(lines)


def _cmd_trace_table(cfg: RunConfig, params: Params) -> tuple[int, str]:
    anchored, source, _ = choose_convention(params, cfg.verify_bound, cfg.seed)
    tt = trace_beta_table(anchored)
    entries = {str(k): v for k, v in tt.entries.items()}
    out = {
        "instance": {"p": anchored.p, "l": anchored.l},
        "convention": _convention(anchored, source),
        "case": anchored.case.tag,
        "epsilon": tt.epsilon,
        "entries": {str(k): entries[str(k)] for k in NONZERO_CLASSES},
    }
    if cfg.format == "json":
        return EXIT_OK, json.dumps(out, indent=2)
    rows = [[k, v] for k, v in out["entries"].items()]
    if cfg.format == "csv":
        return EXIT_OK, _rows_csv(["class", "trace"], rows)
    head = f"Tr(beta^i) by class, case={anchored.case}" + (f", epsilon={tt.epsilon}" if tt.epsilon is not None else "")
    return EXIT_OK, "\n".join([head] + [f"{k:>6}: {v}" for k, v in rows])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="index2walsh", description="Closed-form Walsh spectra in the index-2 case.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--p", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--q", type=int, help="odd prime power (cyclo only)")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--verify-bound", type=int, default=DEFAULT_VERIFY_BOUND)
    parser.add_argument("--precision", type=int, default=30)
    parser.add_argument("--output")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.verify_bound < 2:
        raise UsageError("--verify-bound must be at least 2")
    if ns.precision < 5:
        raise UsageError("--precision must be at least 5")
    if ns.command == "cyclo":
        if ns.q is None:
            raise UsageError("cyclo needs --q")
    elif ns.p is None or ns.l is None:
        raise UsageError(f"{ns.command} needs --p and --l")
    return RunConfig(ns.command, ns.p, ns.l, ns.q, ns.format, ns.verify_bound, ns.precision, ns.output, ns.seed)


def run(cfg: RunConfig) -> tuple[int, str]:
    if cfg.command == "cyclo":
        return _cmd_cyclo(cfg)
    params = validate_instance(cfg.p, cfg.l)
    handler = {
        "params": _cmd_params,
        "spectrum": _cmd_spectrum,
        "verify": _cmd_verify,
        "gauss": _cmd_gauss,
        "trace-table": _cmd_trace_table,
    }[cfg.command]
    return handler(cfg, params)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, text = run(cfg)
    except InvalidInput as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INSTANCE
    except Index2WalshError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
