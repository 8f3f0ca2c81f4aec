"""Command-line front end.

    dilation-k compute <FILE|-> [--format text|json] [--no-cross-check]
                                [--emit-matrices] [--max-size N] [--level-cap R]
    dilation-k check <FILE|->

Exit codes: 0 success, 1 internal inconsistency, 2 not a dilation matrix,
3 unreadable input or bad usage, 4 size guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from math import comb

from .errors import ParseError
from .exact_linalg import FinAbGroup, IntMatrix
from .ktheory import DEFAULT_LEVEL_CAP, KTheoryReport, k_groups, k_groups_via_b, reports_agree
from .spectral import DilationReport, certify_dilation

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_REJECTED = 2
EXIT_PARSE = 3
EXIT_TOO_LARGE = 4

DEFAULT_MAX_SIZE = 4096


@dataclass(frozen=True)
class RunConfig:
    source: str | None = None  # path, or "-" for stdin
    inline: str | None = None
    fmt: str = "text"
    cross_check: bool = True
    emit_matrices: bool = False
    max_size: int = DEFAULT_MAX_SIZE
    level_cap: int = DEFAULT_LEVEL_CAP

    def __post_init__(self):
        if (self.source is None) == (self.inline is None):
            raise ValueError("exactly one of source or inline must be given")


class SizeGuardError(Exception):
    def __init__(self, d: int, cap: int):
        self.d, self.cap = d, cap
        super().__init__(
            f"dimension {d} gives per-degree matrices of size {comb(d, d // 2)}, "
            f"above the cap {cap} (raise it with --max-size)"
        )


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise ParseError(f"not an integer: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise ParseError(f"not an integer: {x!r}")


def _square(rows) -> IntMatrix:
    if not isinstance(rows, list) or not rows:
        raise ParseError("matrix must be a non-empty list of rows")
    if not all(isinstance(r, list) for r in rows):
        raise ParseError("every row must be a list")
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ParseError(f"expected {d} entries in every row of a {d}x{d} matrix")
    return IntMatrix.from_rows([[_as_int(x) for x in r] for r in rows])


def parse_input(text: str) -> IntMatrix:
    """Parse a square integer matrix.

    Accepts JSON (``{"matrix": [[...]]}`` or a bare list of rows; entries may
    be decimal strings) or plain text: a first line with the dimension d,
    then d whitespace-separated rows.  ``#`` starts a comment in text form.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped[0] in "{[":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if isinstance(data, dict):
            if "matrix" not in data:
                raise ParseError('JSON object has no "matrix" field')
            data = data["matrix"]
        return _square(data)

    lines = [ln.split("#", 1)[0].split() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines[0]) != 1:
        raise ParseError("first line must hold the dimension only")
    d = _as_int(lines[0][0])
    if d < 1:
        raise ParseError("dimension must be positive")
    body = lines[1:]
    if len(body) != d:
        raise ParseError(f"expected {d} rows, found {len(body)}")
    return _square([[_as_int(x) for x in ln] for ln in body])


def _read_source(cfg: RunConfig) -> str:
    if cfg.inline is not None:
        return cfg.inline
    if cfg.source == "-":
        return sys.stdin.read()
    try:
        with open(cfg.source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {cfg.source}: {exc.strerror}") from None


def _group_json(g: FinAbGroup) -> dict:
    return {"rank": g.free_rank, "torsion": [str(t) for t in g.torsion]}


def _eig_json(z: complex) -> list[float]:
    return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-12:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _dilation_json(rep: DilationReport, d: int) -> dict:
    return {
        "dimension": d,
        "det": str(rep.det),
        "det_sign": rep.det_sign,
        "is_dilation": rep.is_dilation,
        "rejection_reason": rep.rejection_reason.value if rep.rejection_reason else None,
        "char_poly": [str(c) for c in rep.char_poly.coefficients],
        "approx_eigenvalues": [_eig_json(z) for z in rep.approx_eigenvalues],
    }


def render_json(d: int, rep: DilationReport, ka: KTheoryReport | None,
                check: tuple[bool, bool | None], emit_matrices: bool) -> str:
    out = _dilation_json(rep, d)
    per_degree = []
    if ka is not None:
        for t in ka.per_degree:
            entry = {"n": t.n, "size": t.matrix.rows}
            if emit_matrices:
                entry["matrix"] = [[str(x) for x in r] for r in t.matrix.to_rows()]
            entry["invariant_factors"] = [str(x) for x in t.invariant_factors]
            per_degree.append(entry)
    out["per_degree"] = per_degree
    out["k0"] = _group_json(ka.k0) if ka else None
    out["k1"] = _group_json(ka.k1) if ka else None
    out["extra_free_summand"] = ka.extra_free_summand_location if ka else None
    out["cross_check"] = {"performed": check[0], "passed": check[1]}
    return json.dumps(out, indent=2) + "\n"


def render_text(d: int, rep: DilationReport, ka: KTheoryReport | None,
                check: tuple[bool, bool | None], emit_matrices: bool) -> str:
    lines = [
        f"dimension: {d}",
        f"det: {rep.det} (sign {rep.det_sign:+d})",
        f"characteristic polynomial: {rep.char_poly}",
        "approx eigenvalues (informational): "
        + ", ".join(_fmt_complex(z) for z in rep.approx_eigenvalues),
    ]
    if not rep.is_dilation:
        lines.append(f"dilation: no ({rep.rejection_reason.value})")
        return "\n".join(lines) + "\n"
    lines.append("dilation: yes")
    if ka is not None:
        sign = "-" if ka.eps > 0 else "+"
        lines.append(f"per-degree cokernels of 1 {sign} A_n:")
        for t in ka.per_degree:
            lines.append(f"  n={t.n} size={t.matrix.rows}: {t.cokernel}")
            if emit_matrices:
                lines.extend("    " + " ".join(str(x) for x in r) for r in t.matrix.to_rows())
        lines.append(f"K0 = {ka.k0}")
        lines.append(f"K1 = {ka.k1}")
        if check[0]:
            lines.append(f"cross-check against the B_n form: {'passed' if check[1] else 'FAILED'}")
    return "\n".join(lines) + "\n"


def run_report(cfg: RunConfig, certify_only: bool = False) -> tuple[str, int]:
    """Run the pipeline for one input; returns (stdout text, exit code).

    Raises :class:`ParseError` for unreadable input.
    """
    a = parse_input(_read_source(cfg))
    d = a.rows
    if not certify_only and comb(d, d // 2) > cfg.max_size:
        raise SizeGuardError(d, cfg.max_size)
    rep = certify_dilation(a)
    render = render_json if cfg.fmt == "json" else render_text
    if not rep.is_dilation:
        return render(d, rep, None, (False, None), False), EXIT_REJECTED
    if certify_only:
        return render(d, rep, None, (False, None), False), EXIT_OK
    ka = k_groups(a)
    check = (False, None)
    if cfg.cross_check:
        check = (True, reports_agree(ka, k_groups_via_b(a)))
    code = EXIT_INTERNAL if check == (True, False) else EXIT_OK
    return render(d, rep, ka, check, cfg.emit_matrices), code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dilation-k",
                     description="K-groups of the Cuntz-Li algebra of an integer dilation matrix.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    comp = sub.add_parser("compute", help="certify the matrix and compute K0, K1")
    comp.add_argument("source", nargs="?", help="input file, or - for stdin")
    comp.add_argument("--matrix", dest="inline", help="inline matrix (JSON or text form)")
    comp.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    comp.add_argument("--no-cross-check", dest="cross_check", action="store_false")
    comp.add_argument("--emit-matrices", action="store_true")
    comp.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE,
                      help="cap on binomial(d, d//2) (default %(default)s)")
    comp.add_argument("--level-cap", type=int, default=DEFAULT_LEVEL_CAP,
                      help="level cap for colimit membership queries (default %(default)s)")

    chk = sub.add_parser("check", help="certify the dilation property only")
    chk.add_argument("source", nargs="?", help="input file, or - for stdin")
    chk.add_argument("--matrix", dest="inline", help="inline matrix (JSON or text form)")
    chk.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    return parser


def _config(argv: list[str] | None) -> tuple[RunConfig, bool]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if (args.source is None) == (args.inline is None):
        parser.error("give exactly one of FILE|- or --matrix")
    opts = dict(source=args.source, inline=args.inline, fmt=args.fmt)
    if args.command == "compute":
        if args.max_size < 1 or args.level_cap < 0:
            parser.error("--max-size must be positive and --level-cap nonnegative")
        opts.update(cross_check=args.cross_check, emit_matrices=args.emit_matrices,
                    max_size=args.max_size, level_cap=args.level_cap)
    return RunConfig(**opts), args.command == "check"


def main(argv: list[str] | None = None) -> int:
    try:
        cfg, certify_only = _config(argv)
    except SystemExit as exc:
        return exc.code
    try:
        text, code = run_report(cfg, certify_only=certify_only)
    except ParseError as exc:
        print(f"dilation-k: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"dilation-k: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    sys.stdout.write(text)
    if code == EXIT_INTERNAL:
        print("dilation-k: the two presentations disagree", file=sys.stderr)
    return code
