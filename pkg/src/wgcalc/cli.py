"""Command-line surface.

Four subcommands: ``wg`` prints Weingarten values, ``moment`` prints symbolic
moment formulas, ``exact`` evaluates the inverse-model formulas for given
matrices, and ``verify`` runs a Monte Carlo check against the exact engine.

Conventions:
- stdout carries exactly one JSON document (or its CSV flattening with
  ``--format csv``); diagnostics go to stderr;
- rational values are printed as reduced "num/den" strings, never floats;
- exit codes: 0 success, 2 usage or parse error, 3 capacity guard,
  4 validity-range violation, 5 failed verification tolerance;
- index sequences are comma lists (``--i 1,2``), or row/column pairs can be
  given at once as ``--pairs "1,1;2,3"``;
- the environment variable WGCALC_MAX_K raises the enumeration guards.

Matrix files are JSON documents {"kind": "rational"|"real"|"complex",
"rows": R, "cols": C, "entries": [[...]]} with "num/den" strings, numbers,
or [re, im] pairs as entries respectively.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .combinatorics import Partition
from .errors import CapacityError, ValidityError
from .moments import (
    ScaleMatrix,
    ShapeMatrix,
    compound_wishart_inv_c,
    compound_wishart_inv_r,
    conj_invariant_moment_o,
    conj_invariant_moment_u,
    ginibre_pinv_moment_c,
    ginibre_pinv_moment_r,
    inv_wishart_trace_o,
    inv_wishart_trace_u,
    lr_invariant_moment_o,
    lr_invariant_moment_u,
)
from .montecarlo import MODEL_NAMES, estimate_moment
from .weingarten import (
    frac_str,
    wg_orthogonal,
    wg_orthogonal_double,
    wg_unitary,
    wg_unitary_double,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_VALIDITY = 4
EXIT_VERIFY_FAILED = 5


# ---------------------------------------------------------------------------
# parsing helpers


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r} ({exc})") from None


def parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"not a comma list of integers: {text!r}") from None


def parse_partition(text: str) -> Partition:
    parts = parse_indices(text)
    try:
        return Partition(parts)
    except ValueError:
        return Partition.of(parts)


def parse_pairs(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split "1,1;2,3" into the row sequence (1,2) and column sequence (1,3)."""
    rows, cols = [], []
    for item in text.split(";"):
        pair = parse_indices(item)
        if len(pair) != 2:
            raise ValueError(f"each pair needs exactly two indices: {item!r}")
        rows.append(pair[0])
        cols.append(pair[1])
    return tuple(rows), tuple(cols)


def load_matrix_file(path: str):
    """Parse a matrix file; returns (kind, entries) with entries either
    nested Fractions (rational) or a nested list of floats/complex."""
    with open(path, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: matrix file must be a JSON object")
    kind = doc.get("kind")
    if kind not in ("rational", "real", "complex"):
        raise ValueError(f"{path}: kind must be rational, real or complex")
    entries = doc.get("entries")
    rows, cols = doc.get("rows"), doc.get("cols")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ValueError(f"{path}: entries must be a list of {rows} rows")
    parsed = []
    for row in entries:
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError(f"{path}: every row must have {cols} entries")
        if kind == "rational":
            parsed.append([parse_rational(str(x)) for x in row])
        elif kind == "real":
            parsed.append([float(x) for x in row])
        else:
            parsed.append([complex(float(x[0]), float(x[1])) for x in row])
    return kind, parsed


def load_scale_matrix(path: str) -> ScaleMatrix:
    kind, entries = load_matrix_file(path)
    if kind == "rational":
        return ScaleMatrix.from_rational(entries)
    return ScaleMatrix.from_numeric(entries)


def load_shape_matrix(path: str) -> ShapeMatrix:
    kind, entries = load_matrix_file(path)
    if kind == "rational":
        return ShapeMatrix.from_rational(entries)
    return ShapeMatrix.from_numeric(entries)


def _value_doc(value):
    """JSON form of an exact or numeric scalar."""
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return float(value)


# ---------------------------------------------------------------------------
# output


def _render(doc, fmt: str) -> str:
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for key, value in _csv_rows(doc, ""):
            writer.writerow([key, value])
        return buffer.getvalue().rstrip("\n")
    return json.dumps(doc)


def _csv_rows(doc, prefix: str):
    if isinstance(doc, dict):
        for key, value in doc.items():
            yield from _csv_rows(value, f"{prefix}{key}.")
    elif isinstance(doc, list):
        if all(not isinstance(x, (dict, list)) for x in doc):
            yield prefix.rstrip("."), ";".join(str(x) for x in doc)
        else:
            for idx, value in enumerate(doc):
                yield from _csv_rows(value, f"{prefix}{idx}.")
    else:
        yield (prefix.rstrip(".") or "value"), doc


# ---------------------------------------------------------------------------
# subcommands


def _cmd_wg(args) -> tuple[object, int]:
    z = parse_rational(args.z)
    if args.ensemble == "u":
        if args.w is None:
            fn = wg_unitary(args.k, z)
        else:
            fn = wg_unitary_double(args.k, z, parse_rational(args.w))
    else:
        if args.w is None:
            fn = wg_orthogonal(args.k, z)
        else:
            fn = wg_orthogonal_double(args.k, z, parse_rational(args.w))
    if args.type is not None:
        mu = parse_partition(args.type)
        if mu.weight != args.k:
            raise ValueError(f"partition {mu} is not a partition of k={args.k}")
        return frac_str(fn.value(mu)), EXIT_OK
    return fn.to_json_dict(), EXIT_OK


def _indices(args, name: str, flag: str) -> tuple[int, ...]:
    value = getattr(args, name, None)
    if value is None:
        raise ValueError(f"missing required index flag {flag}")
    return parse_indices(value)


def _apply_pairs(args) -> None:
    if getattr(args, "pairs", None) is not None:
        rows, cols = parse_pairs(args.pairs)
        args.i = ",".join(map(str, rows))
        args.j = ",".join(map(str, cols))


def _cmd_moment(args) -> tuple[object, int]:
    _apply_pairs(args)
    if args.op == "conj-u":
        formula = conj_invariant_moment_u(
            _indices(args, "i", "--i"), _indices(args, "j", "--j"), args.n
        )
    elif args.op == "conj-o":
        formula = conj_invariant_moment_o(_indices(args, "i", "--i"), args.n)
    elif args.op == "lr-u":
        if args.p is None:
            raise ValueError("lr-u needs --p")
        formula = lr_invariant_moment_u(
            _indices(args, "i", "--i"),
            _indices(args, "j", "--j"),
            _indices(args, "iprime", "--iprime"),
            _indices(args, "jprime", "--jprime"),
            args.n,
            args.p,
        )
    else:
        if args.p is None:
            raise ValueError("lr-o needs --p")
        formula = lr_invariant_moment_o(
            _indices(args, "i", "--i"), _indices(args, "j", "--j"), args.n, args.p
        )
    return formula.to_json_dict(), EXIT_OK


def _cmd_exact(args) -> tuple[object, int]:
    _apply_pairs(args)
    sigma = load_scale_matrix(args.sigma)
    if args.op in ("inv-wishart-c", "inv-wishart-r"):
        if args.type is None:
            raise ValueError("inverse Wishart trace moments need --type")
        mu = parse_partition(args.type)
        # the sums run over all of S_k (resp. all pairings), so power traces
        # up to the full weight are needed
        traces = sigma.inv_power_traces(max(mu.weight, 1))
        if args.op == "inv-wishart-c":
            value = inv_wishart_trace_u(mu, traces, args.n, args.p)
        else:
            value = inv_wishart_trace_o(mu, traces, args.n, args.p)
    elif args.op == "ginibre-pinv-c":
        value = ginibre_pinv_moment_c(
            _indices(args, "i", "--i"),
            _indices(args, "j", "--j"),
            _indices(args, "iprime", "--iprime"),
            _indices(args, "jprime", "--jprime"),
            sigma,
            args.n,
            args.p,
        )
    elif args.op == "ginibre-pinv-r":
        value = ginibre_pinv_moment_r(
            _indices(args, "i", "--i"), _indices(args, "j", "--j"),
            sigma, args.n, args.p,
        )
    else:
        if args.b is None:
            raise ValueError("compound inverse moments need --b")
        shape = load_shape_matrix(args.b)
        if args.op == "compound-inv-c":
            value = compound_wishart_inv_c(
                _indices(args, "i", "--i"), _indices(args, "j", "--j"),
                sigma, shape, args.n, args.p,
            )
        else:
            value = compound_wishart_inv_r(
                _indices(args, "i", "--i"), sigma, shape, args.n, args.p
            )
    return _value_doc(value), EXIT_OK


def _parse_expect(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    parts = text.split(",")
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    return float(text)


def _cmd_verify(args) -> tuple[object, int]:
    _apply_pairs(args)
    params: dict = {"n": args.n}
    model = args.model
    if model in ("ginibre-pinv-c", "ginibre-pinv-r", "inv-wishart-c",
                 "inv-wishart-r", "compound-inv-c", "compound-inv-r"):
        if args.p is None or args.sigma is None:
            raise ValueError(f"{model} needs --p and --sigma")
        params["p"] = args.p
        params["sigma"] = load_scale_matrix(args.sigma)
    if model in ("compound-inv-c", "compound-inv-r"):
        if args.b is None:
            raise ValueError(f"{model} needs --b")
        params["b"] = load_shape_matrix(args.b)
    if model in ("inv-wishart-c", "inv-wishart-r"):
        if args.type is None:
            raise ValueError(f"{model} needs --type")
        params["pi"] = parse_partition(args.type)
    else:
        params["i"] = _indices(args, "i", "--i")
        if model not in ("compound-inv-r",):
            params["j"] = _indices(args, "j", "--j")
    if model in ("haar-u", "ginibre-pinv-c"):
        params["i_prime"] = _indices(args, "iprime", "--iprime")
        params["j_prime"] = _indices(args, "jprime", "--jprime")
    if model == "conj-invariant-demo":
        if args.diag is None:
            raise ValueError("conj-invariant-demo needs --diag")
        params["diag"] = [parse_rational(x) for x in args.diag.split(",")]
    exact_override = _parse_expect(args.expect) if args.expect is not None else None
    result = estimate_moment(
        model,
        num_samples=args.samples,
        seed=args.seed,
        chunk_size=args.chunk_size,
        threads=args.threads,
        exact_override=exact_override,
        **params,
    )
    doc = result.to_json_dict()
    doc["tolerance_z"] = args.tolerance_z
    passed = result.z_score is not None and result.z_score <= args.tolerance_z
    doc["passed"] = passed
    return doc, EXIT_OK if passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# parser


def _add_index_flags(parser, prime: bool = True) -> None:
    parser.add_argument("--i", help="comma list of indices")
    parser.add_argument("--j", help="comma list of indices")
    if prime:
        parser.add_argument("--iprime", help="comma list of indices")
        parser.add_argument("--jprime", help="comma list of indices")
    parser.add_argument(
        "--pairs",
        help='row/column pairs "i1,j1;i2,j2;..." (fills --i and --j)',
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgcalc",
        description="Exact Weingarten calculus and invariant-matrix moment engine",
    )
    parser.add_argument(
        "--format", choices=("json", "csv"), default="json",
        help="output format (default json)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    wg = sub.add_parser("wg", help="Weingarten function values")
    wg.add_argument("--ensemble", choices=("u", "o"), required=True)
    wg.add_argument("--k", type=int, required=True)
    wg.add_argument(
        "--z", required=True,
        help='rational, e.g. "5" or "-3/2" (negative values as --z=-3/2)',
    )
    wg.add_argument("--w", help="second parameter for the two-parameter function")
    wg.add_argument("--type", help='partition as a comma list, e.g. "2,1"')
    wg.set_defaults(handler=_cmd_wg)

    moment = sub.add_parser("moment", help="symbolic moment formulas")
    moment.add_argument("op", choices=("conj-u", "conj-o", "lr-u", "lr-o"))
    moment.add_argument("--n", type=int, required=True)
    moment.add_argument("--p", type=int)
    _add_index_flags(moment)
    moment.set_defaults(handler=_cmd_moment)

    exact = sub.add_parser("exact", help="exact inverse-model moment values")
    exact.add_argument(
        "op",
        choices=(
            "inv-wishart-c", "inv-wishart-r",
            "ginibre-pinv-c", "ginibre-pinv-r",
            "compound-inv-c", "compound-inv-r",
        ),
    )
    exact.add_argument("--sigma", required=True, help="scale matrix file")
    exact.add_argument("--b", help="shape matrix file")
    exact.add_argument("--n", type=int, required=True)
    exact.add_argument("--p", type=int, required=True)
    exact.add_argument("--type", help="partition for trace moments")
    _add_index_flags(exact)
    exact.set_defaults(handler=_cmd_exact)

    verify = sub.add_parser("verify", help="Monte Carlo verification run")
    verify.add_argument("--model", choices=MODEL_NAMES, required=True)
    verify.add_argument("--samples", type=int, required=True)
    verify.add_argument("--seed", type=int, required=True)
    verify.add_argument("--chunk-size", type=int, default=4096)
    verify.add_argument("--threads", type=int, default=1)
    verify.add_argument("--tolerance-z", type=float, default=5.0)
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--p", type=int)
    verify.add_argument("--sigma", help="scale matrix file")
    verify.add_argument("--b", help="shape matrix file")
    verify.add_argument("--type", help="partition for trace moments")
    verify.add_argument("--diag", help="comma list of rational eigenvalues")
    verify.add_argument(
        "--expect",
        help="override the exact reference (harness self-test)",
    )
    _add_index_flags(verify)
    verify.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.handler(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValidityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(_render(doc, args.format))
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
