"""Command line front end: surface spec in, interval Gram matrix out.

Input is a JSON object::

    {"genus": 3,
     "qpieces": [{"beta": 4, "curve": 1.2, "twist": 0.2, "curve_role": "i",
                  "pair": [1, 2]}, ...],
     "options": {"tol": 1e-8, "trim": null}}

``pair`` (1-based, optional) places the piece's ``alpha_i`` and
``alpha_tau`` in the basis; the default is consecutive indices.  Command line
flags override ``options``.

Exit codes: 0 success, 2 invalid input, 3 geometrically infeasible data,
4 a numerical method did not converge.
"""

import argparse
import csv
import json
import math
import os
import sys
import warnings

from .errors import ConvergenceError, DomainError, GeometryError, ValidationError
from .gram import SurfaceSpec, assemble_with_pieces
from .qpiece import FenchelNielsenTriple
from .tube import write_boundary_csv

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GEOMETRY = 3
EXIT_CONVERGENCE = 4

PIECE_KEYS = {"beta", "curve", "twist", "curve_role", "pair"}


def _number(obj, key, where, default=None):
    if key not in obj:
        if default is not None:
            return default
        raise ValidationError(f"{where}: missing '{key}'")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ValidationError(f"{where}: '{key}' must be a finite number, got {v!r}")
    return float(v)


def parse_spec(data):
    """``(SurfaceSpec, options)`` from the decoded JSON document."""
    if not isinstance(data, dict):
        raise ValidationError("top level must be a JSON object")
    genus = data.get("genus")
    if isinstance(genus, bool) or not isinstance(genus, int):
        raise ValidationError(f"'genus' must be an integer, got {genus!r}")
    raw = data.get("qpieces")
    if not isinstance(raw, list):
        raise ValidationError("'qpieces' must be a list")
    pieces, pairs = [], []
    for k, p in enumerate(raw):
        where = f"Q-piece {k}"
        if not isinstance(p, dict):
            raise ValidationError(f"{where}: expected an object")
        extra = set(p) - PIECE_KEYS
        if extra:
            raise ValidationError(f"{where}: unknown keys {sorted(extra)}")
        role = p.get("curve_role", "i")
        try:
            pieces.append(
                FenchelNielsenTriple(
                    beta=_number(p, "beta", where),
                    curve=_number(p, "curve", where),
                    twist=_number(p, "twist", where, 0.0),
                    role=role,
                )
            )
        except ValidationError as exc:
            raise ValidationError(f"{where}: {exc}") from exc
        if "pair" in p:
            pr = p["pair"]
            if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in pr)):
                raise ValidationError(f"{where}: 'pair' must be two integers, got {pr!r}")
            pairs.append((pr[0] - 1, pr[1] - 1))
    if pairs and len(pairs) != len(pieces):
        raise ValidationError("'pair' must be given for every Q-piece or for none")
    spec = SurfaceSpec(genus, tuple(pieces), tuple(pairs) if pairs else None)
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ValidationError("'options' must be an object")
    return spec, options


def _parse_grid(text):
    try:
        nt, ns = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NT,NS, got {text!r}") from None
    return nt, ns


def build_parser():
    ap = argparse.ArgumentParser(
        prog="periodgram",
        description="Certified interval bounds on the period Gram matrix of a surface built from Q-pieces.",
    )
    ap.add_argument("input", help="surface spec (JSON)")
    ap.add_argument("-o", "--output", help="write JSON here instead of stdout")
    ap.add_argument("--csv", metavar="PATH", help="also dump the matrix as CSV")
    ap.add_argument("--debug-tubes", metavar="DIR", help="dump tube boundary samples as CSV files")
    ap.add_argument("--tol", type=float, default=None, help="quadrature tolerance (default 1e-8)")
    ap.add_argument("--trim", type=float, default=None,
                    help="corner trim for every tube (default: optimised per tube)")
    ap.add_argument("--oracle-check", metavar="NT,NS", type=_parse_grid,
                    help="compare every tube against the discrete capacity on an NT x NS grid")
    return ap


def _oracle_report(pbs, grid):
    from .oracle import discrete_capacity

    nt, ns = grid
    rows = []
    for k, pb in enumerate(pbs):
        for which in ("i", "tau", "diag"):
            te = pb.tubes[which]
            e = discrete_capacity(te.annulus, nt, ns)
            inside = te.capacity.lower <= e <= te.capacity.upper
            rows.append({
                "piece": k,
                "tube": which,
                "discrete": e,
                "lower": te.capacity.lower,
                "upper": te.capacity.upper,
                "inside": inside,
            })
    return {"grid": [nt, ns], "tubes": rows, "violations": sum(not r["inside"] for r in rows)}


def _write_csv(M, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j", "lower", "upper", "quality"])
        for i in range(M.size):
            for j in range(M.size):
                e = M[i, j]
                w.writerow([i + 1, j + 1, repr(e.lower), repr(e.upper), M.quality_of(i, j)])


def compute(data, tol=None, trim=None, oracle_grid=None, debug_dir=None):
    """Run the pipeline on a decoded spec; returns ``(document, matrix)``."""
    spec, options = parse_spec(data)
    if tol is None:
        tol = _number(options, "tol", "options", 1e-8) if "tol" in options else 1e-8
    if trim is None and options.get("trim") is not None:
        trim = _number(options, "trim", "options")
    if not tol > 0:
        raise ValidationError(f"tol must be positive, got {tol!r}")
    if trim is not None and not trim >= 0:
        raise ValidationError(f"trim must be non-negative, got {trim!r}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        M, pbs = assemble_with_pieces(spec, tol, trim)
    messages = sorted({str(w.message) for w in caught})
    doc = {
        "genus": spec.genus,
        "size": M.size,
        "tol": tol,
        "trim": trim,
        "pairs": [[p + 1, q + 1] for p, q in spec.pairs],
        "matrix": [
            [
                {"lower": M[i, j].lower, "upper": M[i, j].upper, "quality": M.quality_of(i, j)}
                for j in range(M.size)
            ]
            for i in range(M.size)
        ],
        "pieces": M.diagnostics["pieces"],
        "warnings": messages,
    }
    if oracle_grid is not None:
        doc["oracle_check"] = _oracle_report(pbs, oracle_grid)
    if debug_dir is not None:
        os.makedirs(debug_dir, exist_ok=True)
        for k, pb in enumerate(pbs):
            for which, te in pb.tubes.items():
                write_boundary_csv(te.annulus, os.path.join(debug_dir, f"tube_{k}_{which}.csv"))
    return doc, M


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def run(argv=None):
    """Entry point returning the exit code."""
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ValidationError(f"cannot read {args.input}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{args.input} is not valid JSON: {exc}") from exc
        doc, M = compute(data, args.tol, args.trim, args.oracle_check, args.debug_tubes)
    except GeometryError as exc:
        print(f"error: geometrically infeasible: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except ConvergenceError as exc:
        print(f"error: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValidationError, DomainError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    for msg in doc["warnings"]:
        print(f"warning: {msg}", file=sys.stderr)
    text = dumps(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        _write_csv(M, args.csv)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
