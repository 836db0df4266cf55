"""Command-line front end.

Subcommands
-----------
info          field parameters, kernel implementation, version
check         unitarity of a filter bank, or factorization of a frame
              filter set, with a machine-readable witness on failure
packets       generate wavelet packets, record the Gram-identity and
              recursion-vs-product cross-checks, optionally write tables
decompose     expand a step function in a packet basis at a given level;
              reports exact reconstruction and the Parseval ratio
frame-bounds  frame bounds from the frequency-domain matrices plus a
              seeded frame-inequality trial run

Global flags come before the subcommand:
--field <preset|file>, --seed <u64>, --format json|csv, --out <dir>.

Exit codes: 0 pass, 1 a mathematical check failed (the report carries a
witness), 2 input/usage error, 3 numeric failure.

Reports are JSON with sorted keys on stdout; CSV applies to exported data
files only.  All randomness flows through a counter-based PRNG seeded by
--seed, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import __version__
from ._kernel import KERNEL_IMPL
from ._mat import conj_transpose, identity, mat_mul, mat_sub, to_text_matrix
from .cyclotomic import CycNum
from .frames import (FrameFilterSet, _real_value, check_factorization,
                     e_matrix, frame_bounds, frame_inequality_test, h_matrix,
                     p_matrix, standard_generators)
from .localfield import PRESETS, FieldParams, preset
from .packets import (FilterBank, PacketSystem, analyze, check_unitary,
                      haar_filterbank, modulation_matrix,
                      packet_fourier_product, synthesize)
from .stepspace import (StepFn, char_on_D, coset_rep, fourier, gram,
                        indicator, inner_product)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit_report(args, report: dict) -> None:
    sys.stdout.write(_canonical_json(report))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "report.json"), "w") as fh:
            fh.write(_canonical_json(report))


def _load_json_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _field_from_arg(value: str) -> FieldParams:
    if value in PRESETS:
        return preset(value)
    if os.path.exists(value):
        try:
            return FieldParams.from_json_dict(_load_json_file(value))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{value} is not a field-parameter file: {exc}")
    raise ValueError(
        f"--field must name a preset ({', '.join(sorted(PRESETS))}) or a "
        f"JSON file; got {value!r}")


def _load_bank(path: str) -> FilterBank:
    try:
        return FilterBank.from_json_dict(_load_json_file(path))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"{path} is not a filter-bank file: {exc}")


def _load_frame(path: str) -> FrameFilterSet:
    try:
        return FrameFilterSet.from_json_dict(_load_json_file(path))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"{path} is not a frame-filter file: {exc}")


def _load_stepfn(path: str) -> StepFn:
    try:
        return StepFn.from_json_dict(_load_json_file(path))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"{path} is not a step-function file: {exc}")


def _gram_witness(fns) -> dict | None:
    """First entry where the Gram matrix deviates from the identity."""
    G = gram(fns)
    p = fns[0].params.p
    one = CycNum.one(p)
    zero = CycNum.zero(p)
    for i, row in enumerate(G):
        for j, v in enumerate(row):
            if v != (one if i == j else zero):
                return {"row": i, "col": j, "value": v.to_text()}
    return None


def _write_stepfn(args, name: str, f: StepFn) -> str:
    if args.format == "csv":
        fname = f"{name}.csv"
        with open(os.path.join(args.out, fname), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["digits", "re", "im"])
            for digits, re, im in f.csv_rows():
                w.writerow([digits, repr(re), repr(im)])
    else:
        fname = f"{name}.json"
        with open(os.path.join(args.out, fname), "w") as fh:
            fh.write(_canonical_json(f.to_json_dict()))
    return fname


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args) -> int:
    params = _field_from_arg(args.field)
    report = {
        "field": params.to_json_dict(),
        "q": params.q,
        "presets": sorted(PRESETS),
        "kernel": KERNEL_IMPL,
        "version": __version__,
    }
    _emit_report(args, report)
    return 0


def cmd_check(args) -> int:
    if (args.bank is None) == (args.frame is None):
        raise ValueError("check needs exactly one of --bank or --frame")
    if args.bank is not None:
        what = args.what or "unitarity"
        if what != "unitarity":
            raise ValueError("--bank supports only --what unitarity")
        bank = _load_bank(args.bank)
        ok, xi = check_unitary(bank)
        witness = None
        if not ok:
            M = modulation_matrix(bank, xi)
            defect = mat_sub(mat_mul(M, conj_transpose(M)),
                             identity(bank.params.p, bank.params.q))
            witness = {"xi": xi.to_text(), "defect": to_text_matrix(defect)}
    else:
        what = args.what or "factorization"
        if what != "factorization":
            raise ValueError("--frame supports only --what factorization")
        ffs = _load_frame(args.frame)
        ok, xi = check_factorization(ffs)
        witness = None
        if not ok:
            defect = mat_sub(h_matrix(ffs, xi),
                             mat_mul(p_matrix(ffs, xi.shift(-1)),
                                     e_matrix(ffs.params, ffs.N, xi)))
            witness = {"xi": xi.to_text(), "defect": to_text_matrix(defect)}
    report = {
        "status": "pass" if ok else "fail",
        "what": what,
        "witness": witness,
    }
    _emit_report(args, report)
    return 0 if ok else 1


def cmd_packets(args) -> int:
    if args.n_max < 0:
        raise ValueError("--n-max must be nonnegative")
    if args.bank is not None:
        bank = _load_bank(args.bank)
        params = bank.params
    else:
        params = _field_from_arg(args.field)
        bank = haar_filterbank(params)
    if args.phi is not None:
        phi = _load_stepfn(args.phi)
        if phi.params != params:
            raise ValueError("--phi field parameters differ from the bank's")
    else:
        phi = indicator(params, 0)
    system = PacketSystem(bank, phi)
    packets = [system.packet(n) for n in range(args.n_max + 1)]

    gram_bad = _gram_witness(packets)
    recursion_bad = None
    for n, wn in enumerate(packets):
        F = fourier(wn)
        for m in range(params.q ** F.window.length):
            xi = coset_rep(params, F.window, m)
            if F.values[m] != packet_fourier_product(system, n, xi):
                recursion_bad = {"n": n, "xi": xi.to_text()}
                break
        if recursion_bad:
            break

    is_haar = bank == haar_filterbank(params) and phi == indicator(params, 0)
    walsh = None
    if is_haar:
        walsh = all(wn == char_on_D(params, n) for n, wn in enumerate(packets))

    files = []
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for n, wn in enumerate(packets):
            files.append(_write_stepfn(args, f"omega_{n:03d}", wn))
    report = {
        "n_max": args.n_max,
        "gram_identity": gram_bad is None,
        "gram_witness": gram_bad,
        "recursion_product_agree": recursion_bad is None,
        "recursion_witness": recursion_bad,
        "walsh_identity": walsh,
        "files": files,
    }
    _emit_report(args, report)
    ok = gram_bad is None and recursion_bad is None and walsh is not False
    return 0 if ok else 1


def cmd_decompose(args) -> int:
    if args.level < 0:
        raise ValueError("--level must be nonnegative")
    f = _load_stepfn(args.input)
    bank = _load_bank(args.bank) if args.bank else haar_filterbank(f.params)
    if bank.params != f.params:
        raise ValueError("--input field parameters differ from the bank's")
    system = PacketSystem(bank, indicator(f.params, 0))
    coeffs = analyze(system, f, args.level, args.translate_bound)
    recon = synthesize(system, coeffs, args.level)
    energy = CycNum.zero(f.params.p)
    for c in coeffs.values():
        if not c.is_zero:
            energy = energy + c.abs_sq()
    norm = inner_product(f, f)
    if norm.is_zero:
        ratio = 1.0 if energy.is_zero else float("inf")
    else:
        ratio = _real_value(energy) / _real_value(norm)
    rows = [(n, k, coeffs[(n, k)].to_text()) for (n, k) in sorted(coeffs)]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "coefficients.csv"), "w",
                  newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "k", "value"])
            w.writerows(rows)
    report = {
        "level": args.level,
        "translate_bound": max((k for (_, k) in coeffs), default=-1) + 1,
        "coefficient_count": len(coeffs),
        "nonzero_coefficients": sum(1 for c in coeffs.values() if not c.is_zero),
        "reconstruction_exact": recon == f,
        "parseval_ratio": ratio,
        "coefficients": [list(r) for r in rows],
    }
    _emit_report(args, report)
    return 0


def cmd_frame_bounds(args) -> int:
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    if args.level < 1:
        raise ValueError("--level must be at least 1")
    ffs = _load_frame(args.frame)
    gens = standard_generators(ffs.params, ffs.N)
    report = frame_inequality_test(ffs, gens, args.level, args.trials,
                                   args.seed)
    _, _, table = frame_bounds(ffs)
    report["per_coset"] = [
        {"xi": xi.to_text(), "eigenvalues": evs} for xi, evs in table]
    violations = report["violations"]
    report["violations"] = violations if violations else 0
    _emit_report(args, report)
    return 1 if violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfwp",
        description="Exact wavelet packets and frame packets on the field "
                    "of formal Laurent series over GF(q).")
    parser.add_argument("--field", default="q2", metavar="PRESET|FILE",
                        help="field parameters: preset name "
                             f"({', '.join(sorted(PRESETS))}) or JSON file "
                             "(default: q2)")
    parser.add_argument("--seed", type=int, default=0, metavar="U64",
                        help="seed for all randomized trials (default: 0)")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="format for exported data files (reports are "
                             "always JSON)")
    parser.add_argument("--out", metavar="DIR", default=None,
                        help="directory for report and data files")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="show field parameters and build info")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", help="verify a filter bank or frame filter set")
    p.add_argument("--bank", metavar="FILE", help="filter-bank JSON file")
    p.add_argument("--frame", metavar="FILE", help="frame-filter JSON file")
    p.add_argument("--what", choices=("unitarity", "factorization"),
                   default=None,
                   help="check to run (default: unitarity for --bank, "
                        "factorization for --frame)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("packets", help="generate and verify wavelet packets")
    p.add_argument("--n-max", type=int, required=True, metavar="N",
                   help="largest packet index to generate")
    p.add_argument("--bank", metavar="FILE",
                   help="filter-bank JSON file (default: character bank "
                        "over --field)")
    p.add_argument("--phi", metavar="FILE",
                   help="scaling-function JSON file (default: indicator of "
                        "the ring of integers)")
    p.set_defaults(func=cmd_packets)

    p = sub.add_parser("decompose",
                       help="expand a step function in a packet basis")
    p.add_argument("--input", required=True, metavar="FILE",
                   help="step-function JSON file")
    p.add_argument("--bank", metavar="FILE",
                   help="filter-bank JSON file (default: character bank)")
    p.add_argument("--level", type=int, required=True, metavar="J",
                   help="packet level: uses indices n < q^J")
    p.add_argument("--translate-bound", type=int, default=None, metavar="B",
                   help="translates per packet (default: computed from the "
                        "windows; too small is an error naming the bound)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("frame-bounds",
                       help="frame bounds and frame-inequality trials")
    p.add_argument("--frame", required=True, metavar="FILE",
                   help="frame-filter JSON file")
    p.add_argument("--level", type=int, default=1, metavar="J",
                   help="inequality level j (default: 1)")
    p.add_argument("--trials", type=int, default=10, metavar="T",
                   help="number of random test functions (default: 10)")
    p.set_defaults(func=cmd_frame_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"lfwp: error: {exc}\n")
        return 2
    except ArithmeticError as exc:
        sys.stderr.write(f"lfwp: numeric failure: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
