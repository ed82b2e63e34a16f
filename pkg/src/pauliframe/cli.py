"""Command-line interface: ingest a Pauli-set file, run the pipeline,
emit a machine-readable report.

Input format: one signed Pauli string per line, '#' starts a comment,
blank lines ignored; the qubit count is inferred from the first string.
Exact dyadic quantities are serialized as {"num": p, "den": q}; floats
as plain JSON numbers.  Output is byte-identical for identical
(input, flags, seed).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import lattice, oracle
from .diagonalize import (
    NonCommutingSetError,
    simultaneous_diagonalize,
    verify_diagonalization,
)
from .distribution import (
    SupportTooLargeError,
    build_distribution,
    moments,
    support_points,
)
from .pauli import PauliParseError, check_commuting_set, parse_pauli
from .tableau import tableau_from_circuit

EXIT_PARSE = 2
EXIT_NONCOMMUTING = 3
EXIT_GUARD = 4

SCHEMA_VERSION = 1


class InputFileError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def load_pauli_file(path: str):
    """Parse the input file into a list of PauliStrings."""
    ops = []
    n = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                op = parse_pauli(text, n_expected=n)
            except PauliParseError as exc:
                raise InputFileError(lineno, str(exc)) from exc
            if n is None:
                n = op.n
            ops.append(op)
    if not ops:
        raise InputFileError(0, "no Pauli strings in input")
    return ops


def _rational(value) -> dict:
    f = Fraction(value)
    return {"num": f.numerator, "den": f.denominator}


def _bitstring(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def _gate_json(gate) -> dict:
    if len(gate.qubits) == 1:
        return {"g": gate.name, "q": gate.qubits[0]}
    return {"g": gate.name, "c": gate.qubits[0], "t": gate.qubits[1]}


def _analyze(ops):
    """Common pipeline: diagonalize, tableau, distribution, moments."""
    diag = simultaneous_diagonalize(ops)
    tab = tableau_from_circuit(diag.circuit)
    sup = tab.extract_support()
    dist = build_distribution(diag, sup)
    mom = moments(dist)
    return diag, sup, dist, mom


def run_report(
    ops,
    t_values=(),
    exact=False,
    mc_samples=0,
    seed=0,
) -> dict:
    """Full analysis as one JSON-ready document."""
    diag, sup, dist, mom = _analyze(ops)
    pts = support_points(dist)
    vol = lattice.lattice_volume(pts)
    degenerate = vol is None or mom.det_cov == 0
    doc = {
        "schema": SCHEMA_VERSION,
        "n": ops[0].n,
        "N": len(ops),
        "commuting": True,
        "W": [_gate_json(g) for g in diag.circuit.gates],
        "A": [_bitstring(row) for row in diag.A],
        "s": _bitstring(diag.s),
        "R": [_bitstring(col) for col in sup.R.T],
        "t_vec": _bitstring(sup.t),
        "r": sup.r,
        "rank_AR": dist.rho,
        "support_size": dist.support_size,
        "pmf_value": _rational(dist.pmf_value),
        "mean": [_rational(int(v)) for v in mom.mean],
        "covariance": [[_rational(int(v)) for v in row] for row in mom.covariance],
        "det_cov": _rational(mom.det_cov),
        "V_U": "degenerate" if degenerate else vol,
        "clt_coefficient": (
            None
            if degenerate
            else lattice.clt_coefficient(vol, mom.det_cov, dist.N)
        ),
        "values": [],
    }
    for t in t_values:
        entry = {"t": t}
        entry["clt"] = (
            None
            if degenerate
            else lattice.clt_frame_potential(vol, mom.det_cov, dist.N, t)
        )
        if exact:
            entry["exact"] = lattice.exact_frame_potential(dist, t)
        if mc_samples > 0:
            est, err = oracle.mc_frame_potential(ops, t, mc_samples, seed)
            entry["mc"] = est
            entry["mc_stderr"] = err
        doc["values"].append(entry)
    return doc


def run_verify(ops, seed=0) -> list[str]:
    """Oracle cross-checks; returns the list of failure descriptions."""
    failures = []
    diag, sup, dist, mom = _analyze(ops)
    n = ops[0].n
    wm = oracle.unitary_from_circuit(diag.circuit)
    ok, bad = verify_diagonalization(ops, diag)
    if not ok:
        failures.append(f"symplectic diagonalization check failed at operator {bad}")
    for j, op in enumerate(ops):
        try:
            dd = oracle.dense_diagonal(op, diag.circuit, wm)
        except ValueError as exc:
            failures.append(f"operator {j}: {exc}")
            continue
        expected = (1 - 2 * (oracle.bits_matrix(n) @ diag.A[j].astype(np.int64) % 2)) * (
            -1 if diag.s[j] else 1
        )
        if not np.array_equal(dd, expected):
            failures.append(f"operator {j}: dense diagonal disagrees with (A, s)")
    state = oracle.dense_state_from_circuit(diag.circuit)
    probs = oracle.amplitudes_squared(state)
    dense_support = {x for x in range(2**n) if probs[x] > 1e-12}
    coset = set()
    for z in range(2**sup.r):
        u = sup.t.copy()
        for i in range(sup.r):
            if (z >> i) & 1:
                u = u ^ sup.R[:, i]
        coset.add(oracle.bits_to_index(u))
    if coset != dense_support:
        failures.append("tableau support coset differs from dense amplitude support")
    else:
        for x in dense_support:
            if abs(probs[x] - 2.0**-sup.r) > 1e-10:
                failures.append(f"amplitude at {x} is not 2^-r")
                break
    brute = oracle.brute_pmf_K(ops, diag, state)
    built = {
        tuple(int(v) for v in p): dist.pmf_value for p in support_points(dist)
    }
    if brute != built:
        failures.append("brute-force pmf differs from the exact distribution")
    return failures


def _format_text(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        if key == "values":
            for entry in value:
                parts = [f"t={entry['t']}"]
                for k in ("clt", "exact", "mc", "mc_stderr"):
                    if k in entry and entry[k] is not None:
                        parts.append(f"{k}={entry[k]!r}")
                lines.append("value: " + " ".join(parts))
        elif isinstance(value, dict) and set(value) == {"num", "den"}:
            lines.append(f"{key}: {value['num']}/{value['den']}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        print(_format_text(doc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pauliframe",
        description="Exact spectral distribution and frame potential of "
        "commuting Pauli circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", help="file with one Pauli string per line")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument(
            "--format", choices=("json", "text"), default=None,
            help="output format (overrides --json)",
        )

    p_report = sub.add_parser("report", help="full pipeline report")
    add_common(p_report)
    p_report.add_argument(
        "--t", type=int, action="append", default=None, metavar="T",
        help="frame-potential order (repeatable)",
    )
    p_report.add_argument("--exact", action="store_true",
                          help="also compute the exact frame potential")
    p_report.add_argument("--mc-samples", type=int, default=0,
                          help="Monte-Carlo samples per t (0 disables)")

    add_common(sub.add_parser("check", help="commutation check only"))
    add_common(sub.add_parser("diagonalize", help="emit W, A, s"))
    add_common(sub.add_parser("distribution", help="emit the law of K"))

    p_fp = sub.add_parser("frame-potential", help="emit V_U and F values")
    add_common(p_fp)
    p_fp.add_argument("--t", type=int, action="append", default=None, metavar="T")
    p_fp.add_argument("--exact", action="store_true")
    p_fp.add_argument("--mc-samples", type=int, default=0)

    add_common(sub.add_parser("verify", help="run oracle cross-checks"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = args.format != "text"  # JSON is the default; --json is a no-op alias

    try:
        ops = load_pauli_file(args.input)
    except InputFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        if args.command == "check":
            bad = check_commuting_set(ops)
            doc = {
                "schema": SCHEMA_VERSION,
                "n": ops[0].n,
                "N": len(ops),
                "commuting": bad is None,
                "violating_pair": list(bad) if bad else None,
            }
            _emit(doc, as_json)
            return 0 if bad is None else EXIT_NONCOMMUTING

        if args.command == "verify":
            if ops[0].n > oracle.MAX_QUBITS:
                print("verify requires the dense oracle (n <= 10)", file=sys.stderr)
                return EXIT_GUARD
            failures = run_verify(ops, seed=args.seed)
            doc = {
                "schema": SCHEMA_VERSION,
                "n": ops[0].n,
                "N": len(ops),
                "passed": not failures,
                "failures": failures,
            }
            _emit(doc, as_json)
            return 0 if not failures else 1

        if args.command == "diagonalize":
            diag = simultaneous_diagonalize(ops)
            doc = {
                "schema": SCHEMA_VERSION,
                "n": ops[0].n,
                "N": len(ops),
                "W": [_gate_json(g) for g in diag.circuit.gates],
                "A": [_bitstring(row) for row in diag.A],
                "s": _bitstring(diag.s),
            }
            _emit(doc, as_json)
            return 0

        if args.command == "distribution":
            diag, sup, dist, mom = _analyze(ops)
            doc = {
                "schema": SCHEMA_VERSION,
                "n": ops[0].n,
                "N": len(ops),
                "R": [_bitstring(col) for col in sup.R.T],
                "t_vec": _bitstring(sup.t),
                "r": sup.r,
                "rank_AR": dist.rho,
                "support_size": dist.support_size,
                "pmf_value": _rational(dist.pmf_value),
                "mean": [_rational(int(v)) for v in mom.mean],
                "covariance": [
                    [_rational(int(v)) for v in row] for row in mom.covariance
                ],
                "det_cov": _rational(mom.det_cov),
                "degenerate": mom.degenerate,
            }
            _emit(doc, as_json)
            return 0

        # report / frame-potential share the full pipeline.
        t_values = args.t if args.t else [1]
        doc = run_report(
            ops,
            t_values=t_values,
            exact=args.exact,
            mc_samples=args.mc_samples,
            seed=args.seed,
        )
        if args.command == "frame-potential":
            keep = (
                "schema", "n", "N", "support_size", "det_cov",
                "V_U", "clt_coefficient", "values",
            )
            doc = {k: doc[k] for k in keep}
        _emit(doc, as_json)
        return 0

    except NonCommutingSetError as exc:
        print(f"non-commuting input: pair {exc.pair}", file=sys.stderr)
        return EXIT_NONCOMMUTING
    except (
        SupportTooLargeError,
        oracle.OracleGuardError,
        lattice.QuadratureCapError,
    ) as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
