"""Command line driver: parse a pencil file, run stages, emit a report.

Commands: analyze (all applicable stages), gm, ks, ranks, pairing,
monodromy, independence, decompose.  Exit codes: 0 success, 2 input error,
3 numeric test inconclusive, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .analytic import algebra_dimension, first_kind_independence, monodromy
from .derham import (
    all_connection_matrices,
    curvature,
    denominators_regular,
    gauss_manin_matrix,
    kodaira_spencer_block,
    validate_pencil,
)
from .errors import InconclusiveError, InvariantError, ParseError, PencilError
from .exact.linalg import RatMatrix, det, rank, rank_specialized
from .exact.ratfun import MultiRational
from .pairing import (
    cup_matrix,
    horizontality_residual,
    standard_symplectic,
    symplectify,
    transform_connection,
)
from .pencilfile import load_pencil_file, parse_polynomial
from .ranks import endo_decompose, first_kind_free, rank_report
from .report import complex_matrix, complex_pair, matrix_strings, render, write

COMMANDS = (
    "analyze",
    "gm",
    "ks",
    "ranks",
    "pairing",
    "monodromy",
    "independence",
    "decompose",
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="abelpencil",
        description="Exact connection matrices, rank invariants and certified "
        "monodromy for hyperelliptic pencils.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", help="pencil definition file")
    parser.add_argument("--out", metavar="PATH", default=None)
    parser.add_argument("--tol", type=float, default=None, help="step tolerance (default 1e-10)")
    parser.add_argument("--truncation", type=int, default=None)
    parser.add_argument("--degree-bound", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--stage", default=None, help="restrict analyze to one stage")
    args = parser.parse_args(argv)
    report, code = run(args.command, args.file, args)
    write(report, args.out)
    return code


def run(command: str, path: str, args=None) -> tuple[dict, int]:
    report = {
        "tool": {"name": "abelpencil", "version": __version__},
        "stages": {},
        "timing": {},
        "status": "ok",
    }
    try:
        _run_stages(command, path, args, report)
        return report, 0
    except (ParseError, PencilError, OSError) as exc:
        report["status"] = "error"
        report["error"] = {"kind": "input", "message": str(exc)}
        return report, 2
    except InconclusiveError as exc:
        report["status"] = "error"
        report["error"] = {"kind": "inconclusive", "message": str(exc)}
        return report, 3
    except (InvariantError, AssertionError) as exc:
        report["status"] = "error"
        report["error"] = {"kind": "invariant", "message": str(exc)}
        return report, 4


def _option(args, name, file_options, default):
    if args is not None and getattr(args, name, None) is not None:
        return getattr(args, name)
    key = {"degree_bound": "degree_bound", "tol": "tolerance"}.get(name, name)
    return file_options.get(key, default)


def _run_stages(command: str, path: str, args, report: dict) -> None:
    pf = load_pencil_file(path)
    allowed = {"x", *pf.variables}
    f = parse_polynomial(pf.polynomial_src, allowed=allowed)
    params = pf.variables if pf.variables else None
    t0 = time.perf_counter()
    pencil = validate_pencil(f, params=params)
    report["timing"]["pencil"] = time.perf_counter() - t0
    tol = _option(args, "tol", pf.options, 1e-10)
    truncation = _option(args, "truncation", pf.options, None)
    degree_bound = _option(args, "degree_bound", pf.options, 3)
    samples = _option(args, "samples", pf.options, 200)
    seed = _option(args, "seed", pf.options, 0)
    report["input"] = {
        "file": path,
        "name": pf.name,
        "polynomial": str(pencil.f),
        "variables": list(pencil.params),
        "options": {
            "tolerance": tol,
            "truncation": truncation,
            "degree_bound": degree_bound,
            "samples": samples,
            "seed": seed,
        },
    }
    report["stages"]["pencil"] = {
        "genus": pencil.genus,
        "discriminant": str(pencil.discriminant),
        "singular_factors": [[str(p), m] for p, m in pencil.singular_factors],
    }
    stage = getattr(args, "stage", None) if args is not None else None
    if command == "analyze" and stage:
        wanted = {stage}
    elif command == "analyze":
        wanted = {"gm", "ks", "ranks", "pairing"}
        if len(pencil.params) == 1:
            wanted |= {"monodromy", "independence"}
        if pf.endomorphism_src is not None:
            wanted.add("decompose")
    else:
        wanted = {command}
    rng = random.Random(seed)
    mats = None

    def connection():
        nonlocal mats
        if mats is None:
            t1 = time.perf_counter()
            mats = all_connection_matrices(pencil)
            report["timing"]["gm"] = time.perf_counter() - t1
        return mats

    if "gm" in wanted:
        ms = connection()
        gm = {}
        for M in ms:
            gm[M.parameter] = {
                "matrix": matrix_strings(M.matrix),
                "denominators_regular": denominators_regular(pencil, M),
            }
        if len(ms) == 2:
            gm["flatness_zero"] = curvature(ms[0], ms[1]).is_zero()
        report["stages"]["gm"] = gm
    if "ks" in wanted:
        ms = connection()
        ks = {}
        for M in ms:
            T = kodaira_spencer_block(M)
            ks[M.parameter] = {
                "block": matrix_strings(T),
                "nonzero": not T.is_zero(),
                "rank": rank(T),
            }
        report["stages"]["ks"] = ks
    if "ranks" in wanted:
        ms = connection()
        t1 = time.perf_counter()
        rep = rank_report(pencil, ms)
        blocks = [M.block_t for M in ms]
        checks = {
            "chain_holds": rep.chain_ok(),
            "isotriviality_consistent": rep.isotrivial == (rep.ks_rank == 0),
        }
        spec_points = _specialization_points(pencil, ms, rng)
        agree = True
        for M in ms:
            T = kodaira_spencer_block(M)
            generic = rank(T)
            for point in spec_points:
                agree = agree and rank_specialized(T, point) == generic
        checks["specialization_agrees"] = agree
        report["stages"]["ranks"] = {
            "genus": rep.genus,
            "span_rank": rep.span_rank,
            "ks_rank": rep.ks_rank,
            "ks_directional_rank": rep.ks_directional_rank,
            "isotrivial": rep.isotrivial,
            "span_dimension": rep.span_dimension,
            "stabilization_steps": rep.stabilization_steps,
            "checks": checks,
            "specialization_points": [
                {k: str(v) for k, v in pt.items()} for pt in spec_points
            ],
        }
        report["timing"]["ranks"] = time.perf_counter() - t1
    if "pairing" in wanted:
        ms = connection()
        t1 = time.perf_counter()
        J = cup_matrix(pencil, truncation)
        G = symplectify(J)
        sym_ok = True
        horiz_ok = True
        for M in ms:
            horiz_ok = horiz_ok and horizontality_residual(J, M).is_zero()
            Tm = kodaira_spencer_block(transform_connection(M, G))
            sym_ok = sym_ok and Tm == Tm.transpose()
        J2 = cup_matrix(pencil, 2 * J.truncation)
        report["stages"]["pairing"] = {
            "cup_matrix": matrix_strings(J.matrix),
            "truncation": J.truncation,
            "checks": {
                "skew": (J.matrix + J.matrix.transpose()).is_zero(),
                "first_kind_block_zero": J.matrix.block(0, pencil.genus, 0, pencil.genus).is_zero(),
                "horizontality": horiz_ok,
                "symplectified_block_symmetric": sym_ok,
                "truncation_stable": J.matrix == J2.matrix,
            },
            "base_change": matrix_strings(G),
        }
        report["timing"]["pairing"] = time.perf_counter() - t1
    if "monodromy" in wanted:
        if len(pencil.params) != 1:
            raise PencilError("monodromy stage needs a one-parameter pencil")
        t1 = time.perf_counter()
        rep = monodromy(pencil, tol=tol, truncation=truncation)
        report["stages"]["monodromy"] = {
            "basepoint": str(rep.basepoint),
            "loops": rep.loop_labels,
            "matrices": [complex_matrix(m) for m in rep.matrices],
            "trace_table": [complex_pair(tr) for tr in rep.trace_table],
            "symplectic_defect": rep.symplectic_defect,
            "product_defect": rep.product_defect,
            "algebra_dimension": rep.algebra_dimension,
            "tolerance": rep.tolerance,
            "integration_error": rep.integration_error,
            "checks": {
                "product_within_tolerance": rep.product_defect <= 100 * tol,
                "symplectic_within_tolerance": rep.symplectic_defect <= 100 * tol,
            },
        }
        report["timing"]["monodromy"] = time.perf_counter() - t1
    if "independence" in wanted:
        if len(pencil.params) != 1:
            raise PencilError("independence stage needs a one-parameter pencil")
        t1 = time.perf_counter()
        verdict = first_kind_independence(
            pencil, degree_bound=degree_bound, samples=samples
        )
        entry = {
            "verdict": verdict.kind,
            "qualified": f"independent up to degree {degree_bound}"
            if verdict.independent
            else "relation candidate",
            "gap": verdict.gap,
            "degree_bound": verdict.degree_bound,
            "samples": verdict.samples,
            "tolerance": verdict.tolerance,
            "zero_columns": [c.label() for c in verdict.zero_columns],
        }
        if verdict.coefficients is not None:
            entry["relation"] = [
                {"column": key.label(), "coefficient": complex_pair(c)}
                for key, c in zip(verdict.columns, verdict.coefficients)
                if abs(c) > 1e-12
            ]
        report["stages"]["independence"] = entry
        report["timing"]["independence"] = time.perf_counter() - t1
    if "decompose" in wanted:
        if pf.endomorphism_src is None:
            raise PencilError("decompose stage needs an 'endomorphism' entry")
        ms = connection()
        t1 = time.perf_counter()
        dim = 2 * pencil.genus
        rows = pf.endomorphism_src
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise PencilError(f"endomorphism must be {dim}x{dim}")
        entries = [
            [MultiRational.from_poly(parse_polynomial(cell, allowed={*pencil.params})) for cell in row]
            for row in rows
        ]
        e = RatMatrix(entries)
        deco = endo_decompose(pencil, e, ms)
        report["stages"]["decompose"] = {
            "minimal_polynomial": [str(c) for c in deco.minpoly],
            "factors": [
                {
                    "factor": fac.poly_string(),
                    "component_dim": fac.component_dim,
                    "first_kind_dim": fac.first_kind_dim,
                    "quotient_dim": fac.quotient_dim,
                    "ks_rank": fac.ks_rank,
                }
                for fac in deco.factors
            ],
            "first_kind_free": first_kind_free(deco),
        }
        report["timing"]["decompose"] = time.perf_counter() - t1


def _specialization_points(pencil, mats, rng, count: int = 5):
    """Random rational points avoiding every denominator in the blocks."""
    points = []
    dens = []
    for M in mats:
        for row in M.block_t.data:
            for e in row:
                dens.append(e.den)
    guard = 0
    while len(points) < count and guard < 1000:
        guard += 1
        point = {p: Fraction(rng.randint(2, 1000), rng.randint(1, 50)) for p in pencil.params}
        ok = True
        for d in dens:
            if not d.is_constant() and d.subs(point).constant_value() == 0:
                ok = False
                break
        if ok and point not in points:
            points.append(point)
    return points


if __name__ == "__main__":
    sys.exit(main())
