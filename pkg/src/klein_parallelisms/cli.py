"""Command line front end.

Subcommands build demo objects, validate and classify descriptor files, run
seeded verification suites, and perform exhaustive searches over GF(2) and
GF(3).  The same configuration (field, seed, sample count) always produces a
byte-identical JSON report; all randomness flows through one seeded Mersenne
Twister instance and all arithmetic is exact.

Exit codes: 0 all checks pass, 1 verification failures, 2 input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .algebras import AlgebraH, NotDivision, algebra_from_json
from .fields import Field, PrimeField, field_from_flag, field_to_json
from .flocks import distinguished_class, parallelism_from_hfd
from .hfd import (
    COLLINEAR_VERTICES,
    HfdDescriptor,
    classify,
    is_clifford,
    validate_descriptor,
    verify_hfd_at,
)
from .klein import (
    plane_polar_type,
    plucker_point,
    polar,
    second_external_plane,
)
from .projspace import ProjSubspace, meet, random_line, rref_matrices_mod_p
from .spreads import (
    CliffordParallelism,
    HfdParallelism,
    clifford_hfd_plane,
    coset_spread,
    verify_partition,
)

GENERATOR_ID = "python-random-mt19937"


def _report_skeleton(args, field: Field | None) -> dict:
    config = {
        "command": args.command,
        "generator": GENERATOR_ID,
        "seed": getattr(args, "seed", None),
        "samples": getattr(args, "samples", None),
        "version": __version__,
    }
    if field is not None:
        config["field"] = field_to_json(field)
    return {"config": config, "results": [], "counts": {}}


def _emit(report: dict, args) -> None:
    if getattr(args, "json", False):
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        lines = []
        for res in report["results"]:
            lines.append(f"[{res['status']}] {res['check']}")
            for key, val in sorted(res.get("details", {}).items()):
                lines.append(f"    {key}: {val}")
        for key, val in sorted(report["counts"].items()):
            lines.append(f"{key} = {val}")
        text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(report: dict) -> int:
    bad = any(res["status"] != "pass" for res in report["results"])
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# demo clifford
# ---------------------------------------------------------------------------

def cmd_demo_clifford(args) -> int:
    field = field_from_flag(args.field)
    report = _report_skeleton(args, field)
    rng = random.Random(args.seed)
    if field.kind == "f2_rational_functions":
        algebra = AlgebraH(field, "tower")
    else:
        try:
            a = field.parse(args.a)
            b = field.parse(args.b)
            algebra = AlgebraH(field, "quaternion", a, b)
        except Exception as exc:
            report["results"].append(
                {"check": "algebra", "status": "error", "details": {"reason": str(exc)}}
            )
            _emit(report, args)
            return 2
    if not algebra.is_division():
        report["results"].append(
            {
                "check": "is_division",
                "status": "fail",
                "details": {"reason": "NotDivision: zero divisors, no parallelism"},
            }
        )
        _emit(report, args)
        return 1
    report["results"].append({"check": "is_division", "status": "pass", "details": {}})

    plane = clifford_hfd_plane(algebra, "left", rng, samples=args.samples)
    report["results"].append(
        {
            "check": "class_images_coplanar_external",
            "status": "pass",
            "details": {"plane": plane.to_json(), "samples": args.samples},
        }
    )
    report["results"].append(
        {
            "check": "plane_polar_type",
            "status": "pass",
            "details": {"type": plane_polar_type(plane)},
        }
    )

    d_line = ProjSubspace.from_vectors(field, 5, [plane.rows[0], plane.rows[1]])
    descriptor = validate_descriptor(HfdDescriptor(d_line, (plane,), 0, ()))
    result = classify(descriptor)
    report["results"].append(
        {
            "check": "classification",
            "status": "pass",
            "details": {
                "case": result.case,
                "dimension": result.dimension,
                "is_clifford": is_clifford(descriptor),
            },
        }
    )
    part = verify_partition(
        CliffordParallelism(algebra, "left"), args.samples, args.seed, strict=False
    )
    report["results"].append(
        {
            "check": "partition",
            "status": "pass" if not part["failures"] else "fail",
            "details": part,
        }
    )
    report["descriptor"] = descriptor.to_json()
    report["counts"] = {"checks": len(report["results"])}
    _emit(report, args)
    return _exit_code(report)


# ---------------------------------------------------------------------------
# construct-hfd
# ---------------------------------------------------------------------------

def _load_descriptor(args, field: Field) -> HfdDescriptor:
    with open(args.infile) as fh:
        data = json.load(fh)
    return HfdDescriptor.from_json(field, data)


def cmd_construct_hfd(args) -> int:
    field = field_from_flag(args.field)
    report = _report_skeleton(args, field)
    rng = random.Random(args.seed)
    try:
        descriptor = _load_descriptor(args, field)
    except (OSError, ValueError, KeyError) as exc:
        report["results"].append(
            {"check": "parse", "status": "error", "details": {"reason": str(exc)}}
        )
        _emit(report, args)
        return 2
    try:
        descriptor = validate_descriptor(descriptor)
        if args.auto_second_plane:
            base = descriptor.planes[descriptor.default]
            second = second_external_plane(base, rng)
            new_d = meet(base, second)
            one, zero = field.one(), field.zero()
            exceptions = tuple(
                (param, 1)
                for param in ((one, zero), (zero, one), (one, one))
            )
            descriptor = validate_descriptor(
                HfdDescriptor(new_d, (base, second), 0, exceptions)
            )
        result = classify(descriptor)
    except Exception as exc:
        report["results"].append(
            {
                "check": "validate",
                "status": "fail",
                "details": {"reason": f"{type(exc).__name__}: {exc}"},
            }
        )
        _emit(report, args)
        return 1
    report["results"].append({"check": "validate", "status": "pass", "details": {}})
    report["results"].append(
        {
            "check": "classification",
            "status": "pass",
            "details": {
                "case": result.case,
                "dimension": result.dimension,
                "planes": len(result.K),
                "is_clifford": is_clifford(descriptor),
            },
        }
    )
    report["descriptor"] = descriptor.to_json()
    report["counts"] = {"checks": len(report["results"])}
    _emit(report, args)
    return _exit_code(report)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    field = field_from_flag(args.field)
    report = _report_skeleton(args, field)
    rng = random.Random(args.seed)
    try:
        descriptor = _load_descriptor(args, field)
    except (OSError, ValueError, KeyError) as exc:
        report["results"].append(
            {"check": "parse", "status": "error", "details": {"reason": str(exc)}}
        )
        _emit(report, args)
        return 2
    if not args.skip_validate:
        try:
            descriptor = validate_descriptor(descriptor)
            report["results"].append(
                {"check": "validate", "status": "pass", "details": {}}
            )
        except Exception as exc:
            report["results"].append(
                {
                    "check": "validate",
                    "status": "fail",
                    "details": {"reason": f"{type(exc).__name__}: {exc}"},
                }
            )
            _emit(report, args)
            return 1

    failures = []
    for k in range(args.samples):
        x = plucker_point(random_line(field, 3, rng))
        chk = verify_hfd_at(descriptor, x)
        if not chk.passed:
            failures.append({"sample": k, "detail": chk.detail})
    report["results"].append(
        {
            "check": "exactly_one_member_per_tangent_hyperplane",
            "status": "pass" if not failures else "fail",
            "details": {"samples": args.samples, "failures": failures[:10]},
        }
    )

    part_samples = max(args.samples // 5, 5)
    part = verify_partition(
        HfdParallelism(descriptor), part_samples, args.seed + 1, strict=False
    )
    report["results"].append(
        {
            "check": "parallelism_partition",
            "status": "pass" if not part["failures"] else "fail",
            "details": part,
        }
    )

    try:
        result = classify(descriptor)
        if result.case == COLLINEAR_VERTICES:
            distinguished_class(
                descriptor,
                rng,
                vertex_samples=4,
                line_samples=max(args.samples // 20, 5),
            )
            report["results"].append(
                {"check": "distinguished_class", "status": "pass", "details": {}}
            )
    except AssertionError as exc:
        report["results"].append(
            {
                "check": "distinguished_class",
                "status": "fail",
                "details": {"reason": str(exc)},
            }
        )

    report["counts"] = {
        "samples": args.samples,
        "failed_samples": len(failures),
    }
    _emit(report, args)
    return _exit_code(report)


# ---------------------------------------------------------------------------
# exhaustive finite searches
# ---------------------------------------------------------------------------

def _klein_value_mod_p(v, p: int) -> int:
    return (v[0] * v[5] - v[1] * v[4] + v[2] * v[3]) % p


def _normalized_coeffs_mod_p(p: int, k: int):
    """Nonzero coefficient tuples with leading coordinate 1 (points of PG(k-1,p))."""
    out = []
    for rows in rref_matrices_mod_p(p, k, 1):
        out.append(rows[0])
    return out


def count_external_planes_mod_p(p: int):
    """(total planes, external planes) in PG(5, p), exhaustively."""
    coeffs = _normalized_coeffs_mod_p(p, 3)
    total = external = 0
    for rows in rref_matrices_mod_p(p, 6, 3):
        total += 1
        r0, r1, r2 = rows
        hit = False
        for a, b, c in coeffs:
            v = [
                (a * r0[i] + b * r1[i] + c * r2[i]) % p
                for i in range(6)
            ]
            if _klein_value_mod_p(v, p) == 0:
                hit = True
                break
        if not hit:
            external += 1
    return total, external


def count_zero_secants_mod_p(p: int):
    """(total lines, 0-secant lines) in PG(5, p), exhaustively."""
    coeffs = _normalized_coeffs_mod_p(p, 2)
    total = zero_secant = 0
    for rows in rref_matrices_mod_p(p, 6, 2):
        total += 1
        r0, r1 = rows
        hit = False
        for a, b in coeffs:
            v = [(a * r0[i] + b * r1[i]) % p for i in range(6)]
            if _klein_value_mod_p(v, p) == 0:
                hit = True
                break
        if not hit:
            zero_secant += 1
    return total, zero_secant


def cmd_search_finite(args) -> int:
    field = field_from_flag(args.field)
    if not isinstance(field, PrimeField) or field.p not in (2, 3):
        print("search-finite needs --field gf2 or gf3", file=sys.stderr)
        return 2
    report = _report_skeleton(args, field)
    p = field.p
    what = args.what or "both"
    if what in ("external_planes", "both"):
        total, external = count_external_planes_mod_p(p)
        report["counts"]["planes_total"] = total
        report["counts"]["external_planes"] = external
        report["results"].append(
            {
                "check": "no_external_planes",
                "status": "pass" if external == 0 else "fail",
                "details": {"total": total, "external": external},
            }
        )
    if what in ("zero_secants", "both"):
        total, zs = count_zero_secants_mod_p(p)
        report["counts"]["lines_total"] = total
        report["counts"]["zero_secants"] = zs
        report["results"].append(
            {
                "check": "zero_secants_exist",
                "status": "pass" if zs > 0 else "fail",
                "details": {"total": total, "zero_secants": zs},
            }
        )
    _emit(report, args)
    return _exit_code(report)


# ---------------------------------------------------------------------------
# higher-dimensional search (exploratory)
# ---------------------------------------------------------------------------

def cmd_search_higher(args) -> int:
    """Look for three or more external planes through one line over Q.

    Reflections whose centre lies in the polar of D fix D pointwise and so
    carry one external plane through D to another; collecting distinct
    images can push the span of the plane set to dimension 4 or 5.
    """
    field = field_from_flag(args.field)
    if field.kind != "rationals":
        print("search-higher is implemented over Q", file=sys.stderr)
        return 2
    report = _report_skeleton(args, field)
    rng = random.Random(args.seed)
    algebra = AlgebraH(field, "quaternion", field.from_int(-1), field.from_int(-1))
    base = clifford_hfd_plane(algebra, "left", rng, samples=5)
    second = second_external_plane(base, rng)
    d_line = meet(base, second)
    planes = [base, second]

    from .klein import is_external_plane, on_quadric, quadric_value, reflect_subspace
    from .projspace import incident, random_point, span

    pol_d = polar(d_line)
    tries = 0
    while tries < args.samples and len(planes) < 6:
        tries += 1
        q = random_point(pol_d, rng)
        if on_quadric(q):
            continue
        for eps in list(planes):
            if incident(q, eps):
                break
        else:
            image = reflect_subspace(q, planes[0])
            if not incident(d_line, image):
                continue
            if any(image == eps for eps in planes):
                continue
            if is_external_plane(image):
                planes.append(image)
    dim = span(*planes).dim
    report["counts"] = {
        "planes_found": len(planes),
        "span_dimension": dim,
        "tries": tries,
    }
    report["results"].append(
        {
            "check": "higher_dimensional_span",
            "status": "pass",
            "details": {"planes": len(planes), "span_dimension": dim},
        }
    )
    report["planes"] = [p.to_json() for p in planes]
    _emit(report, args)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klein-parallelisms",
        description="exact constructions and checks for pencilled regular parallelisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field_default="Q"):
        p.add_argument("--field", default=field_default, help="Q | gf2 | gf3 | f2st")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", default=None)

    p = sub.add_parser("demo-clifford", help="build a Clifford parallelism and verify it")
    common(p)
    p.add_argument("--a", default="-1", help="first quaternion parameter")
    p.add_argument("--b", default="-1", help="second quaternion parameter")
    p.set_defaults(func=cmd_demo_clifford)

    p = sub.add_parser("construct-hfd", help="validate and classify a descriptor file")
    common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument(
        "--auto-second-plane",
        action="store_true",
        help="extend a one-plane descriptor by a reflected second plane",
    )
    p.set_defaults(func=cmd_construct_hfd)

    p = sub.add_parser("verify", help="run seeded verification on a descriptor file")
    common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--skip-validate", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-finite", help="exhaustive counts over GF(2) or GF(3)")
    common(p, field_default="gf2")
    p.add_argument(
        "--what",
        choices=["external_planes", "zero_secants", "both"],
        default="both",
    )
    p.set_defaults(func=cmd_search_finite)

    p = sub.add_parser(
        "search-higher", help="explore descriptors with three or more planes"
    )
    common(p)
    p.set_defaults(func=cmd_search_higher)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
