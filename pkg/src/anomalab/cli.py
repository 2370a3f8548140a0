"""Batch command line: cohomology tables, slants, doubles, Galois checks.

Exit codes: 0 success, 1 failed mathematical check, 2 bad input,
3 resource cap exceeded.  All outputs are deterministic JSON given the
same inputs and seed.
"""

import argparse
import json
import os
import sys
from math import gcd

import numpy as np

from .catalog import named_group
from .cohomology import (
    Cochain,
    cochain_from_json,
    cohomology_group,
    galois_fixed_exponent,
    inflation_kill_check,
    slant2,
    slant3,
    stable_classes,
)
from .errors import CapError, ConsistencyError, DomainError
from .groups import ExtensionData, FiniteGroup, group_from_json, subgroup_from_elements


def _load_group(spec: str) -> FiniteGroup:
    if spec.endswith(".json"):
        try:
            with open(spec) as fh:
                return group_from_json(json.load(fh))
        except OSError as exc:
            raise DomainError(f"cannot read group file: {exc}") from exc
    return named_group(spec)


def _load_alpha(spec: str, G: FiniteGroup, degree: int, modulus: int) -> Cochain:
    if spec.endswith(".json"):
        try:
            with open(spec) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise DomainError(f"cannot read cochain file: {exc}") from exc
        return cochain_from_json(data, G)
    try:
        coords = tuple(int(v) for v in spec.split(","))
    except ValueError as exc:
        raise DomainError(f"bad class coordinates {spec!r}") from exc
    H = cohomology_group(G, degree, modulus)
    if coords == (0,) and not H.invariant_factors:
        return Cochain.zero(G, degree, modulus)
    if len(coords) != len(H.invariant_factors):
        raise DomainError(
            f"expected {len(H.invariant_factors)} coordinates for "
            f"H^{degree}({G.name or 'G'}; Z/{modulus}) = {H.invariant_factors}"
        )
    return H.class_from_coordinates(coords).representative


def _emit(obj: dict, out: str | None) -> None:
    blob = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(blob)
    else:
        sys.stdout.write(blob)


def _group_ref(G: FiniteGroup):
    return G.name if G.name else G.to_json()


# -- subcommands -------------------------------------------------------------


def cmd_cohomology(args) -> int:
    G = _load_group(args.group)
    m = args.modulus if args.modulus else G.order
    H = cohomology_group(G, args.degree, m)
    report = {
        "group": _group_ref(G),
        "degree": args.degree,
        "modulus": m,
        "invariant_factors": list(H.invariant_factors),
        "order": H.order,
        "basis": [list(b.table) for b in H.basis_cocycles],
    }
    if args.stable:
        S = stable_classes(G, args.degree, m)
        report["stable_invariant_factors"] = list(S.invariant_factors)
        report["stable_class_count"] = S.count
    _emit(report, args.out)
    return 0


def cmd_slant(args) -> int:
    G = _load_group(args.group)
    m = args.modulus if args.modulus else G.order
    alpha = _load_alpha(args.alpha, G, args.degree, m)
    if args.degree == 3:
        res = slant3(alpha, args.g)
    elif args.degree == 2:
        res = slant2(alpha, args.g)
    else:
        raise DomainError("slant is defined for degrees 2 and 3")
    sub = G.centralizer(args.g)
    _emit(
        {
            "group": _group_ref(G),
            "g": args.g,
            "centralizer_elements": list(sub.elements),
            "slant": res.to_json(),
        },
        args.out,
    )
    return 0


def cmd_double(args) -> int:
    from .double import build_double, modular_data, verlinde_fusion

    G = _load_group(args.group)
    m = args.modulus if args.modulus else G.order
    alpha = _load_alpha(args.alpha, G, 3, m)
    md = modular_data(build_double(G, alpha), seed=args.seed)
    report = md.to_json()
    report["group"] = _group_ref(G)
    report["alpha_table"] = list(alpha.table)
    report["alpha_modulus"] = alpha.modulus
    if args.fusion:
        report["fusion"] = verlinde_fusion(md).tolist()
    _emit(report, args.out)
    return 0


def cmd_galois_check(args) -> int:
    from .double import galois_squared_check

    G = _load_group(args.group)
    m = args.modulus if args.modulus else G.order
    alpha = _load_alpha(args.alpha, G, 3, m)
    report = galois_squared_check(G, alpha, args.n, seed=args.seed)
    report["group"] = _group_ref(G)
    _emit(report, args.out)
    return 0 if report["equivalence_found"] else 1


def cmd_torsion24(args) -> int:
    G = _load_group(args.group)
    m = args.modulus if args.modulus else G.order
    H = cohomology_group(G, 3, m)
    factors, expo = galois_fixed_exponent(H, 2)
    report = {
        "group": _group_ref(G),
        "modulus": m,
        "h3_invariant_factors": list(H.invariant_factors),
        "fixed_subgroup_factors": list(factors),
        "fixed_subgroup_exponent": expo,
        "divides_24": 24 % expo == 0,
    }
    _emit(report, args.out)
    return 0 if report["divides_24"] else 1


def _load_action(spec: str):
    from . import azumaya as az

    named = {
        "trivial": lambda: az.trivial_action(named_group("Z/2")),
        "pauli": az.pauli_action,
        "diag": az.diag_gauge_action,
        "minus": az.minus_identity_lift_action,
        "clock3": lambda: az.clock_action(3),
        "heisenberg": az.heisenberg44_action,
    }
    if spec in named:
        return named[spec]()
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read action file: {exc}") from exc
    return _action_from_json(data)


def _action_from_json(data: dict):
    from .azumaya import AlgebraAction, MatrixAlgebra
    from .cyclotomic import CycloNumber

    G = (
        named_group(data["group"])
        if isinstance(data["group"], str)
        else group_from_json(data["group"])
    )
    n = int(data["n"])
    level = int(data.get("level", 1))

    def entry(v):
        if isinstance(v, dict):
            return CycloNumber.from_json(v)
        return CycloNumber.rational(v, level)

    maps = []
    for g in G.elements():
        M = data["auto"][str(g)]
        maps.append(tuple(tuple(entry(v) for v in row) for row in M))
    lift = None
    if data.get("lift"):
        lift = tuple(
            tuple(tuple(entry(v) for v in row) for row in data["lift"][str(g)])
            for g in G.elements()
        )
    return AlgebraAction(MatrixAlgebra(n, level), G, maps, lift)


def cmd_azumaya(args) -> int:
    from .azumaya import anomaly_cocycle, galois_twist_check, gauge_algebra

    act = _load_action(args.action)
    coc = anomaly_cocycle(act)
    report = {
        "group": _group_ref(act.group),
        "algebra_size": act.algebra.size,
        "values": [[v.to_json() for v in row] for row in coc.values],
        "root_of_unity_valued": coc.modulus is not None,
    }
    if coc.modulus is not None:
        report["modulus"] = coc.modulus
        report["additive_table"] = list(coc.cochain.table)
        report["class_coordinates"] = list(coc.cohomology_class.coordinates)
        report["class_trivial"] = coc.cohomology_class.is_trivial()
    if args.gauge:
        res = gauge_algebra(act)
        report["gauge_rank"] = res.rank
    status = 0
    if args.galois_n:
        rep = galois_twist_check(act, args.galois_n)
        report["galois_twist"] = rep
        if not rep["first_power_law_holds"]:
            status = 1
    _emit(report, args.out)
    return status


def cmd_gauge_abelian(args) -> int:
    from .gauging import ConjugationRule, gauged_decomposition, galois_transform, random_cocycle, reindex_check

    A = _load_group(args.group)
    m = args.modulus if args.modulus else A.order
    if args.beta == "random":
        rng = np.random.default_rng(args.seed)
        beta = random_cocycle(A, m, rng)
    else:
        beta = _load_alpha(args.beta, A, 2, m)
    dec = gauged_decomposition(A, beta)
    report = {
        "group": _group_ref(A),
        "modulus": m,
        "beta_table": list(beta.table),
        "seed": args.seed,
        "labels": [
            {"sector": lab.sector, "character": list(lab.twist_character.table)}
            for lab in dec.labels
        ],
    }
    status = 0
    if args.n is not None:
        rule = ConjugationRule(args.n, m, A.exponent())
        moved = galois_transform(dec, rule)
        report["transformed"] = [
            {"sector": lab.sector, "character": list(lab.twist_character.table)}
            for lab in moved.labels
        ]
        ok = reindex_check(A, beta, rule)
        report["reindex_check"] = ok
        if not ok:
            status = 1
    _emit(report, args.out)
    return status


def cmd_kill_search(args) -> int:
    G = _load_group(args.group)
    m = args.modulus if args.modulus else G.order
    alpha = _load_alpha(args.alpha, G, 3, m)
    H = cohomology_group(G, 3, m)
    cls = H.class_of(alpha)
    result = kill_search(G, cls, args.max_kernel)
    report = {
        "group": _group_ref(G),
        "alpha": list(cls.coordinates),
        "max_kernel": args.max_kernel,
        "found": result is not None,
    }
    if result is not None:
        ext, kcoords, korder = result
        report["kernel_order"] = korder
        report["extension_class"] = list(kcoords)
        report["total_order"] = ext.total.order
        report["total_mult"] = [list(r) for r in ext.total.mult]
        report["quotient_map"] = list(ext.quotient_map)
    _emit(report, args.out)
    return 0 if result is not None else 1


def kill_search(G: FiniteGroup, alpha, max_kernel: int):
    """First central extension by Z/k (k <= max_kernel, classes in
    lexicographic order) killing alpha under pullback, or None."""
    if alpha.is_trivial():
        from .groups import identity_extension

        return identity_extension(G), (), 1
    for k in range(2, max_kernel + 1):
        H2 = cohomology_group(G, 2, k)
        for beta_cls in H2.classes():
            ext = central_extension(G, k, beta_cls.representative)
            killed, _ = inflation_kill_check(ext, alpha)
            if killed:
                return ext, beta_cls.coordinates, k
    return None


def central_extension(G: FiniteGroup, k: int, beta: Cochain) -> ExtensionData:
    """The extension of G by Z/k built from a normalized 2-cocycle."""
    if beta.group != G or beta.degree != 2 or beta.modulus != k:
        raise DomainError("extension cocycle must be on G with modulus k")
    nG = G.order
    n = k * nG
    table = [[0] * n for _ in range(n)]
    for a in range(k):
        for g in range(nG):
            for b in range(k):
                for h in range(nG):
                    c = (a + b + beta.value(g, h)) % k
                    table[a * nG + g][b * nG + h] = c * nG + G.mul(g, h)
    E = FiniteGroup(table, name=f"ext(Z/{k},{G.name or 'G'})")
    kernel = subgroup_from_elements(E, [a * nG + G.identity for a in range(k)])
    qmap = tuple(x % nG for x in range(n))
    return ExtensionData(E, kernel, qmap, G)


def cmd_batch(args) -> int:
    try:
        with open(args.jobs) as fh:
            jobs = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read job list: {exc}") from exc
    if not isinstance(jobs, list):
        raise DomainError("job list must be a JSON array of argv arrays")
    if args.jobs_parallel > 1:
        import multiprocessing as mp

        with mp.Pool(args.jobs_parallel) as pool:
            codes = pool.map(_run_job, jobs)
    else:
        codes = [_run_job(j) for j in jobs]
    _emit({"jobs": len(jobs), "exit_codes": codes}, args.out)
    return max(codes, default=0)


def _run_job(argv) -> int:
    return main([str(a) for a in argv])


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="anomalab",
        description="Exact finite-group anomaly computations",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here")

    sp = sub.add_parser("cohomology", help="invariant factors of H^k(G; Z/m)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--modulus", type=int, default=0)
    sp.add_argument("--stable", action="store_true",
                    help="also report the stable (mu-)class content")
    common(sp)
    sp.set_defaults(fn=cmd_cohomology)

    sp = sub.add_parser("slant", help="slant product into a centralizer")
    sp.add_argument("--group", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--modulus", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_slant)

    sp = sub.add_parser("double", help="modular data of the twisted double")
    sp.add_argument("--group", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--modulus", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fusion", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_double)

    sp = sub.add_parser("galois-check",
                        help="compare MD(n^2 alpha) with the n^2 conjugate")
    sp.add_argument("--group", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--modulus", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_galois_check)

    sp = sub.add_parser("torsion24",
                        help="Galois-fixed subgroup of H^3 and its exponent")
    sp.add_argument("--group", required=True)
    sp.add_argument("--modulus", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_torsion24)

    sp = sub.add_parser("azumaya", help="anomaly of a matrix-algebra action")
    sp.add_argument("--action", required=True,
                    help="named action or a JSON file")
    sp.add_argument("--galois-n", type=int, default=0)
    sp.add_argument("--gauge", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_azumaya)

    sp = sub.add_parser("gauge-abelian",
                        help="twisted-sector decomposition of an orbifold")
    sp.add_argument("--group", required=True)
    sp.add_argument("--beta", default="random")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--modulus", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_gauge_abelian)

    sp = sub.add_parser("kill-search",
                        help="central extension killing a degree-3 class")
    sp.add_argument("--group", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--max-kernel", type=int, default=8)
    sp.add_argument("--modulus", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_kill_search)

    sp = sub.add_parser("batch", help="run a JSON list of jobs")
    sp.add_argument("jobs")
    sp.add_argument("--jobs", dest="jobs_parallel", type=int, default=1,
                    help="worker processes")
    common(sp)
    sp.set_defaults(fn=cmd_batch)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"failed check: {exc}", file=sys.stderr)
        return 1
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
