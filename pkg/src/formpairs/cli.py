"""Command-line front end.

Every command prints one record ``{command, p, mode, inputs, results}`` as
JSON (default) or, for tabular results, CSV.  Exit codes: 0 success,
2 usage or parse error, 3 domain rejection, 4 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import cohomology
from .construction import RotationData, is_free, k_invariant, lens_product, lens_product_class
from .equivalence import (
    FULL,
    MODES,
    FormPair,
    TransformWitness,
    canonical_form,
    decide_equivalent,
    is_realizable,
    iter_orbit,
)
from .errors import FormPairsError, NonRealizable, NotFree, ResourceLimit
from .fp_core import FieldContext
from .forms import Matrix2
from .orbits import DEFAULT_MAX_PRIME, ORACLE_MAX_PRIME, brute_force_equivalent, orbit_summary
from .restrictions import DEFAULT_MAX_ZETA_DEGREE, TransgressionPair, qd_obstruction, satisfies_all_twists

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what} is not valid JSON: {exc}") from None


def _parse_pair(ctx: FieldContext, text: str) -> FormPair:
    data = _json_arg(text, "pair")
    if not (isinstance(data, list) and len(data) == 2 and all(isinstance(f, list) for f in data)):
        raise UsageError("--pair must be a list of two coefficient lists")
    return FormPair.from_list(ctx, data)


def _parse_rot(ctx: FieldContext, text: str) -> RotationData:
    data = _json_arg(text, "rot")
    if not isinstance(data, dict):
        raise UsageError("--rot must be a JSON object with keys n, R, Q")
    return RotationData.from_dict(ctx, data)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join("--" + n for n in missing))


def _witness_ok(w: TransformWitness, src: FormPair, dst: FormPair) -> bool:
    return w.apply(src) == dst


# -- commands ---------------------------------------------------------------


def cmd_classify(ctx, args) -> tuple[dict, dict]:
    _require(args, "pair")
    pair = _parse_pair(ctx, args.pair)
    inputs = {"pair": pair.to_list()}
    if not is_realizable(pair):
        raise NonRealizable(
            f"{pair} fails the transgression restrictions: the forms are dependent or share a rational root"
        )
    mode = MODES[args.mode]
    if mode == FULL and pair.degree == 2:
        nf, witness = canonical_form(pair)
        target = nf.representative(ctx)
        results = {
            "realizable": True,
            "normal_form": str(nf),
            "representative": target.to_list(),
            "class_index": ctx.fourth_power_class(nf.w),
            "witness": witness.to_dict(),
        }
    else:
        # smallest pair index in the orbit serves as the normal form
        best = None
        for d, S, R in iter_orbit(pair, mode, max_prime=args.max_prime):
            if best is None or d < best[0]:
                best = (d, S, R)
        target = FormPair.from_list(ctx, [list(best[0][: pair.degree + 1]), list(best[0][pair.degree + 1 :])])
        witness = TransformWitness(Matrix2(ctx, *best[1]), Matrix2(ctx, *best[2]))
        results = {
            "realizable": True,
            "normal_form": "orbit-minimum",
            "representative": target.to_list(),
            "witness": witness.to_dict(),
        }
    results["witness_verified"] = _witness_ok(witness, pair, target)
    return inputs, results


def cmd_orbits(ctx, args) -> tuple[dict, dict]:
    summary = orbit_summary(ctx, MODES[args.mode], 2, args.max_prime)
    rows = [
        {"orbit": k, "representative": pair.to_list(), "size": size}
        for k, (pair, size) in enumerate(zip(summary.representative_pairs(), summary.sizes))
    ]
    if args.limit_pairs is not None:
        rows = rows[: args.limit_pairs]
    results = {
        "count": summary.count,
        "realizable_pairs": summary.realizable_count,
        "size_total": sum(summary.sizes),
        "orbits": rows,
    }
    return {"degree": 2, "max_prime": args.max_prime, "limit_pairs": args.limit_pairs}, results


def cmd_kinv(ctx, args) -> tuple[dict, dict]:
    _require(args, "rot")
    rot = _parse_rot(ctx, args.rot)
    pair = k_invariant(rot)
    return {"rot": rot.to_dict()}, {"pair": pair.to_list(), "display": str(pair), "free": is_free(rot)}


def cmd_free(ctx, args) -> tuple[dict, dict]:
    _require(args, "rot")
    rot = _parse_rot(ctx, args.rot)
    free = is_free(rot)
    results = {"free": free}
    if ctx.p > rot.n >= 2:
        pair = k_invariant(rot)
        results["pair"] = pair.to_list()
        results["restrictions_hold"] = satisfies_all_twists(TransgressionPair.of(pair))
    return {"rot": rot.to_dict()}, results


def cmd_lens(ctx, args) -> tuple[dict, dict]:
    _require(args, "x", "y")
    rot = lens_product(ctx, args.x, args.y)
    pair = k_invariant(rot)
    nf, witness = canonical_form(pair)
    results = {
        "pair": pair.to_list(),
        "normal_form": str(nf),
        "class_index": ctx.fourth_power_class(nf.w),
        "class_from_legendre": lens_product_class(ctx, args.x, args.y),
        "witness": witness.to_dict(),
    }
    return {"x": ctx.residue(args.x), "y": ctx.residue(args.y)}, results


def cmd_qd(ctx, args) -> tuple[dict, dict]:
    _require(args, "n")
    verdict = qd_obstruction(ctx, args.n, args.max_zeta_degree)
    return {"n": args.n, "max_zeta_degree": args.max_zeta_degree}, verdict.to_dict()


def cmd_cohomology(ctx, args) -> tuple[dict, dict]:
    _require(args, "k")
    k = args.k
    if k < 0:
        raise UsageError("-k must be nonnegative")
    basis = cohomology.basis_of_degree(k)
    free, prank = cohomology.dim_cohomology(k)
    hfree, hprank = cohomology.dim_homology(k)
    triangle = all(
        cohomology.reduce_mod_p(cohomology.bockstein_integral(s)) == cohomology.bockstein_modp(s)
        for s in cohomology.modp_basis_of_degree(ctx, k)
    )
    results = {
        "cohomology": {"free_rank": free, "p_rank": prank},
        "homology": {"free_rank": hfree, "p_rank": hprank},
        "basis": [str(m) for m in basis] if k else ["1"],
        "bockstein_triangle_commutes": triangle,
    }
    return {"k": k}, results


def _random_realizable(ctx: FieldContext, rng: random.Random) -> FormPair:
    while True:
        data = [[rng.randrange(ctx.p) for _ in range(3)] for _ in range(2)]
        pair = FormPair.from_list(ctx, data)
        if is_realizable(pair):
            return pair


def cmd_oracle(ctx, args) -> tuple[dict, dict]:
    mode = MODES[args.mode]
    if ctx.p > args.max_prime:
        raise ResourceLimit(f"oracle sweep limited to p <= {args.max_prime}")
    reps = orbit_summary(ctx, mode, 2, args.max_prime).representative_pairs()
    cases = [(a, b) for a in reps for b in reps]
    n_random = args.limit_pairs if args.limit_pairs is not None else (1000 if ctx.p <= 5 else 500)
    rng = random.Random(args.seed)
    cases += [(_random_realizable(ctx, rng), _random_realizable(ctx, rng)) for _ in range(n_random)]
    discrepancies, unsound, equivalent = [], 0, 0
    for a, b in cases:
        witness = decide_equivalent(a, b, mode, max_prime=args.max_prime)
        truth = brute_force_equivalent(a, b, mode, max_prime=args.max_prime)
        if witness is not None and not _witness_ok(witness, a, b):
            unsound += 1
        equivalent += truth
        if (witness is not None) != truth:
            discrepancies.append({"source": a.to_list(), "target": b.to_list(), "brute_force": truth})
    results = {
        "cases": len(cases),
        "representative_cases": len(reps) ** 2,
        "random_cases": n_random,
        "equivalent_cases": equivalent,
        "discrepancies": len(discrepancies),
        "unsound_witnesses": unsound,
        "examples": discrepancies[:10],
    }
    return {"seed": args.seed, "limit_pairs": args.limit_pairs, "max_prime": args.max_prime}, results


COMMANDS = {
    "classify": cmd_classify,
    "orbits": cmd_orbits,
    "kinv": cmd_kinv,
    "free": cmd_free,
    "lens": cmd_lens,
    "qd": cmd_qd,
    "cohomology": cmd_cohomology,
    "oracle": cmd_oracle,
}


# -- plumbing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--prime", type=int, required=True)
    common.add_argument("--mode", choices=sorted(MODES), default="full")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--limit-pairs", type=int, default=None,
                        help="cap on listed orbits (orbits) or random cases (oracle)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-prime", type=int, default=None,
                        help="largest p allowed for exhaustive work")
    common.add_argument("--max-zeta-degree", type=int, default=DEFAULT_MAX_ZETA_DEGREE)
    common.add_argument("--pair")
    common.add_argument("--rot")
    common.add_argument("-x", type=int)
    common.add_argument("-y", type=int)
    common.add_argument("-n", type=int)
    common.add_argument("-k", type=int)

    parser = argparse.ArgumentParser(prog="formpairs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _default_max_prime(command: str) -> int:
    return DEFAULT_MAX_PRIME if command == "orbits" else ORACLE_MAX_PRIME


def _to_csv(record: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    results = record["results"]
    table = next((v for v in results.values() if isinstance(v, list) and v and isinstance(v[0], dict)), None)
    if table is not None:
        writer.writerow(list(table[0]))
        for row in table:
            writer.writerow([json.dumps(v) if isinstance(v, (list, dict)) else v for v in row.values()])
    else:
        writer.writerow(["key", "value"])
        for key, value in results.items():
            writer.writerow([key, json.dumps(value) if isinstance(value, (list, dict)) else value])
    return buf.getvalue()


def _emit(record: dict, fmt: str, stream) -> None:
    if fmt == "csv" and "results" in record:
        stream.write(_to_csv(record))
    else:
        stream.write(json.dumps(record, indent=2) + "\n")


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_prime is None:
        args.max_prime = _default_max_prime(args.command)
    record = {"command": args.command, "p": args.prime, "mode": args.mode}
    try:
        ctx = FieldContext(args.prime)
        inputs, results = COMMANDS[args.command](ctx, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonRealizable, NotFree) as exc:
        record["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit(record, "json", stdout)
        return EXIT_DOMAIN
    except ResourceLimit as exc:
        record["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit(record, "json", stdout)
        return EXIT_RESOURCE
    except FormPairsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    record["inputs"] = inputs
    record["results"] = results
    _emit(record, args.format, stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
