"""Command-line front end: evaluate pairs, report filtrations, run sweeps.

Four subcommands:

  v              both value routes for one pair read from a JSON job file
  filtration     upper and lower break data, fingerprint, quotient check
  counterexample the fixed family g1 = t^-(p^2-1), g2 = c*t^-(p^2-1) + t^-1
                 swept over c outside the prime field
  sweep          randomized formula-versus-oracle cross-check, CSV output

Job files look like

  {"p": 2, "n": 2, "a": "0,1",
   "g1": [[-3, "1,0"]],
   "g2": [[-3, "0,1"], [-1, "1,0"]]}

with an optional "modulus" key ([c0, ..., cn] or "c0,...,cn") overriding
the built-in choice.  Exit codes: 0 success, 2 unreadable input, 3 invalid
input, 4 cross-check disagreement.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import InputError
from .extension_algebra import ExtensionPair, validate_pair
from .finite_field import FieldParams, FqElem
from .laurent import LaurentPoly
from .ramification import (
    Filtration,
    filtration_fingerprint,
    lower_filtration,
    quotient_compat_check,
    upper_filtration,
)
from .vfunction import VResult, v_formula, v_oracle

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_MISMATCH = 4


class _ParseFailure(Exception):
    """Input that could not even be read into the expected shape."""


def _parse_modulus(raw) -> tuple[int, ...]:
    if isinstance(raw, str):
        parts = raw.split(",")
    elif isinstance(raw, list):
        parts = raw
    else:
        raise _ParseFailure(f"modulus must be a list or string, got {raw!r}")
    try:
        return tuple(int(x) for x in parts)
    except (TypeError, ValueError) as exc:
        raise _ParseFailure(f"bad modulus {raw!r}") from exc


def _build_field(p, n, modulus=None) -> FieldParams:
    if not isinstance(p, int) or not isinstance(n, int):
        raise _ParseFailure("p and n must be integers")
    if modulus is None:
        return FieldParams(p, n)
    return FieldParams(p, n, _parse_modulus(modulus))


def _load_job(path: str) -> ExtensionPair:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _ParseFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _ParseFailure(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise _ParseFailure("job file must contain a JSON object")
    missing = [k for k in ("p", "n", "a", "g1", "g2") if k not in data]
    if missing:
        raise _ParseFailure(f"job file missing keys: {', '.join(missing)}")
    field = _build_field(data["p"], data["n"], data.get("modulus"))
    try:
        a = field.parse(data["a"])
        g1 = LaurentPoly.from_pairs(field, data["g1"])
        g2 = LaurentPoly.from_pairs(field, data["g2"])
    except (TypeError, ValueError, AttributeError) as exc:
        raise _ParseFailure(f"malformed job field: {exc}") from exc
    return validate_pair(field, a, g1, g2)


def _result_dict(res: VResult) -> dict:
    return {"value": res.value, "s": res.s, "route": res.route}


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def cmd_v(args) -> int:
    pair = _load_job(args.input)
    rf = v_formula(pair)
    ro = v_oracle(pair)
    agree = rf.value == ro.value and rf.s == ro.s
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["v_formula", "v_oracle", "agree", "s_formula",
                         "s_oracle"])
        writer.writerow([rf.value, ro.value, str(agree).lower(), rf.s, ro.s])
    else:
        _emit_json({"formula": _result_dict(rf), "oracle": _result_dict(ro),
                    "agree": agree})
    return EXIT_OK if agree else EXIT_MISMATCH


def _breaks_json(filt: Filtration) -> list[dict]:
    out = []
    for u, sub in filt.breaks:
        out.append({
            "height": int(u),
            "order": sub.order,
            "generators": [f"s{i}t{j}" for i, j in sub.gens],
        })
    return out


def cmd_filtration(args) -> int:
    pair = _load_job(args.input)
    upper = upper_filtration(pair)
    lower = lower_filtration(pair)
    _emit_json({
        "upper": _breaks_json(upper),
        "lower": _breaks_json(lower),
        "fingerprint": filtration_fingerprint(upper),
        "quotient_compat": quotient_compat_check(pair),
    })
    return EXIT_OK


def _counterexample_family(field: FieldParams, c: FqElem) -> ExtensionPair:
    p = field.p
    depth = p * p - 1
    g1 = LaurentPoly.t_pow(field, -depth)
    g2 = LaurentPoly.t_pow(field, -depth, c) + LaurentPoly.t_pow(field, -1)
    return validate_pair(field, field.gen(), g1, g2)


def cmd_counterexample(args) -> int:
    field = _build_field(args.p, args.n, args.modulus)
    p = field.p
    a = field.gen()
    rows = []
    all_agree = True
    for c in field.elements():
        if c.is_in_prime_field():
            continue
        pair = _counterexample_family(field, c)
        rf = v_formula(pair)
        ro = v_oracle(pair)
        agree = rf.value == ro.value and rf.s == ro.s
        all_agree = all_agree and agree
        rows.append({
            "c": str(c),
            "v": rf.value,
            "v_oracle": ro.value,
            "agree": agree,
            "fingerprint": filtration_fingerprint(upper_filtration(pair)),
        })
    fingerprints = {row["fingerprint"] for row in rows}
    values = {row["v"] for row in rows}
    exceptional = sorted(row["c"] for row in rows if row["v"] == 1)
    minus_ap = -(a ** p)
    minus_a2 = -(a * a)
    expected = (
        all_agree
        and len(fingerprints) == 1
        and len(values) == 2
        and len(exceptional) == 1
        and exceptional[0] == str(minus_ap)
        and all(row["v"] == p for row in rows if row["c"] != exceptional[0])
    )
    _emit_json({
        "p": p,
        "n": field.n,
        "a": str(a),
        "rows": rows,
        "filtration_constant": len(fingerprints) == 1,
        "v_constant": len(values) == 1,
        "exceptional_c": exceptional,
        "minus_a_pow_p": str(minus_ap),
        "minus_a_squared": str(minus_a2),
        "exceptional_matches_minus_a_pow_p":
            exceptional == [str(minus_ap)],
        "exceptional_matches_minus_a_squared":
            exceptional == [str(minus_a2)],
        "all_routes_agree": all_agree,
        "expected_pattern": expected,
    })
    return EXIT_OK if expected else EXIT_MISMATCH


def _random_series(field: FieldParams, rng: random.Random,
                   max_degree: int) -> LaurentPoly:
    while True:
        terms = []
        for e in range(-max_degree, 0):
            if e % field.p == 0:
                continue
            c = field.random_element(rng)
            if not c.is_zero():
                terms.append((e, c))
        if terms:
            return LaurentPoly(field, terms)


def _sweep_jobs(field: FieldParams, seed: int, count: int,
                max_degree: int) -> list[tuple]:
    rng = random.Random(seed)
    spec = (field.p, field.n, field.modulus)
    jobs = []
    while len(jobs) < count:
        g1 = _random_series(field, rng, max_degree)
        g2 = _random_series(field, rng, max_degree)
        a = field.random_element(rng)
        if a.is_in_prime_field():
            continue
        try:
            validate_pair(field, a, g1, g2)
        except InputError:
            continue
        jobs.append((spec, str(a), g1.to_pairs(), g2.to_pairs()))
    return jobs


def _sweep_worker(job: tuple) -> tuple:
    (p, n, modulus), a_str, g1_pairs, g2_pairs = job
    field = FieldParams(p, n, modulus)
    pair = validate_pair(field, field.parse(a_str),
                         LaurentPoly.from_pairs(field, g1_pairs),
                         LaurentPoly.from_pairs(field, g2_pairs))
    rf = v_formula(pair)
    ro = v_oracle(pair)
    agree = rf.value == ro.value and rf.s == ro.s
    fingerprint = filtration_fingerprint(upper_filtration(pair))
    return (json.dumps(g1_pairs, separators=(",", ":")),
            json.dumps(g2_pairs, separators=(",", ":")),
            rf.value, ro.value, str(agree).lower(), rf.s, fingerprint)


def cmd_sweep(args) -> int:
    if args.count < 1:
        raise _ParseFailure("count must be positive")
    if args.max_degree < 1:
        raise _ParseFailure("max-degree must be positive")
    field = _build_field(args.p, args.n, args.modulus)
    jobs = _sweep_jobs(field, args.seed, args.count, args.max_degree)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_worker, jobs))
    else:
        results = [_sweep_worker(job) for job in jobs]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["g1", "g2", "v_formula", "v_oracle", "agree", "s",
                     "fingerprint"])
    ok = True
    for row in results:
        writer.writerow(row)
        ok = ok and row[4] == "true"
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vfunc",
        description="Exact v-values and ramification data for (Z/p)^2 "
                    "extensions of F_q((t)).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_v = sub.add_parser("v", help="evaluate both value routes on one pair")
    p_v.add_argument("--input", required=True, help="path to a JSON job file")
    p_v.add_argument("--format", choices=("json", "csv"), default="json")
    p_v.set_defaults(func=cmd_v)

    p_f = sub.add_parser("filtration", help="ramification filtration report")
    p_f.add_argument("--input", required=True, help="path to a JSON job file")
    p_f.set_defaults(func=cmd_filtration)

    p_c = sub.add_parser("counterexample",
                         help="sweep the fixed family over c outside F_p")
    p_c.add_argument("--p", type=int, required=True)
    p_c.add_argument("--n", type=int, required=True)
    p_c.add_argument("--modulus", default=None,
                     help='override modulus, e.g. "1,1,1"')
    p_c.set_defaults(func=cmd_counterexample)

    p_s = sub.add_parser("sweep",
                         help="random formula-versus-oracle cross-check")
    p_s.add_argument("--p", type=int, required=True)
    p_s.add_argument("--n", type=int, required=True)
    p_s.add_argument("--modulus", default=None)
    p_s.add_argument("--max-degree", type=int, required=True,
                     help="largest pole order allowed in g1, g2")
    p_s.add_argument("--seed", type=int, required=True)
    p_s.add_argument("--count", type=int, required=True)
    p_s.add_argument("--jobs", type=int, default=1,
                     help="worker processes (default 1)")
    p_s.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InputError as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
