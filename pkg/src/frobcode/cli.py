"""Command-line front end.

Subcommands: ring, weights, verify, analyze, graph, dual, search.
Reports are deterministic for fixed inputs and seed; rationals are
printed as exact "p/q" strings.  Exit codes: 0 all checks pass, 1 a
verification check failed, 2 usage or parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .codes import (
    build_code,
    modular_index,
    parse_code_file,
    sweep_class_coset_sums,
    sweep_code_correlation,
    sweep_coordinate_identities,
    two_weight_profile,
)
from .duality import dual_pipeline
from .errors import (
    CapExceededError,
    CharacterError,
    FrobcodeError,
    IdentityCheckError,
    PreconditionError,
    SpecParseError,
    ZeroColumnError,
)
from .graphs import (
    build_coset_graph,
    measure_srg,
    predicted_dual_srg,
    predicted_srg,
)
from .homweight import (
    IDENTITY_CHECKS,
    check_correlation_vectors,
    correlation_vectors_lhs,
    correlation_vectors_rhs,
    weight_table,
)
from .rings import ring_from_text
from .search import search_modular_codes
from .spans import enum_cap

USAGE_ERRORS = (SpecParseError, ZeroColumnError, CapExceededError,
                PreconditionError)
CHECK_ERRORS = (CharacterError, IdentityCheckError)


def _rat(x):
    if x is None:
        return None
    return str(Fraction(x))


def _emit_json(payload, path):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as handle:
            handle.write(text)
    else:
        print(text, end="")


def _load_code(path, cap):
    with open(path) as handle:
        data = parse_code_file(handle.read())
    ring = ring_from_text(data.ring_text)
    generator = np.array(data.rows, dtype=np.int32)
    return ring, build_code(ring, generator, cap)


# --------------------------------------------------------- ring, weights


def cmd_ring(args):
    ring = ring_from_text(args.spec)
    table = weight_table(ring)
    zero_set = np.flatnonzero(table.numerators == 0)
    print(f"ring: {ring.spec.text()}")
    print(f"order: {ring.order}")
    print(f"units: {len(ring.units)}")
    print(f"character exponent: {ring.exponent}")
    print("weights:")
    for i in range(ring.order):
        print(f"  {ring.labels[i]}: {table.value(i)}")
    print("zero-weight elements: "
          + " ".join(ring.labels[i] for i in zero_set))
    names = []
    for name, fn in IDENTITY_CHECKS:
        if name in ("zero-set", "coset-sums"):
            fn(ring, table)
            names.append(name)
            print(f"check {name}: pass")
    if args.json is not None:
        _emit_json({
            "ring": ring.spec.text(),
            "order": ring.order,
            "units": len(ring.units),
            "character_exponent": ring.exponent,
            "weights": {ring.labels[i]: _rat(table.value(i))
                        for i in range(ring.order)},
            "zero_weight_elements": [ring.labels[int(i)] for i in zero_set],
            "checks": {name: True for name in names},
        }, args.json)
    return 0


def cmd_weights(args):
    ring = ring_from_text(args.spec)
    table = weight_table(ring)
    for i in range(ring.order):
        print(f"{ring.labels[i]}: {table.value(i)}")
    return 0


# ------------------------------------------------------------- verify


def _sampled_word_correlation(ring, k, table, sample, seed):
    rng = np.random.default_rng(seed)
    order = ring.order
    for _ in range(sample):
        g = rng.integers(0, order, size=k)
        h = rng.integers(0, order, size=k)
        if not g.any() or not h.any():
            continue
        s = int(rng.integers(0, order))
        lhs = correlation_vectors_lhs(ring, g, h, s, table)
        rhs = correlation_vectors_rhs(ring, g, h, s, table=table)
        if lhs != rhs:
            raise IdentityCheckError(
                "word correlation identity fails",
                witness={"g": g.tolist(), "h": h.tolist(), "s": s,
                         "lhs": str(lhs), "rhs": str(rhs)})


def cmd_verify(args):
    ring = ring_from_text(args.spec)
    table = weight_table(ring)
    if args.inject_fault:
        for u in ring.units_array:
            table = table.with_bumped_numerator(int(u), 1)
    results = []
    for name, fn in IDENTITY_CHECKS:
        fn(ring, table)
        results.append((name, "pass"))
        print(f"check {name}: pass")
    for k in (1, 2):
        name = f"word-correlation-k{k}"
        try:
            check_correlation_vectors(ring, k, table, args.cap)
            status = "pass"
        except CapExceededError:
            if args.full:
                raise
            _sampled_word_correlation(ring, k, table, args.sample,
                                      args.seed)
            status = f"pass (sampled, n={args.sample}, seed={args.seed})"
        results.append((name, status))
        print(f"check {name}: {status}")
    if args.json is not None:
        _emit_json({
            "ring": ring.spec.text(),
            "checks": {name: status for name, status in results},
        }, args.json)
    return 0


# ------------------------------------------------------------- analyze


def _full_sweeps(code, args):
    full = args.full or code.ring.order ** code.n <= 4096
    if args.sample is not None and not args.full:
        full = False
    return full


def _profile_payload(profile):
    if profile is None:
        return None
    return {
        "n": profile.n,
        "size": profile.size,
        "b0": profile.b0,
        "w1": _rat(profile.w1),
        "w2": _rat(profile.w2),
        "b1": profile.b1,
        "b2": profile.b2,
        "index": _rat(profile.index),
        "trivial": profile.trivial,
    }


def cmd_analyze(args):
    ring, code = _load_code(args.file, args.cap)
    index = modular_index(code)
    profile = two_weight_profile(code, require_modular=index is not None)
    checks = {}
    if index is not None:
        full = _full_sweeps(code, args)
        sweep_code_correlation(code, full=full, seed=args.seed, cap=args.cap)
        checks["code-correlation"] = True
        if profile is not None:
            sweep_class_coset_sums(code, full=full, seed=args.seed,
                                   cap=args.cap)
            checks["class-coset-sums"] = True
            sweep_coordinate_identities(code)
            checks["coordinate-identities"] = True
    histogram = {_rat(w): c for w, c in code.weight_distribution().items()}
    payload = {
        "ring": ring.spec.text(),
        "k": code.k,
        "n": code.n,
        "size": code.size,
        "b0": code.b0,
        "histogram": histogram,
        "modular_index": _rat(index),
        "profile": _profile_payload(profile),
        "lemma_checks": checks,
    }
    _emit_json(payload, args.json)
    return 0


# ---------------------------------------------------------- graph, dual


def _dot_text(graph):
    ring = graph.code.ring
    lines = ["graph coset_graph {"]
    for i, rep in enumerate(graph.representatives):
        label = " ".join(ring.labels[int(v)] for v in rep)
        lines.append(f'  v{i} [label="{label}"];')
    adjacency = graph.adjacency
    for i in range(len(adjacency)):
        for j in range(i + 1, len(adjacency)):
            if adjacency[i, j]:
                lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args):
    ring, code = _load_code(args.file, args.cap)
    profile = two_weight_profile(code, require_modular=True)
    if profile is None:
        raise PreconditionError(
            "graph construction needs a two-weight code")
    graph = build_coset_graph(code)
    measured = measure_srg(graph.adjacency)
    predicted = predicted_srg(profile)
    if args.dot is not None:
        with open(args.dot, "w") as handle:
            handle.write(_dot_text(graph))
        print(f"wrote {args.dot}: {len(graph.representatives)} vertices, "
              f"{int(graph.adjacency.sum()) // 2} edges")
    if args.cert or args.dot is None:
        print(f"measured:  N={measured.vertices} K={measured.degree} "
              f"lambda={measured.common_adjacent} "
              f"mu={measured.common_nonadjacent} "
              f"trivial={str(measured.trivial).lower()}")
        print(f"predicted: N={predicted.vertices} K={predicted.degree} "
              f"lambda={predicted.common_adjacent} "
              f"mu={predicted.common_nonadjacent} "
              f"trivial={str(predicted.trivial).lower()}")
    if measured != predicted:
        raise IdentityCheckError(
            "measured graph parameters disagree with the closed forms",
            witness={"measured": measured.as_tuple(),
                     "predicted": predicted.as_tuple()})
    print("graph parameters: pass")
    return 0


def cmd_dual(args):
    ring, code = _load_code(args.file, args.cap)
    report = dual_pipeline(code, args.cap)
    predicted = predicted_dual_srg(
        two_weight_profile(code, require_modular=True))
    payload = {
        "ring": ring.spec.text(),
        "w1_dual": _rat(report.w1_dual),
        "w2_dual": _rat(report.w2_dual),
        "b1_dual": report.b1_dual,
        "b2_dual": report.b2_dual,
        "dual_modular_index": "1",
        "srg_measured": list(report.srg.as_tuple()),
        "srg_predicted": list(predicted.as_tuple()),
        "trivial": report.trivial,
        "checks": {
            "size-preserved": True,
            "histogram-support": True,
            "zero-subcode-trivial": True,
            "modular-index-one": True,
            "graph-parameters": True,
            "triviality-transfer": True,
            "message-classification": True,
            "smaller-class-spans": True,
        },
    }
    _emit_json(payload, args.json)
    return 0


# -------------------------------------------------------------- search


def _record_line(rec):
    bits = [f"[{rec.classification}]",
            f"points={','.join(str(p) for p in rec.point_ids)}",
            f"r={rec.index}", f"n={rec.n}", f"|C|={rec.size}",
            f"b0={rec.b0}",
            "w=(" + ",".join(str(w) for w in rec.weights) + ")"]
    if rec.srg is not None:
        bits.append("srg=" + str(rec.srg.as_tuple()).replace(" ", ""))
        bits.append(f"trivial={str(rec.srg.trivial).lower()}")
    if rec.dual is not None:
        bits.append(f"dual_w=({rec.dual.w1_dual},{rec.dual.w2_dual})")
    if rec.equivalence is not None:
        cert = rec.equivalence.pds
        bits.append("pds=" + (
            "none" if cert is None else str(cert.srg_params().as_tuple())
            .replace(" ", "")))
    return " ".join(bits)


def _record_payload(rec):
    payload = {
        "ring": rec.ring_text,
        "k": rec.k,
        "point_ids": list(rec.point_ids),
        "index": _rat(rec.index),
        "n": rec.n,
        "size": rec.size,
        "b0": rec.b0,
        "classification": rec.classification,
        "weights": [_rat(w) for w in rec.weights],
        "profile": _profile_payload(rec.profile),
        "srg": list(rec.srg.as_tuple()) if rec.srg is not None else None,
        "trivial": rec.srg.trivial if rec.srg is not None else None,
    }
    if rec.dual is not None:
        payload["dual"] = {
            "w1_dual": _rat(rec.dual.w1_dual),
            "w2_dual": _rat(rec.dual.w2_dual),
            "srg": list(rec.dual.srg.as_tuple()),
        }
    else:
        payload["dual"] = None
    if rec.equivalence is not None:
        cert = rec.equivalence.pds
        payload["equivalence"] = {
            "two_weight": rec.equivalence.two_weight,
            "pds": None if cert is None else {
                "group_size": cert.group_size,
                "set_size": cert.set_size,
                "lam": cert.lam,
                "mu": cert.mu,
            },
            "omega_with_zero_submodule":
                rec.equivalence.omega_with_zero_submodule,
            "complement_submodule": rec.equivalence.complement_submodule,
        }
    else:
        payload["equivalence"] = None
    return payload


def _parse_search_params(tokens):
    params = {"k": 2, "n_max": 4, "mult_cap": None}
    for token in tokens:
        if "=" not in token:
            raise SpecParseError(
                f"search parameter {token!r} is not of the form key=value")
        key, _, value = token.partition("=")
        if key not in params:
            raise SpecParseError(f"unknown search parameter {key!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise SpecParseError(
                f"search parameter {key!r} needs an integer, got {value!r}")
    return params


def cmd_search(args):
    ring = ring_from_text(args.spec)
    params = _parse_search_params(args.params)
    records = search_modular_codes(
        ring, params["k"], params["n_max"], index_one=args.index1,
        mult_cap=params["mult_cap"], cap=args.cap)
    if args.dedupe:
        seen = set()
        kept = []
        for rec in records:
            sig = (rec.point_ids, rec.index)
            if sig in seen:
                continue
            seen.add(sig)
            kept.append(rec)
        records = kept
    counts = {"one-weight": 0, "two-weight": 0, "mixed": 0}
    for rec in records:
        counts[rec.classification] += 1
        print(_record_line(rec))
    print(f"candidates: {len(records)} "
          f"(one-weight: {counts['one-weight']}, "
          f"two-weight: {counts['two-weight']}, "
          f"mixed: {counts['mixed']})")
    if args.json is not None:
        _emit_json({
            "ring": ring.spec.text(),
            "k": params["k"],
            "n_max": params["n_max"],
            "index_one": bool(args.index1),
            "records": [_record_payload(rec) for rec in records],
        }, args.json)
    return 0


# ------------------------------------------------------------- plumbing


def build_parser():
    parser = argparse.ArgumentParser(
        prog="frobcode",
        description="Finite Frobenius rings, homogeneous weights, "
                    "two-weight codes, and their graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True):
        p.add_argument("--cap", type=int, default=None,
                       help="enumeration cap override (default: "
                            f"{enum_cap()}, env FROBCODE_CAP)")
        if json_flag:
            p.add_argument("--json", metavar="PATH", nargs="?", const="",
                           default=None,
                           help="emit a JSON report (to PATH, or stdout "
                                "when no path is given)")

    p = sub.add_parser("ring", help="inspect a ring and its weight table")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("weights", help="print the weight table")
    p.add_argument("spec")
    common(p, json_flag=False)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("verify", help="run the weight identity suite")
    p.add_argument("spec")
    p.add_argument("--full", action="store_true",
                   help="insist on exhaustive sweeps (error if too large)")
    p.add_argument("--sample", type=int, default=200,
                   help="sample count for oversized sweeps (default 200)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true",
                   help=argparse.SUPPRESS)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="report on a code file")
    p.add_argument("file")
    p.add_argument("--full", action="store_true")
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="coset graph of a two-weight code")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH", default=None,
                   help="write the graph in DOT format")
    p.add_argument("--cert", action="store_true",
                   help="print measured vs predicted parameters")
    common(p, json_flag=False)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("dual", help="dual code certification")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("search", help="enumerate modular codes")
    p.add_argument("spec")
    p.add_argument("params", nargs="*", metavar="key=value",
                   help="k=K (default 2), n_max=N (default 4), mult_cap=M")
    p.add_argument("--index1", action="store_true",
                   help="restrict to modular index 1")
    p.add_argument("--dedupe", action="store_true",
                   help="drop candidates with a repeated column-multiset "
                        "signature (approximates monomial-class dedupe)")
    common(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CHECK_ERRORS as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness:
            print(f"witness: {witness}", file=sys.stderr)
        return 1
    except FrobcodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
