"""Command-line surface: sample elections into files, build maps and
microscopes, validate structures, convert formats.

Exit codes: 0 success (validate: all true), 1 I/O failure, 2 bad
arguments / parameter out of range.  Every sampling command appends a
JSON-line manifest with the fully resolved parameters and seed next to its
output, so any file can be regenerated exactly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .cartography import map_layout, microscope_layout
from .core import (
    ApprovalElection,
    GSTree,
    OrdinalElection,
    StructureWitness,
    validate_structure,
)
from .pabulib import parse_pabulib, serialize_pabulib
from .preflib import ParseError, parse_preflib, serialize_preflib
from .registry import CULTURES, SampleResult, sample
from .regimes import REGIMES, sample_regime

SEED_ENV_VAR = "PREFFORGE_SEED"

PROPERTY_NAMES = {
    "sp": "single_peaked",
    "spoc": "spoc",
    "sc": "single_crossing",
    "gs": "group_separable",
    "ci": "candidate_interval",
    "vi": "voter_interval",
}


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def _tree_to_obj(node):
    return node if isinstance(node, int) else [_tree_to_obj(c) for c in node]


def _tree_from_obj(node):
    return node if isinstance(node, int) else tuple(_tree_from_obj(c) for c in node)


def witness_to_json(witness: StructureWitness) -> str:
    payload = {"variant": witness.variant}
    if witness.order is not None:
        payload["order"] = list(witness.order)
    if witness.tree is not None:
        payload["tree"] = {
            "kind": witness.tree.kind,
            "root": _tree_to_obj(witness.tree.root),
        }
    return json.dumps(payload, indent=2)


def witness_from_json(text: str) -> StructureWitness:
    payload = json.loads(text)
    tree = None
    if payload.get("tree") is not None:
        tree = GSTree(payload["tree"]["kind"], _tree_from_obj(payload["tree"]["root"]))
    order = payload.get("order")
    return StructureWitness(
        payload["variant"], order=tuple(order) if order else None, tree=tree
    )


def load_election(path: str) -> "OrdinalElection | ApprovalElection":
    """Read an election file by extension: .soc -> ordinal, .toi/.toc/.soi
    -> approval (top tie group), .pb -> approval."""
    data = Path(path).read_bytes()
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix == "pb":
        return parse_pabulib(data).election
    parsed = parse_preflib(data, kind=suffix if suffix in ("soc", "soi", "toc", "toi") else None)
    if parsed.kind == "soc":
        return parsed.to_ordinal()
    return parsed.to_approval()


def _write_election(result: SampleResult, out: Path, fmt: str) -> None:
    # fixed title: file bytes depend only on (culture, parameters, seed)
    if result.is_ordinal or fmt == "toi":
        out.write_bytes(serialize_preflib(result.election))
    else:
        out.write_bytes(serialize_pabulib(result.election))


def _sample_one(args, m: int, n: int, seed: int, out: Path) -> dict:
    params = _culture_params(args)
    result = sample(args.culture, m, n, seed, **params)
    _write_election(result, out, args.format)
    manifest = dict(result.resolved)
    manifest["out"] = str(out)
    if result.witness is not None:
        witness_path = Path(str(out) + ".witness.json")
        witness_path.write_text(witness_to_json(result.witness) + "\n")
        manifest["witness"] = str(witness_path)
    if args.regime:
        manifest["regime"] = args.regime
    return manifest


def _culture_params(args) -> dict:
    params = {}
    simple = (
        "phi",
        "norm_phi",
        "alpha",
        "p",
        "radius",
        "top_x",
        "dim",
        "shape",
        "tree",
        "parties",
        "metric",
        "base",
        "rule",
    )
    for name in simple:
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if args.alpha_gamma is not None:
        params["gamma_shape"], params["gamma_scale"] = args.alpha_gamma
        if args.culture != "urn-gamma":
            raise ValueError("--alpha-gamma only applies to the urn-gamma culture")
        params.pop("alpha", None)
    return params


def cmd_sample(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    out = Path(args.out)
    if args.regime:
        m, n = sample_regime(args.regime, seed)
    else:
        if args.m is None or args.n is None:
            print("error: give --m and --n, or --regime", file=sys.stderr)
            return 2
        m, n = args.m, args.n

    jobs = []
    if args.count == 1:
        jobs.append((m, n, seed, out))
    else:
        for i in range(args.count):
            seed_i = seed + i
            m_i, n_i = sample_regime(args.regime, seed_i) if args.regime else (m, n)
            name = f"{out.stem}-{i:03d}{out.suffix}"
            jobs.append((m_i, n_i, seed_i, out.with_name(name)))

    manifest_path = Path(str(out) + ".manifest.json")
    try:
        with ThreadPoolExecutor(max_workers=min(8, len(jobs))) as pool:
            manifests = list(
                pool.map(lambda job: _sample_one(args, *job), jobs)
            )
        with manifest_path.open("a") as fh:
            for manifest in manifests:
                line = json.dumps(manifest, sort_keys=True)
                fh.write(line + "\n")
                print(line)
    except (ValueError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


def _load_many(paths) -> list[tuple[str, OrdinalElection]]:
    elections = []
    for path in paths:
        election = load_election(path)
        if not isinstance(election, OrdinalElection):
            raise ValueError(f"{path}: maps take ordinal elections")
        elections.append((Path(path).stem, election))
    return elections


def _write_embedding(embedding, out_prefix: str, extra: dict | None = None) -> None:
    Path(out_prefix + ".csv").write_text(embedding.to_csv())
    payload = json.loads(embedding.to_json())
    if extra:
        payload.update(extra)
    Path(out_prefix + ".json").write_text(json.dumps(payload, indent=2) + "\n")


def cmd_map(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        elections = _load_many(args.files)
    except (OSError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        embedding = map_layout(
            elections,
            include_refs=args.include_refs,
            distance=args.distance,
            seed=seed,
            restarts=args.restarts,
        )
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    distance_note = (
        "heuristic (upper bounds)" if args.distance == "heuristic" else "exact"
    )
    try:
        _write_embedding(embedding, args.out, {"distance": distance_note})
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    note = " (heuristic upper bounds)" if args.distance == "heuristic" else ""
    print(
        f"map: {len(embedding.labels)} points, stress {embedding.stress:.6g}, "
        f"kruskal {embedding.kruskal_stress:.6g}{note} -> {args.out}.csv/.json"
    )
    return 0


def cmd_microscope(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        election = load_election(args.file)
    except (OSError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if not isinstance(election, OrdinalElection):
        print("error: the microscope takes ordinal elections", file=sys.stderr)
        return 2
    embedding = microscope_layout(election, seed=seed)
    try:
        _write_embedding(embedding, args.out)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(
        f"microscope: {len(embedding.labels)} distinct votes, "
        f"stress {embedding.stress:.6g} -> {args.out}.csv/.json"
    )
    return 0


def cmd_validate(args) -> int:
    try:
        witness = witness_from_json(Path(args.witness).read_text())
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as err:
        print(f"error: bad witness file: {err}", file=sys.stderr)
        return 1
    expected = PROPERTY_NAMES[args.property]
    if witness.variant != expected:
        print(
            f"error: witness is {witness.variant}, expected {expected}",
            file=sys.stderr,
        )
        return 2
    all_true = True
    for path in args.files:
        try:
            election = load_election(path)
            ok = validate_structure(election, witness)
        except (OSError, ParseError, ValueError) as err:
            print(f"error: {path}: {err}", file=sys.stderr)
            return 1
        print(f"{path}: {'true' if ok else 'false'}")
        all_true = all_true and ok
    return 0 if all_true else 1


def _election_from_obj(obj) -> "OrdinalElection | ApprovalElection":
    if "votes" in obj:
        votes = np.array(obj["votes"], dtype=np.int64).reshape(-1, obj["m"])
        return OrdinalElection(obj["m"], votes)
    return ApprovalElection(
        obj["m"], tuple(frozenset(b) for b in obj["ballots"])
    )


def _election_to_obj(election) -> dict:
    if isinstance(election, OrdinalElection):
        return {
            "m": election.num_candidates,
            "votes": election.votes.tolist(),
        }
    return {
        "m": election.num_candidates,
        "ballots": [sorted(b) for b in election.ballots],
    }


def _rpc_dispatch(request: dict):
    from . import cartography, metrics
    from .registry import sample as registry_sample

    op = request["op"]
    if op == "swap_distance":
        return metrics.swap_distance(request["u"], request["v"])
    if op == "ballot_distance":
        return metrics.ballot_distance(
            set(request["u"]), set(request["v"]), request.get("metric", "hamming")
        )
    if op == "election_distance":
        e1 = _election_from_obj(request["e1"])
        e2 = _election_from_obj(request["e2"])
        if request.get("method", "exact") == "exact":
            return metrics.election_distance_exact(e1, e2)
        return metrics.election_distance_heuristic(
            e1,
            e2,
            restarts=request.get("restarts", 20),
            seed=request.get("seed", 0),
        )
    if op == "vote_distance_matrix":
        e = _election_from_obj(request["election"])
        D, mult = metrics.vote_distance_matrix(
            e, deduplicate=request.get("deduplicate", True)
        )
        return {"matrix": D.tolist(), "multiplicities": mult.tolist()}
    if op == "mds_embed":
        emb = cartography.mds_embed(
            np.array(request["matrix"], dtype=float),
            dims=request.get("dims", 2),
            max_iter=request.get("max_iter", 1000),
            rel_tol=request.get("rel_tol", 1e-6),
            seed=request.get("seed", 0),
            n_init=request.get("n_init", 4),
        )
        return {
            "coordinates": emb.coordinates.tolist(),
            "stress": emb.stress,
            "kruskal_stress": emb.kruskal_stress,
            "n_iter": emb.n_iter,
        }
    if op == "sample":
        result = registry_sample(
            request["culture"],
            request["m"],
            request["n"],
            request["seed"],
            **request.get("params", {}),
        )
        payload = {"election": _election_to_obj(result.election)}
        payload["resolved"] = result.resolved
        if result.witness is not None:
            payload["witness"] = json.loads(witness_to_json(result.witness))
        return payload
    raise ValueError(f"unknown rpc op {op!r}")


def cmd_rpc(args) -> int:
    """One JSON request on stdin, one JSON response on stdout.  Library
    errors come back verbatim in the error field (exit 0); only transport
    problems exit nonzero."""
    try:
        request = json.load(sys.stdin)
    except json.JSONDecodeError as err:
        print(json.dumps({"ok": False, "error": f"bad request: {err}"}))
        return 2
    try:
        result = _rpc_dispatch(request)
    except (ValueError, TypeError, KeyError) as err:
        print(json.dumps({"ok": False, "error": str(err)}))
        return 0
    print(json.dumps({"ok": True, "result": result}))
    return 0


def cmd_convert(args) -> int:
    try:
        data = Path(args.infile).read_bytes()
        in_suffix = Path(args.infile).suffix.lower().lstrip(".")
        out_suffix = Path(args.outfile).suffix.lower().lstrip(".")
        if in_suffix == "pb":
            election = parse_pabulib(data).election
        elif in_suffix in ("soc", "soi", "toc", "toi"):
            parsed = parse_preflib(data, kind=in_suffix)
            election = parsed.to_ordinal() if in_suffix == "soc" else parsed.to_approval()
        else:
            print(f"error: unknown input format .{in_suffix}", file=sys.stderr)
            return 2
        if out_suffix == "pb":
            if isinstance(election, OrdinalElection):
                print("error: cannot write ordinal votes as .pb", file=sys.stderr)
                return 2
            payload = serialize_pabulib(election)
        elif out_suffix in ("soc", "toi"):
            payload = serialize_preflib(election)
        else:
            print(f"error: unknown output format .{out_suffix}", file=sys.stderr)
            return 2
        Path(args.outfile).write_bytes(payload)
    except (OSError, ParseError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefforge",
        description="Sample ordinal/approval elections, measure distances, "
        "and lay out maps of elections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample an election into a file")
    p.add_argument("--culture", required=True, choices=CULTURES)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=1, help="generate this many files")
    p.add_argument("--regime", choices=sorted(REGIMES), help="draw m, n from a regime")
    p.add_argument("--phi", type=float)
    p.add_argument("--norm-phi", dest="norm_phi", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--alpha-gamma", dest="alpha_gamma", nargs=2, type=float,
                   metavar=("SHAPE", "SCALE"))
    p.add_argument("--p", type=float)
    p.add_argument("--radius", type=float)
    p.add_argument("--top-x", dest="top_x", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--shape", choices=("cube", "sphere", "gaussian"))
    p.add_argument("--tree", choices=("balanced", "caterpillar"))
    p.add_argument("--parties", type=int)
    p.add_argument("--metric", choices=("hamming", "jaccard"))
    p.add_argument("--rule", choices=("top", "radius", "candidate-top"))
    p.add_argument("--base", help="ordinal base culture for --culture truncated")
    p.add_argument("--format", choices=("pb", "toi"), default="pb",
                   help="file format for approval cultures")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("map", help="embed a set of election files")
    p.add_argument("files", nargs="+")
    p.add_argument("--out", required=True, help="output prefix (.csv/.json)")
    p.add_argument("--distance", choices=("exact", "heuristic"), default="heuristic")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    refs = p.add_mutually_exclusive_group()
    refs.add_argument("--include-refs", dest="include_refs", action="store_true",
                      default=True)
    refs.add_argument("--no-refs", dest="include_refs", action="store_false")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("microscope", help="embed one election's votes")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output prefix (.csv/.json)")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_microscope)

    p = sub.add_parser("validate", help="check files against a structure witness")
    p.add_argument("files", nargs="+")
    p.add_argument("--property", required=True, choices=sorted(PROPERTY_NAMES))
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="convert between election file formats")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser(
        "rpc", help="one JSON request on stdin, one JSON response on stdout"
    )
    p.set_defaults(func=cmd_rpc)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
