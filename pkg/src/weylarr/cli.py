"""Command-line front end: ``weylarr roots|pairs|restrict|verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .arrangement import card_theorem_check, hyperplane_restriction_size, neighborhood_decomposition
from .rootsys import RootSystemId, admissible_ids, build_root_system
from .subsystems import classify_pair, pair_orbits
from .verify import EXHAUSTIVE, REPRESENTATIVES, jsonable, run_suite, summarize, write_report

SCHEMA_VERSION = 1


class Emitter:
    """Writes either a plain-text table or line-delimited JSON records."""

    def __init__(self, command: str, inputs: dict, as_json: bool, out=None):
        self.command = command
        self.inputs = inputs
        self.as_json = as_json
        self.out = out or sys.stdout
        self.t0 = time.perf_counter()

    def record(self, result: dict):
        rec = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "version": __version__,
            "elapsed": round(time.perf_counter() - self.t0, 6),
            "result": jsonable(result),
        }
        self.out.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")

    def text(self, line: str = ""):
        if not self.as_json:
            self.out.write(line + "\n")


def _parse_type(text: str) -> RootSystemId:
    return RootSystemId.parse(text).canonical()


def cmd_roots(args, em: Emitter) -> int:
    rs = build_root_system(_parse_type(args.type))
    em.text(f"{rs.id}: {rs.n_positive} positive roots, h = {rs.coxeter_number}, exponents = {list(rs.exponents)}")
    em.text(f"highest root theta = {rs.highest_root}")
    em.text(f"{'#':>4}  {'height':>6}  {'length':<5}  root")
    for k, r in enumerate(rs.positive_roots, start=1):
        length = "long" if rs.is_long(r) else "short"
        if em.as_json:
            em.record({"index": k, "coeffs": list(r.coeffs), "root": str(r), "height": r.height, "length": length,
                       "is_highest": r == rs.highest_root, "coxeter_number": rs.coxeter_number, "exponents": list(rs.exponents)})
        em.text(f"{k:>4}  {r.height:>6}  {length:<5}  {r}")
    return 0


def cmd_pairs(args, em: Emitter) -> int:
    rs = build_root_system(_parse_type(args.type))
    if rs.rank < 3:
        em.text(f"{rs.id}: pair classification requires ℓ ≥ 3")
        if em.as_json:
            em.record({"skipped": "ℓ ≥ 3 required"})
        return 0
    orbits = pair_orbits(rs)
    orbit_of = {p: o.index for o in orbits for p in o.members}
    if args.orbits:
        shown = [o for o in orbits if not args.ro_only or o.is_ro]
        em.text(f"{'orbit':>5}  {'size':>5}  {'RO':<3}  representative")
        for o in shown:
            a, b = (rs.positive_roots[x] for x in o.representative)
            rep = [o.representative[0] + 1, o.representative[1] + 1]
            em.text(f"{o.index:>5}  {o.size:>5}  {'yes' if o.is_ro else 'no':<3}  #{rep[0]} {a}, #{rep[1]} {b}")
            if em.as_json:
                em.record({"orbit": o.index, "size": o.size, "is_ro": o.is_ro, "representative": rep, "roots": [str(a), str(b)]})
        em.text(f"{len(shown)} orbit(s), {sum(o.is_ro for o in shown)} RO")
        return 0
    N = rs.n_positive
    rows = []
    for i in range(N):
        for j in range(i + 1, N):
            if rs.IP[i, j] != 0:
                continue
            pc = classify_pair(rs, i, j)
            if args.a12_only and not pc.is_a12:
                continue
            if args.ro_only and not pc.is_ro:
                continue
            rows.append(pc)
    em.text(f"{'pair':>9}  {'A1^2':<4}  {'RO':<3}  {'orbit':>5}  {'span':<8}  roots")
    for pc in rows:
        i, j = pc.indices
        orb = orbit_of.get((i, j))
        em.text(f"{i + 1:>4},{j + 1:<4}  {'yes' if pc.is_a12 else 'no':<4}  {'yes' if pc.is_ro else 'no':<3}  "
                f"{'' if orb is None else orb:>5}  {pc.span_label:<8}  {pc.pair[0]}, {pc.pair[1]}")
        if em.as_json:
            em.record({"pair": [i + 1, j + 1], "roots": [str(pc.pair[0]), str(pc.pair[1])], "is_a12": pc.is_a12,
                       "is_ro": pc.is_ro, "orbit": orb, "span_type": pc.span_label})
    em.text(f"{len(rows)} pair(s); {len(orbits)} A1^2 orbit(s), {sum(o.is_ro for o in orbits)} RO")
    return 0


def _resolve_pair(rs, spec: str) -> tuple[int, int]:
    spec = spec.strip()
    if spec.startswith("orbit:"):
        k = int(spec.split(":", 1)[1])
        orbits = pair_orbits(rs)
        if not 0 <= k < len(orbits):
            raise ValueError(f"orbit index {k} out of range (0..{len(orbits) - 1})")
        return orbits[k].representative
    parts = spec.split(",")
    if len(parts) != 2:
        raise ValueError(f"pair spec {spec!r} must be 'i,j' or 'orbit:k'")
    i, j = (int(p) - 1 for p in parts)
    N = rs.n_positive
    if not (0 <= i < N and 0 <= j < N) or i == j:
        raise ValueError(f"root indices must be distinct and in 1..{N}")
    return i, j


def cmd_restrict(args, em: Emitter) -> int:
    rs = build_root_system(_parse_type(args.type))
    if rs.rank < 3:
        raise ValueError("restriction to an A1^2 subspace requires ℓ ≥ 3")
    i, j = _resolve_pair(rs, args.pair)
    pc = classify_pair(rs, i, j)
    if not pc.is_a12:
        raise ValueError(f"{pc.pair[0]}, {pc.pair[1]} is not an A1^2 set (span type {pc.span_label})")
    nd = neighborhood_decomposition(rs, i, j)
    card = card_theorem_check(rs, i, j, nd=nd)
    w = card.witness
    exps = rs.exponents
    result = {
        "type": str(rs.id),
        "pair": [min(i, j) + 1, max(i, j) + 1],
        "roots": w["pair"],
        "is_ro": pc.is_ro,
        "|A|": rs.n_positive,
        "|A^H1|": hyperplane_restriction_size(rs, i),
        "|A^H2|": hyperplane_restriction_size(rs, j),
        "|A^X|": nd.size,
        "decomposition": dict(nd.counts),
        "K0": nd.k0,
        "K_b2(b1)": nd.k1,
        "K_b1(b2)": nd.k2,
        "difference": [w["|A^H1|-|A^X|"], w["|A^H2|-|A^X|"]],
        "expected": w["expected"],
        "expected_rule": "h/2" if pc.is_ro else "m_(l-1)",
        "h/2": Fraction(rs.coxeter_number, 2),
        "m_(l-1)": exps[-2],
        "passed": card.passed,
    }
    if em.as_json:
        em.record(result)
    else:
        em.text(f"{rs.id}  X = H({w['pair'][0]}) ∩ H({w['pair'][1]})  RO: {'yes' if pc.is_ro else 'no'}")
        em.text(f"|A| = {rs.n_positive}   |A^H1| = {result['|A^H1|']}   |A^H2| = {result['|A^H2|']}   |A^X| = {nd.size}")
        em.text("decomposition: " + ", ".join(f"{k} = {v}" for k, v in nd.counts.items()))
        em.text(f"K0 = {nd.k0}   K_b2(b1) = {nd.k1}   K_b1(b2) = {nd.k2}")
        em.text(f"difference = {result['difference'][0]}, {result['difference'][1]}   "
                f"expected {result['expected_rule']} = {w['expected']}   {'ok' if card.passed else 'MISMATCH'}")
    return 0 if card.passed else 1


def _scope(values) -> list[RootSystemId]:
    if not values or any(v.lower() == "all" for v in values):
        return admissible_ids()
    out = []
    for v in values:
        for part in v.split(","):
            if part.strip():
                out.append(_parse_type(part))
    return sorted(set(out))


def cmd_verify(args, em: Emitter) -> int:
    scope = _scope(args.scope)
    results = run_suite(scope, depth=args.depth, max_lattice_rank=args.max_lattice_rank)
    counts = summarize(results)
    if args.report:
        write_report(results, args.report, extra={"schema_version": SCHEMA_VERSION, "version": __version__})
    if em.as_json:
        for r in results:
            em.record(r.to_record())
        em.record({"summary": counts})
    else:
        per: dict[str, dict[str, int]] = {}
        for r in results:
            sysname = r.check_id.split("/")[1]
            d = per.setdefault(sysname, {"pass": 0, "fail": 0, "skipped": 0})
            d[r.status] += 1
        em.text(f"{'system':<6}  {'pass':>5}  {'fail':>5}  {'skipped':>7}")
        for k, d in per.items():
            em.text(f"{k:<6}  {d['pass']:>5}  {d['fail']:>5}  {d['skipped']:>7}")
        for r in results:
            if r.status == "fail" or (args.verbose and r.status == "skipped"):
                em.text(f"{r.status.upper():<7} {r.check_id}  {r.reason or json.dumps(r.to_record()['witness'], ensure_ascii=False)[:400]}")
        em.text(f"total: {counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    return 1 if counts["fail"] else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylarr", description="Weyl arrangements, A1^2 restrictions and their exponents.")
    p.add_argument("--version", action="version", version=f"weylarr {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", help="positive roots, heights, highest root, h, exponents")
    r.add_argument("type")
    r.add_argument("--json", action="store_true")

    q = sub.add_parser("pairs", help="classify orthogonal pairs of positive roots")
    q.add_argument("type")
    q.add_argument("--orbits", action="store_true", help="list W-orbits of A1^2 sets")
    q.add_argument("--ro-only", action="store_true")
    q.add_argument("--a12-only", action="store_true")
    q.add_argument("--json", action="store_true")

    x = sub.add_parser("restrict", help="restriction sizes and K-sums for one A1^2 subspace")
    x.add_argument("type")
    x.add_argument("pair", help="'i,j' (1-based root indices from `roots`) or 'orbit:k'")
    x.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--scope", nargs="*", default=["all"], help="types such as D4 E8, or 'all'")
    v.add_argument("--depth", choices=[EXHAUSTIVE, REPRESENTATIVES], default=EXHAUSTIVE)
    v.add_argument("--max-lattice-rank", type=int, default=6)
    v.add_argument("--report", metavar="FILE", help="write line-delimited records to FILE")
    v.add_argument("--json", action="store_true")
    v.add_argument("--verbose", action="store_true", help="also list skipped checks")
    return p


COMMANDS = {"roots": cmd_roots, "pairs": cmd_pairs, "restrict": cmd_restrict, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "json")}
    em = Emitter(args.command, inputs, getattr(args, "json", False))
    try:
        return COMMANDS[args.command](args, em)
    except ValueError as e:
        sys.stderr.write(f"weylarr {args.command}: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
