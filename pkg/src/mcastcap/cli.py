"""Command-line front end.

Subcommands: analyze, bounds, pack, split, strength, gen, selftest.
Exit codes: 0 ok, 1 selftest failure, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds as bnd
from .connectivity import terminal_connectivity
from .errors import (
    BridgeBetweenTerminals,
    McastcapError,
    TooManyTrees,
    TooManyVertices,
)
from .instances import (
    example2_instance,
    example2_routing_scheme,
    random_instance,
    sample_instances,
    verify_routing_scheme,
)
from .multigraph import (
    Multigraph,
    Rate,
    TerminalSet,
    dump_instance,
    load_instance,
    prune_to_core,
    validate,
)
from .packing import (
    SteinerPacking,
    fractional_capacity_lp,
    half_integer_capacity,
    max_integer_packing,
    verify_packing,
)
from .splitting import eliminate_relays, lift_packing
from .strength import edge_strength


@dataclass
class CapacityReport:
    num_vertices: int
    num_edges: int
    num_terminals: int
    lam: int
    short_circuit: bool = False  # lambda(A) == 1: capacity is 1 outright
    k_int: int | None = None
    half_rate: Rate | None = None
    lp_rate: Rate | None = None
    eta: Rate | None = None
    bracket: "bnd.GammaBracket | None" = None
    bound_rows: list[tuple[str, str]] = field(default_factory=list)
    via_splitting: dict | None = None

    def to_dict(self) -> dict:
        d = {
            "vertices": self.num_vertices,
            "edges": self.num_edges,
            "terminals": self.num_terminals,
            "terminal_connectivity": self.lam,
        }
        if self.short_circuit:
            d["capacity"] = "1"
            d["note"] = "terminal connectivity 1: routing and coding capacity are both 1"
            return d
        d.update(
            {
                "integer_packing": self.k_int,
                "half_integer_rate": str(self.half_rate),
                "fractional_rate": str(self.lp_rate),
                "edge_strength": str(self.eta),
                "bracket": {
                    "lower": str(self.bracket.lower),
                    "upper": str(self.bracket.upper),
                    "tight": self.bracket.tight,
                },
                "bounds": [{"name": n, "value": v} for n, v in self.bound_rows],
            }
        )
        if self.via_splitting is not None:
            d["via_splitting"] = self.via_splitting
        return d

    def to_text(self, decimal: bool = False) -> str:
        def fmt(x) -> str:
            s = str(x)
            if decimal and isinstance(x, Fraction):
                s += f" ({float(x):.6f})"
            return s

        lines = [
            f"instance: |V|={self.num_vertices} |E|={self.num_edges} "
            f"|A|={self.num_terminals} lambda(A)={self.lam}"
        ]
        if self.short_circuit:
            lines.append("terminal connectivity 1: gamma = pi = 1")
            return "\n".join(lines)
        lines += [
            f"integer packing k        = {self.k_int}",
            f"half-integer rate        = {fmt(self.half_rate)}",
            f"fractional rate (LP)     = {fmt(self.lp_rate)}",
            f"edge strength eta        = {fmt(self.eta)}",
            f"gamma bracket            = [{fmt(self.bracket.lower)}, {fmt(self.bracket.upper)}]"
            + ("  (tight)" if self.bracket.tight else ""),
        ]
        if self.bound_rows:
            lines.append("bound table:")
            for name, value in self.bound_rows:
                lines.append(f"  {name:<42} {value}")
        if self.via_splitting is not None:
            v = self.via_splitting
            lines.append(
                f"via splitting: scale={v['scale']} packed={v['packed_trees']} "
                f"rate={v['rate']} lifted_ok={v['lifted_verifies']}"
            )
        return "\n".join(lines)


def analyze_instance(
    g: Multigraph, a: TerminalSet, via_splitting: bool = False
) -> CapacityReport:
    validate(g, a)
    lam = terminal_connectivity(g, a)
    report = CapacityReport(
        num_vertices=len(g.vertices),
        num_edges=len(g.edges),
        num_terminals=len(a.members),
        lam=lam,
    )
    if lam == 1:
        report.short_circuit = True
        return report
    core = prune_to_core(g, a)
    report.num_vertices = len(core.vertices)
    report.num_edges = len(core.edges)

    k, int_packing = max_integer_packing(core, a)
    assert verify_packing(core, a, int_packing)
    half, half_packing = half_integer_capacity(core, a)
    assert verify_packing(core, a, half_packing)
    lp, lp_packing = fractional_capacity_lp(core, a)
    assert verify_packing(core, a, lp_packing)
    eta, _ = edge_strength(core, a)

    report.k_int = k
    report.half_rate = half
    report.lp_rate = lp
    report.eta = eta
    report.bracket = bnd.GammaBracket(lp, min(Fraction(lam), eta), lp == min(Fraction(lam), eta))

    na = len(a.members)
    rows: list[tuple[str, str]] = []
    if na == 3:
        i_lb, h_lb, f_lb = bnd.theorem1_lower_bounds(lam)
        rows.append(("3-terminal integer lower bound", str(i_lb)))
        rows.append(("3-terminal half-integer lower bound", str(h_lb)))
        rows.append(("3-terminal fractional lower bound", str(f_lb)))
        gi, gh, gf = bnd.corollary1_gain_bounds(lam)
        rows.append(("3-terminal gain bound (integer)", str(gi)))
        rows.append(("3-terminal gain bound (half-integer)", str(gh)))
        rows.append(("3-terminal gain bound (fractional)", str(gf)))
    h_ex, f_lim = bnd.theorem3_lower_bound(lam, na)
    rows.append(("general half-integer lower bound", str(h_ex)))
    rows.append(("general fractional lower bound", str(f_lim)))
    rows.append(("general fractional gain bound", str(bnd.corollary2_gain_bound(na))))
    report.bound_rows = rows

    if via_splitting:
        # Splitting preserves every terminal min-cut but can strictly lose
        # packing value, so only the lower-bound chain is asserted: the
        # lifted packing must verify on the base graph, stay within the
        # direct LP rate, and dominate the general floor bound.
        split_g, history, scale = eliminate_relays(core, a)
        k_split, packed = max_integer_packing(split_g, a)
        lifted = lift_packing(history, packed)
        lifted_ok = verify_packing(history.base, a, lifted)
        lp_split, _ = fractional_capacity_lp(split_g, a)
        split_rate = Fraction(k_split, scale)
        report.via_splitting = {
            "scale": scale,
            "packed_trees": k_split,
            "lifted_trees": len(lifted.trees),
            "rate": str(split_rate),
            "lifted_verifies": lifted_ok,
            "lp_rate": str(lp_split / scale),
        }
        assert lifted_ok, "lifted packing failed verification"
        assert len(lifted.trees) == len(packed.trees)
        assert split_rate <= lp, "lifted rate is achievable, so bounded by the LP"
        floor_bound = (scale * na * lam - na + 2) // (2 * (na - 1))
        assert Fraction(floor_bound, scale) <= split_rate, (
            "splitting route fell below the guaranteed tree count"
        )
    return report


# -- subcommands -----------------------------------------------------------


def _read_instance(path: str) -> tuple[Multigraph, TerminalSet]:
    with open(path, "r", encoding="utf-8") as fh:
        return load_instance(fh.read())


def _packing_to_dict(p: SteinerPacking) -> dict:
    return {
        "denominator": p.denominator,
        "rate": str(p.rate),
        "trees": [
            {"edges": sorted(t.edge_ids), "multiplicity": str(mult)}
            for t, mult in p.trees
        ],
    }


def _cmd_analyze(args) -> int:
    g, a = _read_instance(args.file)
    report = analyze_instance(g, a, via_splitting=args.via_splitting)
    if args.format == "structured":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text(decimal=args.decimal))
    return 0


def _cmd_bounds(args) -> int:
    lam, na = args.lam, args.terminals
    if lam < 1 or na < 2:
        print("need connectivity >= 1 and >= 2 terminals", file=sys.stderr)
        return 2
    if lam == 1:
        print("terminal connectivity 1: gamma = pi = 1")
        return 0
    rows = []
    if na == 3:
        i_lb, h_lb, f_lb = bnd.theorem1_lower_bounds(lam)
        gi, gh, gf = bnd.corollary1_gain_bounds(lam)
        rows += [
            ("pi_i lower bound (3 terminals)", str(i_lb)),
            ("pi_1/2 lower bound (3 terminals)", str(h_lb)),
            ("pi_f lower bound (3 terminals)", str(f_lb)),
            ("G_i upper bound", str(gi)),
            ("G_1/2 upper bound", str(gh)),
            ("G_f upper bound", str(gf)),
        ]
    h_ex, f_lim = bnd.theorem3_lower_bound(lam, na)
    rows += [
        ("pi_1/2 lower bound (general)", str(h_ex)),
        ("pi_f lower bound (general)", str(f_lim)),
        ("G_f upper bound (general)", str(bnd.corollary2_gain_bound(na))),
    ]
    dec3 = bnd.decompose3(lam)
    decg = bnd.decompose_general(lam, na)
    rows += [
        ("3-terminal decomposition (k, delta, Delta)", f"({dec3.k}, {dec3.delta}, {dec3.big_delta})"),
        ("general decomposition (k, delta)", f"({decg.k}, {decg.delta})"),
    ]
    width = max(len(n) for n, _ in rows)
    print(f"lambda(A) = {lam}, |A| = {na}")
    for n, v in rows:
        print(f"  {n:<{width}}  {v}")
    return 0


def _cmd_pack(args) -> int:
    g, a = _read_instance(args.file)
    validate(g, a)
    if args.mode == "int":
        k, p = max_integer_packing(g, a)
        head = {"mode": "int", "value": str(k)}
    elif args.mode == "half":
        r, p = half_integer_capacity(g, a)
        head = {"mode": "half", "value": str(r)}
    else:
        r, p = fractional_capacity_lp(g, a)
        head = {"mode": "frac", "value": str(r)}
    assert verify_packing(g, a, p)
    print(json.dumps({**head, "packing": _packing_to_dict(p)}, indent=2))
    return 0


def _cmd_split(args) -> int:
    g, a = _read_instance(args.file)
    validate(g, a)
    core = prune_to_core(g, a)
    split_g, history, scale = eliminate_relays(core, a)
    out = {
        "scale": scale,
        "result": json.loads(dump_instance(split_g, a)),
    }
    if args.emit_history:
        out["history"] = {
            "events": [
                {
                    "pivot": ev.pivot,
                    "splitted": [ev.e_id, ev.f_id],
                    "splitting": ev.new_id,
                }
                for ev in history.events
            ],
            "deleted_pivots": list(history.deleted_pivots),
        }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_strength(args) -> int:
    g, a = _read_instance(args.file)
    validate(g, a)
    eta, witness = edge_strength(g, a)
    print(
        json.dumps(
            {
                "eta": str(eta),
                "witness": {
                    "blocks": [sorted(b) for b in witness.blocks],
                    "crossing_capacity": witness.crossing,
                },
            },
            indent=2,
        )
    )
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "example2":
        slots = tuple(int(s) for s in args.relays.split(",")) if args.relays else ()
        g, a = example2_instance(args.terminals, slots)
    else:
        g, a = random_instance(args.vertices, args.extra_edges, args.terminals, args.seed)
    print(dump_instance(g, a))
    return 0


# -- selftest --------------------------------------------------------------


def _selftest_appendix() -> list[str]:
    failures = []
    for lam in range(1, 10_001):
        dec = bnd.decompose3(lam)
        if (8 * dec.k + 3) // 6 + dec.delta != lam:
            failures.append(f"3-terminal decomposition broken at lambda={lam}")
        if dec.big_delta not in (1, 3, 5, 7) or (dec.delta == 1 and dec.big_delta != 1):
            failures.append(f"residue class broken at lambda={lam}")
    for lam in range(2, 201):
        for na in range(2, 21):
            _, _, _, holds = bnd.appendix_b_identity(lam, na)
            if not holds:
                failures.append(f"modular identity fails at lambda={lam}, a={na}")
    return failures


def _selftest_examples() -> list[str]:
    failures = []
    for na in range(3, 7):
        for slots in [(), (0,), (0, 2)]:
            g, a = example2_instance(na, slots)
            br = bnd.gamma_bracket(g, a)
            want = Fraction(na, na - 1)
            if not (br.tight and br.lower == want):
                failures.append(f"cycle family bracket wrong at a={na}, slots={slots}")
    for na in range(3, 9):
        g, a = example2_instance(na)
        s = example2_routing_scheme(na)
        if not verify_routing_scheme(g, a, s) or s.rate != Fraction(na, na - 1):
            failures.append(f"routing scheme invalid at a={na}")
    return failures


def _selftest_splitting() -> list[str]:
    failures = []
    for i, (g, a) in enumerate(sample_instances(15, 6, 5, 3, seed=1000)):
        try:
            split_g, history, scale = eliminate_relays(g, a)
        except McastcapError as exc:
            failures.append(f"splitting instance {i}: {exc}")
            continue
        if history.events and history.replay().edges != split_g.edges:
            failures.append(f"splitting instance {i}: history replay mismatch")
        if set(split_g.vertices) - a.members:
            failures.append(f"splitting instance {i}: relays remain")
    return failures


def _selftest_packing() -> list[str]:
    failures = []
    for i, (g, a) in enumerate(sample_instances(15, 6, 5, 3, seed=2000)):
        lam = terminal_connectivity(g, a)
        k, _ = max_integer_packing(g, a)
        half, _ = half_integer_capacity(g, a)
        lp, _ = fractional_capacity_lp(g, a)
        eta, _ = edge_strength(g, a)
        if not (k <= half <= lp <= min(Fraction(lam), eta)):
            failures.append(f"packing instance {i}: sandwich violated")
        if k < (6 * lam - 3) // 8:
            failures.append(f"packing instance {i}: 3-terminal bound violated")
    return failures


_SCOPES = {
    "appendix": _selftest_appendix,
    "examples": _selftest_examples,
    "splitting": _selftest_splitting,
    "packing": _selftest_packing,
}


def _cmd_selftest(args) -> int:
    scopes = list(_SCOPES) if args.scope == "all" else [args.scope]
    failed = False
    for scope in scopes:
        failures = _SCOPES[scope]()
        status = "ok" if not failures else "FAIL"
        print(f"selftest {scope}: {status}")
        for f in failures:
            print(f"  {f}")
            failed = True
    return 1 if failed else 0


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mcastcap",
        description="Exact routing-capacity analysis for undirected multicast networks",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full capacity report for an instance file")
    pa.add_argument("file")
    pa.add_argument("--via-splitting", action="store_true")
    pa.add_argument("--format", choices=["table", "structured"], default="table")
    pa.add_argument("--decimal", action="store_true")
    pa.set_defaults(func=_cmd_analyze)

    pb = sub.add_parser("bounds", help="closed-form bound table")
    pb.add_argument("--lambda", dest="lam", type=int, required=True)
    pb.add_argument("--terminals", type=int, default=3)
    pb.set_defaults(func=_cmd_bounds)

    pp = sub.add_parser("pack", help="Steiner tree packing certificate")
    pp.add_argument("file")
    pp.add_argument("--mode", choices=["int", "half", "frac"], default="int")
    pp.set_defaults(func=_cmd_pack)

    ps = sub.add_parser("split", help="eliminate relay nodes by splitting off")
    ps.add_argument("file")
    ps.add_argument("--emit-history", action="store_true")
    ps.set_defaults(func=_cmd_split)

    pt = sub.add_parser("strength", help="edge strength with witness partition")
    pt.add_argument("file")
    pt.set_defaults(func=_cmd_strength)

    pg = sub.add_parser("gen", help="generate an instance")
    gsub = pg.add_subparsers(dest="kind", required=True)
    ge = gsub.add_parser("example2")
    ge.add_argument("--terminals", type=int, required=True)
    ge.add_argument("--relays", default="", help="comma-separated gap slots")
    ge.set_defaults(func=_cmd_gen)
    gr = gsub.add_parser("random")
    gr.add_argument("--seed", type=int, required=True)
    gr.add_argument("--vertices", type=int, default=6)
    gr.add_argument("--extra-edges", type=int, default=5)
    gr.add_argument("--terminals", type=int, default=3)
    gr.set_defaults(func=_cmd_gen)

    pst = sub.add_parser("selftest", help="run built-in checks")
    pst.add_argument("scope", nargs="?", default="all", choices=["all", *_SCOPES])
    pst.set_defaults(func=_cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TooManyTrees, TooManyVertices) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (OSError, McastcapError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
