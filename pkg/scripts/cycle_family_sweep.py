#!/usr/bin/env python3
"""Sweep the relay-cycle family and print the exact capacity quantities.

For each terminal count the fractional LP rate, edge strength, and gamma
bracket land on a/(a-1), while the integer packing stays at 1 — the gap the
closed-form gain bounds quantify.
"""

import argparse
from fractions import Fraction

from mcastcap import (
    example2_instance,
    example2_routing_scheme,
    fractional_capacity_lp,
    half_integer_capacity,
    max_integer_packing,
    terminal_connectivity,
    verify_routing_scheme,
)
from mcastcap.cli import analyze_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-terminals", type=int, default=7)
    ap.add_argument("--relays", default="0", help="comma-separated gap slots")
    args = ap.parse_args()
    slots = tuple(int(s) for s in args.relays.split(",")) if args.relays else ()

    print(f"{'a':>3} {'lambda':>6} {'k':>3} {'half':>6} {'LP':>6} {'eta':>6} "
          f"{'bracket':>12} {'scheme':>7}")
    for a in range(3, args.max_terminals + 1):
        g, terms = example2_instance(a, tuple(s for s in slots if s < a))
        rep = analyze_instance(g, terms)
        scheme = example2_routing_scheme(a, tuple(s for s in slots if s < a))
        ok = verify_routing_scheme(g, terms, scheme)
        bracket = f"[{rep.bracket.lower}, {rep.bracket.upper}]"
        print(f"{a:>3} {rep.lam:>6} {rep.k_int:>3} {str(rep.half_rate):>6} "
              f"{str(rep.lp_rate):>6} {str(rep.eta):>6} {bracket:>12} "
              f"{str(scheme.rate) + (' ok' if ok else ' BAD'):>7}")
        assert rep.lp_rate == rep.eta == Fraction(a, a - 1)


if __name__ == "__main__":
    main()
