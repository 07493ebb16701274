"""Closed-form bound calculators and the gamma bracket.

Bounds that hold only in the large-n limit are reported as exact rational
limit values carrying a ``limit`` flag; the finite-n guarantees are the floor
formulas.  Terminal connectivity 1 short-circuits to capacity 1 before any
formula runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UndefinedGain
from .connectivity import terminal_connectivity
from .multigraph import Multigraph, Rate, TerminalSet
from .packing import fractional_capacity_lp
from .strength import edge_strength


@dataclass(frozen=True)
class BoundValue:
    value: Rate
    limit: bool = False

    def __str__(self) -> str:
        suffix = " (limit)" if self.limit else ""
        return f"{self.value}{suffix}"


@dataclass(frozen=True)
class Decomposition3:
    lam: int
    k: int
    delta: int
    big_delta: int  # (6*lam - 3) mod 8, always in {1, 3, 5, 7}


@dataclass(frozen=True)
class DecompositionGeneral:
    a: int
    lam: int
    k: int
    delta: int


@dataclass(frozen=True)
class GammaBracket:
    lower: Rate
    upper: Rate
    tight: bool


def theorem1_lower_bounds(lam: int) -> tuple[int, Rate, BoundValue]:
    """3-terminal routing capacity lower bounds (integer, half-integer, fractional limit)."""
    if lam < 1:
        raise ValueError("connectivity must be >= 1")
    pi_int = (6 * lam - 3) // 8
    pi_half = Fraction((12 * lam - 3) // 8, 2)
    pi_frac = BoundValue(Fraction(3 * lam, 4), limit=True)
    return pi_int, pi_half, pi_frac


def corollary1_gain_bounds(lam: int) -> tuple[Rate, Rate, BoundValue]:
    """3-terminal coding gain upper bounds."""
    if lam < 2:
        raise ValueError("connectivity must be >= 2")
    d_int = (6 * lam - 3) // 8
    d_half = (12 * lam - 3) // 8
    if d_int == 0 or d_half == 0:
        raise UndefinedGain(f"gain denominator vanishes at connectivity {lam}")
    return (
        Fraction(lam, d_int),
        Fraction(2 * lam, d_half),
        BoundValue(Fraction(4, 3), limit=True),
    )


def decompose3(lam: int) -> Decomposition3:
    """lam = floor((8k+3)/6) + delta with k maximal such that floor((8k+3)/6) <= lam."""
    if lam < 1:
        raise ValueError("connectivity must be >= 1")
    # largest k with floor((8k+3)/6) <= lam, i.e. 8k + 3 <= 6*lam + 5
    k = max(1, (6 * lam + 2) // 8)
    assert (8 * (k + 1) + 3) // 6 > lam
    delta = lam - (8 * k + 3) // 6
    assert delta in (0, 1)
    assert k >= (6 * lam - 3) // 8
    big = appendix_a_delta(lam)
    if delta == 1:
        assert big == 1
    return Decomposition3(lam, k, delta, big)


def appendix_a_delta(lam: int) -> int:
    """(6*lam - 3) mod 8; always odd, in {1, 3, 5, 7}."""
    if lam < 1:
        raise ValueError("connectivity must be >= 1")
    big = (6 * lam - 3) % 8
    assert big in (1, 3, 5, 7)
    return big


def _f_general(a: int, k: int) -> int:
    return (2 * k * (a - 1) + a - 2) // a


def decompose_general(lam: int, a: int) -> DecompositionGeneral:
    """lam = f_a(k) + delta with f_a(k) = floor((2k(a-1) + a-2)/a), k maximal."""
    if lam < 2 or a < 2:
        raise ValueError("need connectivity >= 2 and >= 2 terminals")
    # largest k with f_a(k) <= lam, i.e. 2k(a-1) <= a*lam + 1
    k = (a * lam + 1) // (2 * (a - 1))
    assert _f_general(a, k + 1) > lam
    delta = lam - _f_general(a, k)
    assert delta in (0, 1)
    assert k >= (a * lam - a + 2) // (2 * (a - 1))
    return DecompositionGeneral(a, lam, k, delta)


def appendix_b_identity(lam: int, a: int) -> tuple[int, int, int, bool]:
    """Residues of the general decomposition and the modular identity linking them.

    Returns (Delta, Delta_prime, delta, holds) where
    Delta = 2k(a-1) + a-2 - a(lam - delta) in {0..a-1},
    Delta_prime = (a*lam - a + 2) mod 2(a-1), and ``holds`` asserts
    (Delta_prime + Delta) mod 2(a-1) == a*delta together with the
    biconditional Delta_prime = 0 iff (Delta = 0 and delta = 0).
    """
    dec = decompose_general(lam, a)
    k, delta = dec.k, dec.delta
    big = 2 * k * (a - 1) + a - 2 - a * (lam - delta)
    assert 0 <= big < a
    big_prime = (a * lam - a + 2) % (2 * (a - 1))
    congruence = (big_prime + big) % (2 * (a - 1)) == a * delta
    biconditional = (big_prime == 0) == (big == 0 and delta == 0)
    return big, big_prime, delta, congruence and biconditional


def theorem3_lower_bound(lam: int, a: int) -> tuple[Rate, BoundValue]:
    """General lower bound: exact half-integer rate and the fractional limit."""
    if lam < 2 or a < 2:
        raise ValueError("need connectivity >= 2 and >= 2 terminals")
    half_exact = Fraction((2 * a * lam - a + 2) // (2 * (a - 1)), 2)
    frac_limit = BoundValue(Fraction(lam * a, 2 * (a - 1)), limit=True)
    return half_exact, frac_limit


def corollary2_gain_bound(a: int) -> BoundValue:
    """Fractional coding gain bound 2(a-1)/a; strictly below 2, approaches 2."""
    if a < 2:
        raise ValueError("need >= 2 terminals")
    return BoundValue(Fraction(2 * (a - 1), a), limit=True)


def gamma_bracket(g: Multigraph, a: TerminalSet) -> GammaBracket:
    """Certified interval around the coding capacity: LP rate <= gamma <= min(lambda, eta)."""
    lam = terminal_connectivity(g, a)
    if lam == 1:
        one = Fraction(1)
        return GammaBracket(one, one, True)
    lower, _ = fractional_capacity_lp(g, a)
    eta, _ = edge_strength(g, a)
    upper = min(Fraction(lam), eta)
    return GammaBracket(lower, upper, lower == upper)
