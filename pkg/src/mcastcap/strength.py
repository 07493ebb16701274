"""Edge strength: the partition upper bound on coding capacity.

eta(G, A) = min over partitions P of V with a terminal in every block of
(crossing capacity of P) / (|P| - 1).  Exact enumeration: partition the
terminals first, then assign each relay to an existing block (a fresh block
would be terminal-free).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import TooManyVertices
from .multigraph import Multigraph, Rate, TerminalSet, components

MAX_VERTICES = 12


@dataclass(frozen=True)
class TerminalPartition:
    blocks: tuple[frozenset[str], ...]
    crossing: int

    def __len__(self) -> int:
        return len(self.blocks)


def _terminal_partitions(terms: list[str]):
    """Set partitions of the terminal list, blocks in canonical order."""

    def rec(i: int, blocks: list[list[str]]):
        if i == len(terms):
            yield [list(b) for b in blocks]
            return
        t = terms[i]
        for b in blocks:
            b.append(t)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([t])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def _crossing_capacity(g: Multigraph, block_of: dict[str, int]) -> int:
    return sum(e.cap for e in g.edges if block_of[e.u] != block_of[e.v])


def _blocks_connected(g: Multigraph, blocks) -> bool:
    return all(len(components(g.restrict(b))) == 1 for b in blocks)


def edge_strength(
    g: Multigraph, a: TerminalSet, connected_blocks_only: bool = False
) -> tuple[Rate, TerminalPartition]:
    """Exact minimum of crossing/(blocks-1) over terminal-covering partitions.

    The witness is the lexicographically least minimizer (blocks compared as
    sorted tuples of sorted vertex lists).  With ``connected_blocks_only``
    the enumeration is restricted to partitions whose blocks induce connected
    subgraphs; the minimum is unchanged.
    """
    if len(g.vertices) > MAX_VERTICES:
        raise TooManyVertices(
            f"strength enumeration limited to {MAX_VERTICES} vertices"
        )
    terms = sorted(a.members)
    relays = sorted(g.vertices - a.members)
    best: Fraction | None = None
    best_key = None
    best_partition = None
    for tblocks in _terminal_partitions(terms):
        nb = len(tblocks)
        if nb < 2:
            continue
        for assignment in product(range(nb), repeat=len(relays)):
            blocks = [list(b) for b in tblocks]
            for r, bi in zip(relays, assignment):
                blocks[bi].append(r)
            block_of = {v: i for i, b in enumerate(blocks) for v in b}
            if connected_blocks_only and not _blocks_connected(
                g, [frozenset(b) for b in blocks]
            ):
                continue
            value = Fraction(_crossing_capacity(g, block_of), nb - 1)
            key = tuple(sorted(tuple(sorted(b)) for b in blocks))
            if best is None or value < best or (value == best and key < best_key):
                best, best_key = value, key
                best_partition = TerminalPartition(
                    tuple(frozenset(b) for b in sorted(blocks, key=lambda b: sorted(b))),
                    _crossing_capacity(g, block_of),
                )
    assert best is not None and best_partition is not None
    return best, best_partition
