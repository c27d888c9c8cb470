"""Shared test helpers: corpus generator and the acceptance summary."""

import random

from dimerkit import BipartiteGraph

# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_connected(seed: int) -> BipartiteGraph:
    """Deterministic connected bipartite multigraph, at most 12+12 vertices.

    A spanning tree is grown by attaching fresh vertices to already-attached
    ones of the other color, then up to six extra edges are thrown in.
    Multi-edges and unbalanced sides both occur, so the corpus exercises the
    degenerate paths as well as the non-degenerate ones.
    """
    rng = random.Random(seed)
    nb = rng.randint(1, 12)
    nw = nb if rng.random() < 0.5 else rng.randint(1, 12)
    blacks = [f"b{i}" for i in range(1, nb + 1)]
    whites = [f"w{i}" for i in range(1, nw + 1)]
    edges: list[tuple[str, str]] = []
    inb, inw = [blacks[0]], []
    outb, outw = blacks[1:], whites[:]
    rng.shuffle(outb)
    rng.shuffle(outw)
    while outb or outw:
        if outw and (not outb or not inw or rng.random() < 0.5):
            w = outw.pop()
            edges.append((rng.choice(inb), w))
            inw.append(w)
        else:
            b = outb.pop()
            edges.append((b, rng.choice(inw)))
            inb.append(b)
    for _ in range(rng.randint(0, 6)):
        edges.append((rng.choice(blacks), rng.choice(whites)))
    named = tuple((f"e{i}", b, w) for i, (b, w) in enumerate(edges, start=1))
    return BipartiteGraph(tuple(blacks), tuple(whites), named)
