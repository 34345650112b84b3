"""Diagram builders and checks for the graphical-calculus lemmas, shared by several test files."""

from __future__ import annotations

from tqft.diagram import (
    DOWN,
    OMEGA,
    UP,
    DiagramBuilder,
    MorphismMatrix,
    Strand,
    evaluate,
    evaluate_closed,
    omega_ring,
)


def partition_of_unity(C, a: int, b: int) -> bool:
    """sum_c d_c split(c -> a b) o fuse(a b -> c) equals the identity of a (x) b."""
    lab = C.labels
    top = [Strand(lab[a]), Strand(lab[b])]
    total = None
    for c in C.products[a][b]:
        d = DiagramBuilder(top).fuse(0, lab[a], lab[b], lab[c]).split(0, lab[c], lab[a], lab[b]).build()
        term = evaluate(d, C).scale(C.qdim[c])
        total = term if total is None else total + term
    return total == MorphismMatrix.identity(top, C)


def killing(C, i: int, orient: str = UP) -> bool:
    """D^-1 times an Omega ring around a strand i is delta_{i,1} id."""
    top = [Strand(C.labels[i], orient)]
    got = evaluate(omega_ring(top, 0, 1), C).scale(C.global_dim.inverse())
    want = MorphismMatrix.identity(top, C)
    return got == (want if i == 0 else want.scale(C.zero))


def omega_circle(C):
    return evaluate_closed(DiagramBuilder().cup(0, OMEGA).cap(0).build(), C)


def _loop_around(b: DiagramBuilder, width: int) -> None:
    """Take the strand at position 0 once around the next ``width`` strands."""
    for p in range(width):
        b.over(p)
    for p in reversed(range(width)):
        b.over(p)


def sliding(C, s: Strand, bundle: list[Strand]) -> bool:
    """A strand carried once around an Omega-encircled bundle is the same as the strand passing by.

    The two sides of the identity differ by the strand travelling from one side of
    the encircled region to the other and back, which is a full loop around the
    bundle next to the Omega ring.
    """
    top = [s] + list(bundle)
    k = len(bundle)
    plain = omega_ring(top, 1, k)
    b = DiagramBuilder(top)
    _loop_around(b, k)
    looped = b.build().then(omega_ring(top, 1, k))
    return evaluate(plain, C) == evaluate(looped, C)


def sliding_fixtures(C) -> list[tuple[Strand, list[Strand]]]:
    lab = C.labels
    n = C.rank
    x, y = lab[n - 1], lab[min(1, n - 1)]
    return [
        (Strand(y), [Strand(x)]),
        (Strand(x), [Strand(y), Strand(x, DOWN)]),
        (Strand(x, DOWN), [Strand(x), Strand(y)]),
    ]
