"""Framed links, linking matrices, Omega-colored evaluation and the RT invariant."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from . import linalg
from .category import PremodularData, require_modular
from .diagram import (
    OMEGA,
    OMEGA_NAMES,
    UP,
    DiagramBuilder,
    Generator,
    SlicedDiagram,
    Strand,
    check_wellformed,
    close_trace,
    evaluate_closed,
    walk,
)
from .errors import CategoryDataError, ColoringError, MalformedLink

PLACEHOLDER = "x"


def crossing_sign(kind: str, s1: Strand, s2: Strand) -> int:
    """Writhe contribution of a crossing between the strands at pos and pos+1."""
    e = (1 if s1.orient == UP else -1) * (1 if s2.orient == UP else -1)
    return -e if kind == "cross_over" else e


@dataclass
class FramedLink:
    diagram: SlicedDiagram
    components: list

    def __post_init__(self):
        _check_link(self)

    def __len__(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        doc = self.diagram.to_json()
        doc["components"] = list(self.components)
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "FramedLink":
        d = SlicedDiagram.from_json(doc)
        comps = doc.get("components")
        if comps is None:
            comps = []
            for sl in d.slices:
                for g in sl:
                    if g.kind == "cup" and g.component not in comps:
                        comps.append(g.component)
        return cls(d, list(comps))

    @classmethod
    def load(cls, path) -> "FramedLink":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _check_link(L: FramedLink) -> None:
    d = L.diagram
    if d.top:
        raise MalformedLink("a link diagram must be closed (empty top)")
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cup_comp: dict[int, Any] = {}
    obj: list[int] = []  # cup id of each strand
    nxt = 0
    for t, sl in enumerate(d.slices):
        for g in sorted(sl, key=lambda g: g.pos, reverse=True):
            p = g.pos
            if g.kind == "cup":
                if g.component is None:
                    raise MalformedLink(f"slice {t}: cup without a component tag")
                if g.component not in L.components:
                    raise MalformedLink(f"slice {t}: component {g.component!r} is not listed")
                parent[nxt] = nxt
                cup_comp[nxt] = g.component
                obj[p:p] = [nxt, nxt]
                nxt += 1
            elif g.kind == "cap":
                if p + 1 >= len(obj):
                    raise MalformedLink(f"slice {t}: cap past the end")
                a, b = find(obj[p]), find(obj[p + 1])
                parent[a] = b
                del obj[p:p + 2]
            elif g.kind in ("cross_over", "cross_under"):
                obj[p], obj[p + 1] = obj[p + 1], obj[p]
            elif g.kind in ("fuse", "split"):
                raise MalformedLink("links may not contain trivalent vertices")
    check_wellformed(_placeholder_colored(L))
    loops: dict[int, set] = {}
    for c, comp in cup_comp.items():
        loops.setdefault(find(c), set()).add(comp)
    seen = {}
    for root, comps in loops.items():
        if len(comps) != 1:
            raise MalformedLink(f"a closed loop carries several component tags {sorted(map(str, comps))}")
        comp = next(iter(comps))
        if comp in seen:
            raise MalformedLink(f"component {comp!r} consists of more than one loop")
        seen[comp] = root
    missing = [c for c in L.components if c not in seen]
    if missing:
        raise MalformedLink(f"components without strands: {missing}")


def _placeholder_colored(L: FramedLink) -> SlicedDiagram:
    return recolor(L, {c: PLACEHOLDER for c in L.components}, check=False)


def recolor(L: FramedLink, coloring: Mapping, C: PremodularData | None = None, check: bool = True) -> SlicedDiagram:
    """The link diagram with each cup relabelled by the coloring of its component."""
    slices = []
    for sl in L.diagram.slices:
        out = []
        for g in sl:
            if g.kind == "cup":
                lab = coloring.get(g.component) if g.component in coloring else None
                if lab is None:
                    raise ColoringError(f"no color for component {g.component!r}")
                lab = OMEGA if lab in OMEGA_NAMES else str(lab)
                if check and C is not None and lab != OMEGA and lab not in C.labels:
                    raise ColoringError(f"unknown label {lab!r} for component {g.component!r}")
                out.append(Generator("cup", g.pos, lab, g.orient, component=g.component))
            elif g.kind == "cap":
                out.append(Generator("cap", g.pos))
            else:
                out.append(g)
        slices.append(out)
    return SlicedDiagram([], slices)


def mirror(L: FramedLink) -> FramedLink:
    """Reflect through the projection plane: swap over/under and negate twists."""
    slices = []
    for sl in L.diagram.slices:
        out = []
        for g in sl:
            if g.kind == "cross_over":
                out.append(Generator("cross_under", g.pos))
            elif g.kind == "cross_under":
                out.append(Generator("cross_over", g.pos))
            elif g.kind == "twist":
                out.append(Generator("twist", g.pos, sign=-g.sign))
            else:
                out.append(g)
        slices.append(out)
    return FramedLink(SlicedDiagram([], slices), list(L.components))


def linking_matrix(L: FramedLink) -> list[list[int]]:
    comps = list(L.components)
    idx = {c: i for i, c in enumerate(comps)}
    n = len(comps)
    twice = [[0] * n for _ in range(n)]

    def visit(kind, t, p, *data):
        if kind in ("cross_over", "cross_under"):
            s1, s2 = data
            sgn = crossing_sign(kind, s1, s2)
            i, j = idx[s1.component], idx[s2.component]
            if i == j:
                twice[i][i] += 2 * sgn
            else:
                twice[i][j] += sgn
                twice[j][i] += sgn
        elif kind == "twist":
            s, sign = data
            twice[idx[s.component]][idx[s.component]] += 2 * sign

    walk(_placeholder_colored(L), visit)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if twice[i][j] % 2:
                raise MalformedLink(
                    f"odd signed crossing count between components {comps[i]!r} and {comps[j]!r}"
                )
            out[i][j] = twice[i][j] // 2
    return out


def framings(L: FramedLink) -> dict:
    m = linking_matrix(L)
    return {c: m[i][i] for i, c in enumerate(L.components)}


def link_signature(L: FramedLink) -> int:
    if not L.components:
        return 0
    return linalg.signature(linking_matrix(L))


def colored_evaluate(L: FramedLink, coloring: Mapping, C: PremodularData):
    """Evaluate the link with each component colored by a label or by ``"Omega"``.

    Omega components are summed by linearity inside the evaluator: every
    Omega component carries one shared summation index weighted by ``d_i``.
    """
    for c in L.components:
        if c not in coloring:
            raise ColoringError(f"component {c!r} has no color")
        lab = coloring[c]
        if lab not in OMEGA_NAMES and str(lab) not in C.labels:
            raise ColoringError(f"unknown label {lab!r} for component {c!r}")
    return evaluate_closed(recolor(L, coloring, C), C)


def omega_evaluate(L: FramedLink, C: PremodularData):
    return colored_evaluate(L, {c: OMEGA for c in L.components}, C)


def sqrtD_power(C: PremodularData, k: int):
    """D^{k/2} using the stored square root of D."""
    if k % 2 == 0:
        return C.global_dim ** (k // 2)
    if C.sqrtD is None:
        raise CategoryDataError(f"{C.name}: sqrtD is required")
    return C.sqrtD ** k


def zrt3(L: FramedLink, C: PremodularData):
    """RT invariant of the 3-manifold obtained by surgery on ``L``.

    kappa^{-sigma(L)} D^{(-|L|-1)/2} times the Omega-evaluation of the mirror of L.
    """
    require_modular(C)
    if C.kappa is None:
        raise CategoryDataError(f"{C.name}: kappa is required")
    sigma = link_signature(L)
    val = omega_evaluate(mirror(L), C)
    return C.kappa ** (-sigma) * sqrtD_power(C, -len(L) - 1) * val


# ---------------------------------------------------------------------------
# fixture builders


def add_kinks(b: DiagramBuilder, pos: int, count: int) -> DiagramBuilder:
    """Insert |count| kinks of sign(count) on the strand at ``pos``."""
    s = b.current[pos]
    for _ in range(abs(count)):
        b.cup(pos + 1, s.label, s.orient, s.component)
        if count > 0:
            b.under(pos)
        else:
            b.over(pos)
        b.cap(pos + 1)
    return b


def _from_braid(strand_comps: Sequence, crossings: Sequence[tuple[int, int]], kinks: Mapping[int, int]) -> FramedLink:
    """Closure of a braid word; ``crossings`` are (pos, sign) with sign +1 a positive crossing."""
    b = DiagramBuilder([Strand(PLACEHOLDER, UP, c) for c in strand_comps])
    for pos, sign in crossings:
        b.cross(pos, -sign)  # with both strands up, cross_under is positive
    for pos, k in kinks.items():
        add_kinks(b, pos, k)
    d = close_trace(b.build())
    comps = []
    for c in strand_comps:
        if c not in comps:
            comps.append(c)
    return FramedLink(d, comps)


def empty_link() -> FramedLink:
    return FramedLink(SlicedDiagram([], []), [])


def unknot_link(framing: int = 0, component="K") -> FramedLink:
    return _from_braid([component], [], {0: framing} if framing else {})


def hopf(f1: int = 0, f2: int = 0, clasp: int = 1, names=("A", "B")) -> FramedLink:
    """Hopf link with linking number ``clasp`` (+-1) and the given framings."""
    kinks = {}
    if f1:
        kinks[0] = f1
    if f2:
        kinks[1] = f2
    return _from_braid(list(names), [(0, clasp), (0, clasp)], kinks)


def trefoil(framing: int = 0, hand: int = 1, name="T") -> FramedLink:
    """Closure of sigma^{3 hand} on two strands, corrected to the requested framing."""
    w = 3 * hand
    corr = framing - w
    return _from_braid([name, name], [(0, hand)] * 3, {0: corr} if corr else {})


def disjoint_union(L1: FramedLink, L2: FramedLink, tags=("1", "2")) -> FramedLink:
    """Side-by-side union (stacked vertically, which is isotopic for closed diagrams)."""

    def retag(L, tag):
        slices = []
        for sl in L.diagram.slices:
            slices.append(
                [Generator(g.kind, g.pos, g.label, g.orient, g.sign, g.a, g.b, g.c,
                           None if g.component is None else f"{tag}.{g.component}") for g in sl]
            )
        return slices, [f"{tag}.{c}" for c in L.components]

    s1, c1 = retag(L1, tags[0])
    s2, c2 = retag(L2, tags[1])
    return FramedLink(SlicedDiagram([], s1 + s2), c1 + c2)


def unlink(*framings_: int) -> FramedLink:
    """Nested split unknots with the given framings."""
    names = [f"U{k}" for k in range(len(framings_))]
    return _from_braid(names, [], {k: f for k, f in enumerate(framings_) if f})


def handle_slide_pairs() -> list[tuple[str, FramedLink, FramedLink]]:
    """Pairs of links related by a single handle slide.

    Sliding a component over a split +-1-framed unknot turns the unlink into a
    Hopf link with both framings +-1; sliding one component of the 0-framed Hopf
    link over the other changes its framing by +-2.
    """
    return [
        ("unlink(0,+1) ~ hopf(+1,+1)", unlink(0, 1), hopf(1, 1, clasp=1)),
        ("unlink(0,-1) ~ hopf(-1,-1)", unlink(0, -1), hopf(-1, -1, clasp=-1)),
        ("hopf(0,0) ~ hopf(2,0)", hopf(0, 0), hopf(2, 0)),
    ]


def fixture_links() -> dict[str, FramedLink]:
    return {
        "unknot0": unknot_link(0),
        "unknot+2": unknot_link(2),
        "hopf00": hopf(0, 0),
        "hopf1-1": hopf(1, -1, clasp=-1),
        "trefoil+1": trefoil(1),
        "unlink(0,3)": unlink(0, 3),
    }
