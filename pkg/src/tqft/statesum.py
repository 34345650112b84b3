"""The Crane-Yetter state sum on ordered triangulations of closed 4-manifolds.

A coloring assigns simple labels to triangles and tetrahedra such that, for
each tetrahedron with faces s0..s3 (s_k opposite its k-th vertex), both
s0 (x) s2 and s1 (x) s3 contain the tetrahedron's label.  Each pentachoron
contributes the evaluation of a network in its boundary 3-sphere: one node per
tetrahedron (an H-shaped pair of trivalent vertices joined by the tetrahedron's
label) and one edge per triangle.  The network is built geometrically, see
``_network``.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .category import PremodularData
from .diagram import DiagramBuilder, Generator, evaluate_closed
from ._network import network_ops
from .errors import BudgetError, ColoringError, MalformedLink

DEFAULT_BUDGET = 10**8

Simplex = tuple[int, ...]


def _perm_sign(seq: Sequence[int]) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


@dataclass
class OrderedTriangulation:
    vertex_count: int
    pentachora: list[tuple[Simplex, int]]
    triangles: list[Simplex] = field(init=False)
    tetrahedra: list[Simplex] = field(init=False)
    edges: list[Simplex] = field(init=False)

    def __post_init__(self):
        pents = []
        for verts, sign in self.pentachora:
            v = tuple(int(x) for x in verts)
            if len(v) != 5 or list(v) != sorted(set(v)):
                raise MalformedLink(f"pentachoron {verts} must list 5 strictly increasing vertices")
            if sign not in (1, -1):
                raise MalformedLink(f"orientation sign of {verts} must be +1 or -1")
            if any(not 0 <= x < self.vertex_count for x in v):
                raise MalformedLink(f"pentachoron {verts} uses a vertex out of range")
            pents.append((v, int(sign)))
        self.pentachora = pents
        tets: dict[Simplex, int] = {}
        tris, eds = set(), set()
        for v, sign in pents:
            for i in range(5):
                face = v[:i] + v[i + 1:]
                tets[face] = tets.get(face, 0) + sign * (-1) ** i
            tris.update(itertools.combinations(v, 3))
            eds.update(itertools.combinations(v, 2))
        count: dict[Simplex, int] = {}
        for v, _ in pents:
            for i in range(5):
                face = v[:i] + v[i + 1:]
                count[face] = count.get(face, 0) + 1
        bad = [t for t, c in count.items() if c != 2 or tets[t] != 0]
        if bad:
            raise MalformedLink(
                f"not a closed oriented 4-manifold: tetrahedron {bad[0]} is not shared by exactly two "
                "pentachora with opposite induced orientations"
            )
        self.tetrahedra = sorted(tets)
        self.triangles = sorted(tris)
        self.edges = sorted(eds)

    @property
    def n0(self) -> int:
        return len({x for v, _ in self.pentachora for x in v})

    @property
    def n1(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Sequence[int]) -> "OrderedTriangulation":
        """Apply the vertex permutation ``v -> perm[v]``, keeping the manifold orientation."""
        out = []
        for v, sign in self.pentachora:
            img = [perm[x] for x in v]
            out.append((tuple(sorted(img)), sign * _perm_sign(img)))
        return OrderedTriangulation(self.vertex_count, out)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "pentachora": [{"verts": list(v), "sign": s} for v, s in self.pentachora]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "OrderedTriangulation":
        return cls(int(doc["vertices"]), [(tuple(p["verts"]), int(p.get("sign", 1))) for p in doc["pentachora"]])

    @classmethod
    def load(cls, path) -> "OrderedTriangulation":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def boundary_of_simplex(dim: int = 5) -> OrderedTriangulation:
    """The boundary of the standard ``dim``-simplex with its induced orientation."""
    verts = tuple(range(dim + 1))
    pents = [(verts[:i] + verts[i + 1:], (-1) ** i) for i in range(dim + 1)]
    return OrderedTriangulation(dim + 1, pents)


def faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, the k-th omitting the k-th vertex."""
    return [simplex[:k] + simplex[k + 1:] for k in range(len(simplex))]


# ---------------------------------------------------------------------------
# colorings


@dataclass(frozen=True)
class CSBColoring:
    labels: Mapping[Simplex, int]

    def __getitem__(self, s: Simplex) -> int:
        return self.labels[s]


def _tet_choices(C: PremodularData, f: Sequence[int]) -> list[int]:
    a = C.products[f[0]][f[2]]
    b = set(C.products[f[1]][f[3]])
    return [x for x in a if x in b]


def projected_cost(T: OrderedTriangulation, C: PremodularData) -> int:
    """Upper bound on the number of colorings the search can visit."""
    m = max((len(C.products[i][j]) for i in range(C.rank) for j in range(C.rank)), default=1)
    return C.rank ** len(T.triangles) * m ** len(T.tetrahedra)


def _triangle_order(T: OrderedTriangulation) -> list[Simplex]:
    """Order triangles so that tetrahedra become fully colored as early as possible."""
    order: list[Simplex] = []
    seen = set()
    for tet in T.tetrahedra:
        for f in faces(tet):
            if f not in seen:
                seen.add(f)
                order.append(f)
    return order


def enumerate_colorings(T: OrderedTriangulation, C: PremodularData) -> Iterator[CSBColoring]:
    """All admissible colorings, triangles first, then tetrahedra, in a deterministic order."""
    tri_order = _triangle_order(T)
    pos = {t: i for i, t in enumerate(tri_order)}
    ready: dict[int, list[Simplex]] = {}
    for tet in T.tetrahedra:
        last = max(pos[f] for f in faces(tet))
        ready.setdefault(last, []).append(tet)
    n = len(tri_order)
    labels: dict[Simplex, int] = {}

    def tet_lists():
        return [(tet, _tet_choices(C, [labels[f] for f in faces(tet)])) for tet in T.tetrahedra]

    def rec(i):
        if i == n:
            opts = tet_lists()
            for combo in itertools.product(*[o for _, o in opts]):
                lab = dict(labels)
                for (tet, _), x in zip(opts, combo):
                    lab[tet] = x
                yield CSBColoring(lab)
            return
        tri = tri_order[i]
        for x in range(C.rank):
            labels[tri] = x
            if all(_tet_choices(C, [labels[f] for f in faces(tet)]) for tet in ready.get(i, [])):
                yield from rec(i + 1)
        del labels[tri]

    yield from rec(0)


# ---------------------------------------------------------------------------
# the pentachoron network

# Whether the network is read with over and under crossings exchanged (and
# twists reversed) before evaluation.  The diagram calculus assigns the braiding
# to the crossing opposite to the one of the handle formulas, which is why link
# invariants are taken on mirrors; the network follows the same rule.
MIRROR_NETWORK = True


def network_diagram(xi: Simplex, sign: int, lam: Mapping[Simplex, int], C: PremodularData,
                    mirror: bool = MIRROR_NETWORK, seed: int = 0):
    """Sliced diagram of the network for pentachoron ``xi`` colored by ``lam``.

    ``seed`` picks the projection direction; the value does not depend on it.
    """
    lab = C.labels

    def label(edge):
        if edge[0] == "tri":
            j, k = edge[1:]
            return lab[lam[tuple(v for i, v in enumerate(xi) if i not in (j, k))]]
        j = edge[1]
        return lab[lam[xi[:j] + xi[j + 1:]]]

    return diagram_from_ops(network_ops(sign, seed), label, mirror)


def diagram_from_ops(ops: list, label, mirror: bool = MIRROR_NETWORK):
    """Turn projected graph operations into a sliced diagram, coloring edges by ``label(edge)``."""
    swap = {"over": "cross_under", "under": "cross_over"} if mirror else {"over": "cross_over", "under": "cross_under"}
    flip = -1 if mirror else 1
    b = DiagramBuilder()
    for (op,) in ops:
        kind = op[0]
        if kind == "cup":
            b.cup(op[1], label(op[2]), op[3])
        elif kind == "cap":
            b.cap(op[1])
        elif kind in swap:
            b.add(Generator(swap[kind], op[1]))
        elif kind == "twist":
            b.twist(op[1], flip * op[2])
        elif kind == "fuse":
            b.fuse(op[1], label(op[2]), label(op[3]), label(op[4]))
        else:
            b.split(op[1], label(op[2]), label(op[3]), label(op[4]))
    return b.build()


def fifteen_j(xi: Simplex, sign: int, lam: Mapping[Simplex, int], C: PremodularData,
              mirror: bool = MIRROR_NETWORK):
    """|lambda, xi|: the network value with dual-basis vertex normalisation."""
    for tet in faces(xi):
        f = [lam[t] for t in faces(tet)]
        if lam[tet] not in _tet_choices(C, f):
            raise ColoringError(f"coloring is not admissible on tetrahedron {tet}")
    return evaluate_closed(network_diagram(xi, sign, lam, C, mirror), C)


class _Memo:
    def __init__(self, C, mirror):
        self.C = C
        self.mirror = mirror
        self.cache: dict = {}

    def value(self, xi, sign, lam):
        key = (sign,) + tuple(lam[t] for t in _signature_simplices(xi))
        v = self.cache.get(key)
        if v is None:
            local = {t: lam[t] for t in _signature_simplices(xi)}
            v = fifteen_j(xi, sign, local, self.C, self.mirror)
            self.cache[key] = v
        return v


def _signature_simplices(xi: Simplex) -> list[Simplex]:
    return [t for t in itertools.combinations(xi, 3)] + faces(xi)


def cy_statesum(T: OrderedTriangulation, C: PremodularData, *, budget: int | None = None,
                convention: str = "dual", threads: int = 1, mirror: bool = MIRROR_NETWORK):
    """D^{n0-n1} sum_lambda prod_s d_s prod_t d_t prod_xi |lambda, xi|.

    ``convention="cky"`` uses the network values rescaled by the tetrahedron
    dimensions together with inverse tetrahedron weights; both give the same total.
    """
    if budget is None:
        budget = int(os.environ.get("TQFT_BUDGET", DEFAULT_BUDGET))
    proj = projected_cost(T, C)
    if proj > budget:
        raise BudgetError(f"projected coloring count {proj} exceeds budget {budget}", projected=proj)
    if convention not in ("dual", "cky"):
        raise ValueError("convention must be 'dual' or 'cky'")
    memo = _Memo(C, mirror)
    d = C.qdim

    def weight(col: CSBColoring):
        lam = col.labels
        w = C.one
        for tri in T.triangles:
            w = w * d[lam[tri]]
        for tet in T.tetrahedra:
            w = w * (d[lam[tet]] if convention == "dual" else d[lam[tet]].inverse())
        for xi, sign in T.pentachora:
            v = memo.value(xi, sign, lam)
            if convention == "cky":
                for tet in faces(xi):
                    v = v * d[lam[tet]]
            w = w * v
            if w.is_zero():
                break
        return w

    total = C.zero
    cols = enumerate_colorings(T, C)
    if threads > 1:
        chunk = []
        parts = []
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for col in cols:
                chunk.append(col)
                if len(chunk) >= 256:
                    parts.append(pool.submit(lambda cs: _sum(weight(c) for c in cs), chunk))
                    chunk = []
            if chunk:
                parts.append(pool.submit(lambda cs: _sum(weight(c) for c in cs), chunk))
            for fut in parts:
                total = total + fut.result()
    else:
        for col in cols:
            total = total + weight(col)
    return C.global_dim ** (T.n0 - T.n1) * total


def _sum(values):
    it = iter(values)
    acc = next(it, None)
    if acc is None:
        return 0
    for v in it:
        acc = acc + v
    return acc
