"""Colored ribbon diagrams as stacks of generator slices, and their evaluation.

Slices are read from top to bottom.  A strand is a pair ``(label, orient)`` with
``orient`` in ``{"up", "down"}``; a strand ``(l, "down")`` carries the object
``l*``.  Generators act on consecutive positions of the slice's input object:

``cup``
    creates ``(l, o), (l, o')`` at ``pos`` (``o'`` the opposite orientation).
``cap``
    annihilates a pair ``(l, o), (l, o')`` at ``pos, pos+1``.
``cross_over`` / ``cross_under``
    the braiding ``c`` of the strands at ``pos, pos+1`` and the inverse braiding.
``twist``
    a full twist of the strand at ``pos``; sign ``+1`` multiplies by ``theta^-1``.
``fuse`` / ``split``
    trivalent vertices ``a b -> c`` and ``c -> a b`` (labels refer to the carried
    objects).  They are normalised so that ``sum_c d_c split o fuse = id``.

A cup may carry the label ``"Omega"``, the regular coloring ``sum_i d_i X_i``.
Cups sharing a ``component`` tag belong to the same closed loop and share a
single summation index.

Evaluation keeps a vector over left-parenthesized splitting trees of the
current cross-section and updates it one generator at a time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import linalg
from .category import PremodularData
from .errors import CompositionError, FusionError, TraceError

OMEGA = "Omega"
OMEGA_NAMES = {"Omega", "omega", "Ω"}
UP, DOWN = "up", "down"
MAX_STRANDS = 64

KINDS = {"id", "cup", "cap", "cross_over", "cross_under", "twist", "fuse", "split"}


def flip(orient: str) -> str:
    return DOWN if orient == UP else UP


@dataclass(frozen=True)
class Strand:
    label: str
    orient: str = UP
    component: Any = None

    def as_list(self) -> list:
        out = [self.label, self.orient]
        if self.component is not None:
            out.append(self.component)
        return out


@dataclass(frozen=True)
class Generator:
    kind: str
    pos: int
    label: str | None = None
    orient: str = UP
    sign: int = 1
    a: str | None = None
    b: str | None = None
    c: str | None = None
    component: Any = None

    @property
    def width_in(self) -> int:
        return {"id": 1, "cup": 0, "cap": 2, "cross_over": 2, "cross_under": 2, "twist": 1, "fuse": 2, "split": 1}[self.kind]

    @property
    def width_out(self) -> int:
        return {"id": 1, "cup": 2, "cap": 0, "cross_over": 2, "cross_under": 2, "twist": 1, "fuse": 1, "split": 2}[self.kind]

    def to_json(self) -> dict:
        d: dict[str, Any] = {"gen": self.kind, "pos": self.pos}
        if self.kind in ("cup", "cap", "id") and self.label is not None:
            d["label"] = self.label
        if self.kind in ("cup", "id") and self.orient != UP:
            d["orient"] = self.orient
        if self.kind == "twist":
            d["sign"] = self.sign
        if self.kind in ("fuse", "split"):
            d.update(a=self.a, b=self.b, c=self.c)
        if self.component is not None:
            d["component"] = self.component
        return d

    @classmethod
    def from_json(cls, doc: dict) -> "Generator":
        kind = doc.get("gen")
        if kind == "twist_pos":
            kind = "twist"
        if kind not in KINDS:
            raise CompositionError(f"unknown generator {kind!r}")
        return cls(
            kind=kind,
            pos=int(doc.get("pos", 0)),
            label=None if doc.get("label") is None else str(doc["label"]),
            orient=doc.get("orient", UP),
            sign=int(doc.get("sign", 1)),
            a=None if doc.get("a") is None else str(doc["a"]),
            b=None if doc.get("b") is None else str(doc["b"]),
            c=None if doc.get("c") is None else str(doc["c"]),
            component=doc.get("component"),
        )


# convenience constructors
def cup(pos: int, label: str, orient: str = UP, component=None) -> Generator:
    return Generator("cup", pos, label=str(label), orient=orient, component=component)


def cap(pos: int, label: str | None = None) -> Generator:
    return Generator("cap", pos, label=None if label is None else str(label))


def over(pos: int) -> Generator:
    return Generator("cross_over", pos)


def under(pos: int) -> Generator:
    return Generator("cross_under", pos)


def twist(pos: int, sign: int = 1) -> Generator:
    return Generator("twist", pos, sign=sign)


def fuse(pos: int, a: str, b: str, c: str) -> Generator:
    return Generator("fuse", pos, a=str(a), b=str(b), c=str(c))


def split(pos: int, c: str, a: str, b: str) -> Generator:
    return Generator("split", pos, a=str(a), b=str(b), c=str(c))


@dataclass
class SlicedDiagram:
    top: list[Strand] = field(default_factory=list)
    slices: list[list[Generator]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"top": [s.as_list() for s in self.top], "slices": [[g.to_json() for g in sl] for sl in self.slices]}

    @classmethod
    def from_json(cls, doc: dict) -> "SlicedDiagram":
        top = [Strand(str(t[0]), t[1] if len(t) > 1 else UP, t[2] if len(t) > 2 else None) for t in doc.get("top", [])]
        slices = [[Generator.from_json(g) for g in sl] for sl in doc.get("slices", [])]
        return cls(top, slices)

    @classmethod
    def load(cls, path) -> "SlicedDiagram":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def then(self, other: "SlicedDiagram") -> "SlicedDiagram":
        """Vertical composition: ``self`` above ``other``."""
        return SlicedDiagram(list(self.top), [list(s) for s in self.slices] + [list(s) for s in other.slices])


class DiagramBuilder:
    """Incrementally build a diagram while tracking the current cross-section."""

    def __init__(self, top: Iterable = ()):
        self.top = [s if isinstance(s, Strand) else Strand(*s) for s in top]
        self.current = list(self.top)
        self.slices: list[list[Generator]] = []

    def add(self, *gens: Generator) -> "DiagramBuilder":
        sl = list(gens)
        self.current = _apply_slice_symbolic(self.current, sl, len(self.slices))
        self.slices.append(sl)
        return self

    def cup(self, pos, label, orient=UP, component=None):
        return self.add(cup(pos, label, orient, component))

    def cap(self, pos, label=None):
        return self.add(cap(pos, label))

    def over(self, pos):
        return self.add(over(pos))

    def under(self, pos):
        return self.add(under(pos))

    def cross(self, pos, sign):
        return self.add(over(pos) if sign > 0 else under(pos))

    def twist(self, pos, sign=1):
        return self.add(twist(pos, sign))

    def fuse(self, pos, a, b, c):
        return self.add(fuse(pos, a, b, c))

    def split(self, pos, c, a, b):
        return self.add(split(pos, c, a, b))

    def width(self) -> int:
        return len(self.current)

    def build(self) -> SlicedDiagram:
        return SlicedDiagram(list(self.top), [list(s) for s in self.slices])


# ---------------------------------------------------------------------------
# symbolic propagation and well-formedness


def _apply_slice_symbolic(obj: list[Strand], gens: list[Generator], t: int, C: PremodularData | None = None,
                          visit=None) -> list[Strand]:
    """Propagate the strand list through one slice, checking composability."""
    used = set()
    for g in gens:
        rng = range(g.pos, g.pos + g.width_in)
        if g.pos < 0 or g.pos + g.width_in > len(obj) or (g.kind == "cup" and g.pos > len(obj)):
            raise CompositionError(f"slice {t}: generator {g.kind} at position {g.pos} exceeds width {len(obj)}",
                                   slice_index=t, position=g.pos)
        if any(p in used for p in rng):
            raise CompositionError(f"slice {t}: overlapping generators at position {g.pos}", slice_index=t, position=g.pos)
        used.update(rng)
    out = list(obj)
    for g in sorted(gens, key=lambda g: g.pos, reverse=True):
        p = g.pos
        if g.kind == "id":
            s = out[p]
            if g.label is not None and (s.label != g.label or s.orient != g.orient):
                raise CompositionError(f"slice {t}: id({g.label}) meets strand {s.label}", slice_index=t, position=p)
        elif g.kind == "cup":
            lab = OMEGA if g.label in OMEGA_NAMES else g.label
            if C is not None and lab != OMEGA and lab not in C.labels:
                raise CompositionError(f"slice {t}: unknown label {lab!r}", slice_index=t, position=p)
            out[p:p] = [Strand(lab, g.orient, g.component), Strand(lab, flip(g.orient), g.component)]
        elif g.kind == "cap":
            s1, s2 = out[p], out[p + 1]
            want = None if g.label is None else (OMEGA if g.label in OMEGA_NAMES else g.label)
            if s1.label != s2.label or s1.orient == s2.orient or (want is not None and want != s1.label):
                raise CompositionError(
                    f"slice {t}: cap{'' if want is None else '(' + want + ')'} cannot close "
                    f"({s1.label},{s1.orient}) with ({s2.label},{s2.orient})",
                    slice_index=t, position=p,
                )
            if visit:
                visit("cap", t, p, s1, s2)
            del out[p:p + 2]
        elif g.kind in ("cross_over", "cross_under"):
            if visit:
                visit(g.kind, t, p, out[p], out[p + 1])
            out[p], out[p + 1] = out[p + 1], out[p]
        elif g.kind == "twist":
            if visit:
                visit("twist", t, p, out[p], g.sign)
        elif g.kind == "fuse":
            s1, s2 = out[p], out[p + 1]
            if OMEGA in (s1.label, s2.label):
                raise FusionError(f"slice {t}: Omega strands cannot meet a vertex")
            if C is not None:
                _check_vertex(C, g, t, [s1, s2], [g.a, g.b])
            out[p:p + 2] = [Strand(g.c, UP, None)]
        elif g.kind == "split":
            s = out[p]
            if s.label == OMEGA:
                raise FusionError(f"slice {t}: Omega strands cannot meet a vertex")
            if C is not None:
                _check_vertex(C, g, t, [s], [g.c])
            out[p:p + 1] = [Strand(g.a, UP, None), Strand(g.b, UP, None)]
    if len(out) > MAX_STRANDS:
        raise CompositionError(f"slice {t}: {len(out)} strands exceeds the cap of {MAX_STRANDS}", slice_index=t)
    return out


def _tree_label(C: PremodularData, s: Strand) -> int:
    i = C.index(s.label)
    return i if s.orient == UP else C.dual[i]


def _check_vertex(C, g, t, strands, names):
    try:
        a, b, c = C.index(g.a), C.index(g.b), C.index(g.c)
    except KeyError as exc:
        raise FusionError(f"slice {t}: {exc}") from None
    if not C.Nabc(a, b, c):
        raise FusionError(f"slice {t}: {g.a} x {g.b} does not contain {g.c}")
    for s, nm in zip(strands, names):
        if _tree_label(C, s) != C.index(nm):
            raise CompositionError(
                f"slice {t}: {g.kind} expects {nm} but meets ({s.label},{s.orient})", slice_index=t, position=g.pos
            )


def check_wellformed(d: SlicedDiagram, C: PremodularData | None = None) -> tuple[list[Strand], list[Strand]]:
    """Return (top, bottom) objects, raising on the first composition error."""
    obj = list(d.top)
    for s in obj:
        if s.orient not in (UP, DOWN):
            raise CompositionError(f"bad orientation {s.orient!r} in top object")
        if C is not None and s.label not in C.labels:
            raise CompositionError(f"unknown label {s.label!r} in top object")
    for t, sl in enumerate(d.slices):
        obj = _apply_slice_symbolic(obj, sl, t, C)
    return list(d.top), obj


def walk(d: SlicedDiagram, visit) -> list[Strand]:
    """Propagate strands through ``d`` calling ``visit(kind, t, pos, *data)`` on crossings, caps and twists."""
    obj = list(d.top)
    for t, sl in enumerate(d.slices):
        obj = _apply_slice_symbolic(obj, sl, t, None, visit)
    return obj


def close_trace(d: SlicedDiagram) -> SlicedDiagram:
    """Close ``d`` by joining its bottom to its top around the right."""
    top, bottom = check_wellformed(d)
    if [(s.label, s.orient) for s in top] != [(s.label, s.orient) for s in bottom]:
        raise TraceError("top and bottom objects differ; cannot take the trace")
    n = len(top)
    slices: list[list[Generator]] = []
    for k, s in enumerate(top):
        slices.append([cup(k, s.label, s.orient, s.component)])
    slices.extend([list(sl) for sl in d.slices])
    for k in reversed(range(n)):
        slices.append([cap(k)])
    return SlicedDiagram([], slices)


# ---------------------------------------------------------------------------
# fusion-tree bases


def enumerate_trees(C: PremodularData, labels: Sequence[int]) -> list[tuple[int, ...]]:
    """Admissible left-parenthesized splitting trees ``(e_0, ..., e_{n-1})``."""
    if not labels:
        return [()]
    out = []

    def rec(prefix, prev):
        i = len(prefix)
        if i == len(labels):
            out.append(tuple(prefix))
            return
        for e in C.products[prev][labels[i]]:
            rec(prefix + [e], e)

    rec([], 0)
    return sorted(out, key=lambda t: (t[-1], t))


def _charge(tree: tuple[int, ...]) -> int:
    return tree[-1] if tree else 0


class MorphismMatrix:
    """A morphism between two objects, block diagonal over the total charge."""

    def __init__(self, source: list[Strand], target: list[Strand], blocks: dict[int, tuple[list, list, list]], C):
        self.source = source
        self.target = target
        self.blocks = blocks  # charge -> (target trees, source trees, matrix)
        self.C = C

    @classmethod
    def zero(cls, source, target, C):
        src_trees = enumerate_trees(C, [_tree_label(C, s) for s in source])
        tgt_trees = enumerate_trees(C, [_tree_label(C, s) for s in target])
        blocks = {}
        for c in sorted({_charge(t) for t in src_trees} | {_charge(t) for t in tgt_trees}):
            rows = [t for t in tgt_trees if _charge(t) == c]
            cols = [t for t in src_trees if _charge(t) == c]
            blocks[c] = (rows, cols, [[C.zero for _ in cols] for _ in rows])
        return cls(source, target, blocks, C)

    @property
    def shape(self) -> tuple[int, int]:
        return (sum(len(b[0]) for b in self.blocks.values()), sum(len(b[1]) for b in self.blocks.values()))

    def scalar(self):
        if self.source or self.target:
            raise ValueError("not a closed diagram")
        rows, cols, mat = self.blocks.get(0, ([()], [()], [[self.C.zero]]))
        return mat[0][0]

    def entry(self, row_tree, col_tree):
        c = _charge(row_tree)
        if c != _charge(col_tree) or c not in self.blocks:
            return self.C.zero
        rows, cols, mat = self.blocks[c]
        return mat[rows.index(row_tree)][cols.index(col_tree)]

    def _binop(self, other, op):
        out = {}
        for c, (rows, cols, mat) in self.blocks.items():
            omat = other.blocks[c][2]
            out[c] = (rows, cols, [[op(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(mat, omat)])
        return MorphismMatrix(self.source, self.target, out, self.C)

    def __add__(self, other):
        return self._binop(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binop(other, lambda x, y: x - y)

    def scale(self, s):
        return MorphismMatrix(
            self.source, self.target,
            {c: (r, k, [[s * x for x in row] for row in m]) for c, (r, k, m) in self.blocks.items()}, self.C,
        )

    def __matmul__(self, other: "MorphismMatrix") -> "MorphismMatrix":
        """Composition: ``self @ other`` applies ``other`` first."""
        out = {}
        zero = self.C.zero
        for c, (rows, _, mat) in self.blocks.items():
            ocols = other.blocks[c][1] if c in other.blocks else []
            if c in other.blocks:
                out[c] = (rows, ocols, linalg.matmul(mat, other.blocks[c][2], zero) if rows else [])
            else:
                out[c] = (rows, ocols, [[] for _ in rows])
        return MorphismMatrix(other.source, self.target, out, self.C)

    def rank(self) -> int:
        return sum(linalg.rank(m) for (_, _, m) in self.blocks.values() if m and m[0])

    def is_zero(self) -> bool:
        return all(x.is_zero() for (_, _, m) in self.blocks.values() for row in m for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MorphismMatrix):
            return NotImplemented
        if set(self.blocks) != set(other.blocks):
            return False
        for c, (rows, cols, mat) in self.blocks.items():
            r2, c2, m2 = other.blocks[c]
            if rows != r2 or cols != c2 or not linalg.mat_equal(mat, m2):
                return False
        return True

    __hash__ = None

    @classmethod
    def identity(cls, obj: list[Strand], C) -> "MorphismMatrix":
        trees = enumerate_trees(C, [_tree_label(C, s) for s in obj])
        blocks = {}
        for c in sorted({_charge(t) for t in trees}):
            ts = [t for t in trees if _charge(t) == c]
            blocks[c] = (ts, ts, linalg.identity(len(ts), C.one, C.zero))
        return cls(list(obj), list(obj), blocks, C)

    def to_json(self) -> dict:
        lab = self.C.labels
        return {
            "source": [s.as_list() for s in self.source],
            "target": [s.as_list() for s in self.target],
            "blocks": [
                {
                    "charge": lab[c],
                    "rows": [[lab[e] for e in t] for t in rows],
                    "cols": [[lab[e] for e in t] for t in cols],
                    "matrix": [[x.to_json() for x in row] for row in mat],
                }
                for c, (rows, cols, mat) in sorted(self.blocks.items())
            ],
        }

    def __repr__(self):
        return f"MorphismMatrix(shape={self.shape}, charges={sorted(self.blocks)})"


# ---------------------------------------------------------------------------
# evaluation


class _Evaluator:
    def __init__(self, C: PremodularData):
        self.C = C
        self._cross_cache: dict = {}
        self._cup_cache: dict = {}

    def e(self, tree, i):
        return tree[i] if i >= 0 else 0

    def cross(self, a, wp, wq, eq, ep, inverse: bool):
        key = (a, wp, wq, eq, ep, inverse)
        res = self._cross_cache.get(key)
        if res is None:
            C = self.C
            acc: dict[int, Any] = {}
            for f in C.products[wp][wq]:
                if not C.Nabc(a, f, eq):
                    continue
                c1 = C.Fval(a, wp, wq, eq, ep, f)
                if c1.is_zero():
                    continue
                r = C.Rval(wq, wp, f).inverse() if inverse else C.Rval(wp, wq, f)
                for g in C.products[a][wq]:
                    if not C.Nabc(g, wp, eq):
                        continue
                    c2 = C.Finv(a, wq, wp, eq, f, g)
                    if c2.is_zero():
                        continue
                    acc[g] = acc.get(g, C.zero) + c1 * r * c2
            res = [(g, v) for g, v in acc.items() if not v.is_zero()]
            self._cross_cache[key] = res
        return res

    def cup_terms(self, a, x, y):
        key = (a, x, y)
        res = self._cup_cache.get(key)
        if res is None:
            C = self.C
            res = []
            for g in C.products[a][x]:
                if C.Nabc(g, y, a):
                    v = C.Finv(a, x, y, a, 0, g)
                    if not v.is_zero():
                        res.append((g, v))
            self._cup_cache[key] = res
        return res


def _add(state, key, val):
    cur = state.get(key)
    if cur is None:
        state[key] = val
    else:
        s = cur + val
        if s.is_zero():
            del state[key]
        else:
            state[key] = s


def evaluate(d: SlicedDiagram, C: PremodularData) -> MorphismMatrix:
    """Evaluate ``d`` to a morphism from its top object to its bottom object."""
    top, bottom = check_wellformed(d, C)
    for s in list(top) + list(bottom):
        if s.label == OMEGA:
            raise CompositionError("Omega strands must be closed inside the diagram")
    ev = _Evaluator(C)
    top_labels = [_tree_label(C, s) for s in top]
    top_trees = enumerate_trees(C, top_labels)
    labels0 = tuple(C.index(s.label) for s in top)
    state: dict = {}
    for col, tr in enumerate(top_trees):
        state[(col, labels0, tr)] = C.one
    orients = [s.orient for s in top]
    comps = [s.component for s in top]
    opened: set = set()
    auto = 0
    for t, sl in enumerate(d.slices):
        for g in sorted(sl, key=lambda g: g.pos, reverse=True):
            if g.kind == "id":
                continue
            if g.kind == "cup" and (g.label in OMEGA_NAMES) and g.component is None:
                g = Generator("cup", g.pos, OMEGA, g.orient, component=("__auto", auto))
                auto += 1
            state = _apply(ev, state, g, orients, opened)
            p = g.pos
            if g.kind == "cup":
                orients[p:p] = [g.orient, flip(g.orient)]
                comps[p:p] = [g.component, g.component]
            elif g.kind == "cap":
                del orients[p:p + 2]
                del comps[p:p + 2]
            elif g.kind in ("cross_over", "cross_under"):
                orients[p], orients[p + 1] = orients[p + 1], orients[p]
                comps[p], comps[p + 1] = comps[p + 1], comps[p]
            elif g.kind == "fuse":
                orients[p:p + 2] = [UP]
                comps[p:p + 2] = [None]
            elif g.kind == "split":
                orients[p:p + 1] = [UP, UP]
                comps[p:p + 1] = [None, None]
    bottom_trees = enumerate_trees(C, [_tree_label(C, s) for s in bottom])
    blocks: dict[int, tuple[list, list, list]] = {}
    charges = sorted({_charge(t) for t in top_trees} | {_charge(t) for t in bottom_trees})
    col_index = {}
    row_index = {}
    for c in charges:
        rows = [t for t in bottom_trees if _charge(t) == c]
        cols = [t for t in top_trees if _charge(t) == c]
        blocks[c] = (rows, cols, [[C.zero for _ in cols] for _ in rows])
        for i, t in enumerate(rows):
            row_index[t] = (c, i)
        for j, t in enumerate(cols):
            col_index[top_trees.index(t)] = (c, j)
    for (col, _labels, tree), val in state.items():
        c, j = col_index[col]
        c2, i = row_index[tree]
        assert c == c2, "total charge changed during evaluation"
        blocks[c][2][i][j] = blocks[c][2][i][j] + val
    return MorphismMatrix(list(top), list(bottom), blocks, C)


def _apply(ev: _Evaluator, state: dict, g: Generator, orients: list, opened: set) -> dict:
    C = ev.C
    dual = C.dual
    p = g.pos
    new: dict = {}
    kind = g.kind
    if kind == "cup":
        omega = g.label == OMEGA
        if omega:
            choices = list(range(C.rank))
            first = g.component not in opened
            opened.add(g.component)
        else:
            choices = [C.index(g.label)]
            first = False
        for (col, labels, tree), val in state.items():
            a = ev.e(tree, p - 1)
            for l in choices:
                x, y = (l, dual[l]) if g.orient == UP else (dual[l], l)
                coef = C.one if g.orient == UP else C.cup_down_coeff[l]
                if omega and first:
                    coef = coef * C.qdim[l]
                nl = labels[:p] + (l, l) + labels[p:]
                for gg, v in ev.cup_terms(a, x, y):
                    nt = tree[:p] + (gg, a) + tree[p:]
                    _add(new, (col, nl, nt), val * coef * v)
        return new
    if kind == "twist":
        for (col, labels, tree), val in state.items():
            th = C.twist[labels[p]]
            new[(col, labels, tree)] = val * (th.inverse() if g.sign > 0 else th) if g.sign else val
            if abs(g.sign) > 1:
                new[(col, labels, tree)] = val * th ** (-g.sign)
        return new
    o1, o2 = orients[p], orients[p + 1] if p + 1 < len(orients) else None
    if kind == "cap":
        for (col, labels, tree), val in state.items():
            if labels[p] != labels[p + 1]:
                continue
            l = labels[p]
            wp = l if o1 == UP else dual[l]
            wq = dual[wp]
            a = ev.e(tree, p - 1)
            if tree[p + 1] != a:
                continue
            f = C.Fval(a, wp, wq, a, tree[p], 0)
            if f.is_zero():
                continue
            coef = C.qdim[l] if o1 == UP else C.cap_down_coeff[l]
            nl = labels[:p] + labels[p + 2:]
            nt = tree[:p] + tree[p + 2:]
            _add(new, (col, nl, nt), val * f * coef)
        return new
    if kind in ("cross_over", "cross_under"):
        inv = kind == "cross_under"
        for (col, labels, tree), val in state.items():
            wp = labels[p] if o1 == UP else dual[labels[p]]
            wq = labels[p + 1] if o2 == UP else dual[labels[p + 1]]
            a = ev.e(tree, p - 1)
            nl = labels[:p] + (labels[p + 1], labels[p]) + labels[p + 2:]
            for gg, v in ev.cross(a, wp, wq, tree[p + 1], tree[p], inv):
                nt = tree[:p] + (gg,) + tree[p + 1:]
                _add(new, (col, nl, nt), val * v)
        return new
    if kind == "fuse":
        A, B, Cc = C.index(g.a), C.index(g.b), C.index(g.c)
        inv_d = C.qdim[Cc].inverse()
        for (col, labels, tree), val in state.items():
            a = ev.e(tree, p - 1)
            f = C.Fval(a, A, B, tree[p + 1], tree[p], Cc)
            if f.is_zero():
                continue
            nl = labels[:p] + (Cc,) + labels[p + 2:]
            nt = tree[:p] + tree[p + 1:]
            _add(new, (col, nl, nt), val * f * inv_d)
        return new
    if kind == "split":
        A, B, Cc = C.index(g.a), C.index(g.b), C.index(g.c)
        for (col, labels, tree), val in state.items():
            a = ev.e(tree, p - 1)
            ep = tree[p]
            nl = labels[:p] + (A, B) + labels[p + 1:]
            for x in C.products[a][A]:
                if not C.Nabc(x, B, ep):
                    continue
                v = C.Finv(a, A, B, ep, Cc, x)
                if v.is_zero():
                    continue
                nt = tree[:p] + (x,) + tree[p:]
                _add(new, (col, nl, nt), val * v)
        return new
    raise CompositionError(f"unknown generator {kind}")


def evaluate_closed(d: SlicedDiagram, C: PremodularData):
    """Scalar value of a closed diagram."""
    m = evaluate(d, C)
    if m.source or m.target:
        raise TraceError("diagram is not closed")
    return m.scalar()


# ---------------------------------------------------------------------------
# standard diagrams


def identity_diagram(labels: Sequence, orients: Sequence[str] | None = None) -> SlicedDiagram:
    orients = orients or [UP] * len(labels)
    return SlicedDiagram([Strand(str(l), o) for l, o in zip(labels, orients)], [])


def unknot(label: str, twists: int = 0, orient: str = UP) -> SlicedDiagram:
    """A closed loop with ``twists`` explicit full twists of sign +-1."""
    b = DiagramBuilder()
    b.cup(0, label, orient)
    s = 1 if twists > 0 else -1
    for _ in range(abs(twists)):
        b.twist(0, s)
    b.cap(0)
    return b.build()


def hopf_link(i: str, j: str) -> SlicedDiagram:
    """Closure of the double braiding ``c_{j,i} c_{i,j}``."""
    b = DiagramBuilder([Strand(str(i)), Strand(str(j))])
    b.over(0).over(0)
    return close_trace(b.build())


def omega_ring(strands: Sequence[Strand], first: int, count: int, *, component="omega") -> SlicedDiagram:
    """An Omega-colored circle encircling strands ``first .. first+count-1`` of ``strands``.

    The circle passes under the bundle at the top and over it at the bottom, so it
    links each encircled strand once.
    """
    b = DiagramBuilder(list(strands))
    p = first
    b.cup(p, OMEGA, UP, component)
    # move the right leg of the circle past the bundle, behind it
    for k in range(count):
        b.under(p + 1 + k)
    # now the ring's legs sit at p and p+count+1 with the bundle in between; move the
    # left leg across the bundle in front, back next to the right leg
    for k in range(count):
        b.over(p + k)
    b.cap(p + count)
    return b.build()
