"""Geometric construction of the framed network inside the boundary of a pentachoron.

Every tetrahedron carries an anchor: an H-shaped framed graph built in the
tetrahedron's own barycentric coordinates from its vertex ordering alone, so that
the two pentachora sharing a tetrahedron see the same anchor.  Legs end at a
point of each face defined from the face's vertex ordering, with a framing vector
lying in the face.

The boundary of the pentachoron is embedded in R^3 as a Schlegel diagram: four
tetrahedra fill a big tetrahedron and the fifth fills its complement through a
radial inversion.  The graph is projected along a generic direction and swept
from top to bottom into slices.  The output is a list of slices of abstract
operations whose labels are filled in per coloring.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .errors import ColoringError

# ---------------------------------------------------------------------------
# small vector helpers


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _mul(s, u):
    return (s * u[0], s * u[1], s * u[2])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _norm(u):
    return math.sqrt(_dot(u, u))


def _unit(u):
    n = _norm(u)
    return (u[0] / n, u[1] / n, u[2] / n)


def _det(u, v, w):
    return _dot(u, _cross(v, w))


def _mean(pts):
    n = len(pts)
    return (sum(p[0] for p in pts) / n, sum(p[1] for p in pts) / n, sum(p[2] for p in pts) / n)


def _perp(v, t):
    """Component of v orthogonal to the unit vector t."""
    return _sub(v, _mul(_dot(v, t), t))


# ---------------------------------------------------------------------------
# the anchor in a model tetrahedron

# positively oriented regular tetrahedron; vertex i is the i-th vertex in the ordering
_Q = ((1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, -1.0, 1.0), (-1.0, 1.0, -1.0))
_DEPART = 0.06
_SAMPLES = 16


def _mid(i, j):
    return _mul(0.5, _add(_Q[i], _Q[j]))


def _ccw(dirs, n) -> list[int]:
    """Indices of ``dirs`` sorted counterclockwise as seen from the tip of ``n``."""
    e1 = _unit(_perp(dirs[0], _unit(n)))
    e2 = _cross(_unit(n), e1)
    ang = [math.atan2(_dot(d, e2), _dot(d, e1)) % (2 * math.pi) for d in dirs]
    return sorted(range(len(dirs)), key=lambda i: ang[i])


def _same_cycle(a, b) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    if a[0] not in b:
        return False
    m = b.index(a[0])
    return b[m:] + b[:m] == list(a)


@dataclass
class _Anchor:
    vplus: tuple
    vminus: tuple
    normal: tuple
    legs: list  # legs[k]: list of (point, frame) from its vertex to the face point of face k
    tau: list  # (point, frame) samples from vplus to vminus


def _face_data(k):
    """Face point and face framing of the face opposite vertex k of the model."""
    e, f, g = [i for i in range(4) if i != k]
    meg = _mid(e, g)
    cen = _mean([_Q[e], _Q[f], _Q[g]])
    point = _mul(0.5, _add(meg, cen))
    frame = _sub(_Q[g], meg)
    return point, frame


def _segment(p, q, n0, n1, samples):
    """Samples of the straight segment p -> q with framing interpolated from n0 to n1."""
    out = []
    t = _unit(_sub(q, p))
    for s in range(samples + 1):
        u = s / samples
        x = _add(_mul(1 - u, p), _mul(u, q))
        n = _perp(_add(_mul(1 - u, n0), _mul(u, n1)), t)
        if _norm(n) < 1e-6:
            raise ColoringError("degenerate anchor framing")
        out.append((x, n, t))
    return out


def _build_anchor() -> _Anchor:
    quad = [_mid(0, 2), _mid(1, 2), _mid(1, 3), _mid(0, 3)]
    vplus = _mean([_mid(1, 2), _mid(1, 3), _mid(0, 3)])
    vminus = _mean([_mid(0, 3), _mid(0, 2), _mid(1, 2)])
    n = _unit(_cross(_sub(quad[1], quad[0]), _sub(quad[3], quad[0])))
    faces = [_face_data(k) for k in range(4)]

    def inplane(v):
        return _unit(_perp(v, n))

    u = {k: inplane(_sub(faces[k][0], vplus if k in (0, 2) else vminus)) for k in range(4)}
    tp = inplane(_sub(vminus, vplus))
    tm = _mul(-1.0, tp)
    # the + vertex is fuse(s0, s2 -> t): clockwise (s0, s2, t), i.e. counterclockwise (t, s2, s0)
    order = _ccw([u[0], u[2], tp], n)
    if not _same_cycle([2, 1, 0], order):
        n = _mul(-1.0, n)
    # the - vertex is split(t -> s1, s3): clockwise (t, s3, s1), i.e. counterclockwise (t, s1, s3)
    order = _ccw([tm, u[1], u[3]], n)
    if not _same_cycle([0, 1, 2], order):
        u[1], u[3] = u[3], u[1]
    legs = []
    for k in range(4):
        v = vplus if k in (0, 2) else vminus
        d = _add(v, _mul(_DEPART, u[k]))
        pts = _segment(v, d, n, n, 2)
        pts += _segment(d, faces[k][0], n, faces[k][1], _SAMPLES)[1:]
        legs.append(pts)
    tau = _segment(vplus, vminus, n, n, 6)
    return _Anchor(vplus, vminus, n, legs, tau)


_ANCHOR = _build_anchor()


def _bary(x):
    """Barycentric coordinates of a model point."""
    v = _sub(x, _Q[0])
    a, b, c = _sub(_Q[1], _Q[0]), _sub(_Q[2], _Q[0]), _sub(_Q[3], _Q[0])
    d = _det(a, b, c)
    l1 = _det(v, b, c) / d
    l2 = _det(a, v, c) / d
    l3 = _det(a, b, v) / d
    return (1 - l1 - l2 - l3, l1, l2, l3)


# ---------------------------------------------------------------------------
# embedding of the boundary of the pentachoron


class _Cell:
    """Map from the model tetrahedron to its place in R^3."""

    def __init__(self, verts, outer=None):
        self.verts = verts
        self.outer = outer

    def affine(self, x):
        b = _bary(x)
        p = (0.0, 0.0, 0.0)
        for w, v in zip(b, self.verts):
            p = _add(p, _mul(w, v))
        return p

    def __call__(self, x):
        p = self.affine(x)
        return p if self.outer is None else self.outer(p)

    def push(self, x, v, h=1e-6):
        return _mul(1 / h, _sub(self(_add(x, _mul(h, v))), self(x)))

    def orientation(self) -> int:
        a, b, c, d = (self.affine(q) for q in _Q)
        s = 1 if _det(_sub(b, a), _sub(c, a), _sub(d, a)) > 0 else -1
        return -s if self.outer is not None else s


class _Inversion:
    """Radial inversion of a tetrahedron onto the closure of its exterior, fixing the boundary."""

    def __init__(self, verts, center):
        self.c = center
        self.planes = []
        cen = _mean(verts)
        for k in range(4):
            a, b, c = [verts[i] for i in range(4) if i != k]
            nrm = _unit(_cross(_sub(b, a), _sub(c, a)))
            if _dot(nrm, _sub(cen, a)) > 0:
                nrm = _mul(-1.0, nrm)
            self.planes.append((nrm, _dot(nrm, a)))

    def __call__(self, p):
        d = _sub(p, self.c)
        r = _norm(d)
        u = _mul(1 / r, d)
        rb = min((off - _dot(nrm, self.c)) / _dot(nrm, u) for nrm, off in self.planes if _dot(nrm, u) > 1e-12)
        return _add(self.c, _mul(rb * rb / r, u))


_BIG = ((3.0, 3.0, 3.0), (3.0, -3.0, -3.0), (-3.0, 3.0, -3.0), (-3.0, -3.0, 3.0))
_INNER = (0.23, 0.26, 0.24, 0.27)
_CENTER = (0.64, 0.13, 0.11, 0.12)


def _points(sign: int):
    big = [p if sign > 0 else (-p[0], p[1], p[2]) for p in _BIG]
    inner = (0.0, 0.0, 0.0)
    for w, p in zip(_INNER, big):
        inner = _add(inner, _mul(w, p))
    center = (0.0, 0.0, 0.0)
    for w, p in zip(_CENTER, big):
        center = _add(center, _mul(w, p))
    return big + [inner], center


# ---------------------------------------------------------------------------
# the spatial graph


@dataclass
class _Edge:
    key: tuple  # ("tri", j, k) or ("tet", j)
    start: tuple  # vertex id at the first sample
    end: tuple
    forward: bool  # arrow runs from start to end
    pts: list = field(default_factory=list)  # 3D points
    frames: list = field(default_factory=list)
    tangents: list = field(default_factory=list)


def _spatial_graph(sign: int):
    """Edges, vertex morphisms and coupon normals of the network for an oriented pentachoron."""
    P, center = _points(sign)
    cells = {}
    for j in range(5):
        verts = [P[v] for v in range(5) if v != j]
        if j == 4:
            cells[j] = _Cell(verts, _Inversion(verts, center))
        else:
            cells[j] = _Cell(verts)
    type_one = {}
    for j in range(5):
        type_one[j] = cells[j].orientation() > 0
        if type_one[j] != ((j % 2 == 0) == (sign > 0)):
            raise ColoringError("embedding orientation disagrees with the boundary orientation")

    def mapped(cell, samples, step=0.25, turn=0.1):
        f = cells[cell]

        def image(x, n, t):
            tt = _unit(f.push(x, t))
            nn = _unit(_perp(f.push(x, n), tt))
            return f(x), nn, tt

        out = [image(*samples[0])]
        for (x0, n0, _), (x1, n1, t1) in zip(samples, samples[1:]):
            stack = [(1.0, image(x1, n1, t1))]
            u0 = 0.0
            while stack:
                u1, img = stack[-1]
                prev = out[-1]
                far = _norm(_sub(img[0], prev[0])) > step
                bent = _dot(img[1], prev[1]) < math.cos(turn) or _dot(img[2], prev[2]) < math.cos(turn)
                if (far or (bent and u1 > 0)) and u1 - u0 > 1e-6:
                    um = 0.5 * (u0 + u1)
                    x = _add(_mul(1 - um, x0), _mul(um, x1))
                    n = _add(_mul(1 - um, n0), _mul(um, n1))
                    stack.append((um, image(x, n, t1)))
                    continue
                stack.pop()
                out.append(img)
                u0 = u1
        return [o[0] for o in out], [o[1] for o in out], [o[2] for o in out]

    def vid(cell, face):
        return (cell, "+" if face in (0, 2) else "-")

    edges = {}
    for j, k in itertools.combinations(range(5), 2):
        fj, fk = k - 1, j  # index of the shared triangle as a face of cell j and of cell k
        pj, nj, tj = mapped(j, _ANCHOR.legs[fj])
        pk, nk, tk = mapped(k, _ANCHOR.legs[fk])
        into_j = (fj % 2 == 0) == type_one[j]
        into_k = (fk % 2 == 0) == type_one[k]
        if into_j == into_k:
            raise ColoringError("inconsistent arrows on a network edge")
        e = _Edge(("tri", j, k), vid(j, fj), vid(k, fk), forward=into_k)
        e.pts = pj + pk[::-1][1:]
        e.frames = nj + nk[::-1][1:]
        e.tangents = tj + [_mul(-1.0, t) for t in tk[::-1][1:]]
        edges[e.key] = e
    for j in range(5):
        p, n, t = mapped(j, _ANCHOR.tau)
        e = _Edge(("tet", j), (j, "+"), (j, "-"), forward=type_one[j])
        e.pts, e.frames, e.tangents = p, n, t
        edges[e.key] = e

    morph = {}
    for j in range(5):
        tri = []
        for f in range(4):
            other = f if f < j else f + 1
            tri.append(("tri",) + tuple(sorted((j, other))))
        t = ("tet", j)
        if type_one[j]:
            morph[(j, "+")] = ("fuse", tri[0], tri[2], t)
            morph[(j, "-")] = ("split", t, tri[1], tri[3])
        else:
            morph[(j, "+")] = ("split", t, tri[0], tri[2])
            morph[(j, "-")] = ("fuse", tri[1], tri[3], t)
    return edges, morph


# ---------------------------------------------------------------------------
# projection and sweep


def _frame_from(w, rng):
    w = _unit(w)
    a = _unit(_perp((rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)), w))
    b = _cross(w, a)
    return a, b, w


def _coupon_normals(edges):
    """Normal of each coupon, from the first segments of its legs, pointing along the framing."""
    first = {}
    for e in edges.values():
        first.setdefault(e.start, []).append((_sub(e.pts[1], e.pts[0]), e.frames[0]))
        first.setdefault(e.end, []).append((_sub(e.pts[-2], e.pts[-1]), e.frames[-1]))
    out = {}
    for v, lst in first.items():
        nrm = _unit(_cross(lst[0][0], lst[1][0]))
        if _dot(nrm, lst[0][1]) < 0:
            nrm = _mul(-1.0, nrm)
        out[v] = nrm
    return out


def _angle(t, n, z):
    b = _perp(z, t)
    nn = _perp(n, t)
    return math.atan2(_dot(_cross(b, nn), t), _dot(b, nn))


def _wrap(a):
    return (a + math.pi) % (2 * math.pi) - math.pi


def _twists(e: _Edge, normals, z) -> int:
    """Full twists of the ribbon relative to the blackboard framing.

    A coupon facing away from the viewer is turned over by a half turn about the
    vertical axis; this adds a half twist to each of its legs, of sign -1 on legs
    leaving it upwards and +1 on legs leaving it downwards (measured along the edge).
    """
    pts = e.pts
    frames = list(e.frames)
    # near the coupons the framing is the coupon normal
    for i in range(3):
        frames[i] = normals[e.start]
        frames[-1 - i] = normals[e.end]
    def slerp(u, v, s_):
        ang = math.acos(max(-1.0, min(1.0, _dot(u, v))))
        if ang < 1e-9:
            return u
        return _unit(_add(_mul(math.sin((1 - s_) * ang), u), _mul(math.sin(s_ * ang), v)))

    def state(i, s_):
        t = slerp(e.tangents[i], e.tangents[i + 1], s_)
        n = _add(_mul(1 - s_, frames[i]), _mul(s_, frames[i + 1]))
        if abs(_dot(t, z)) > 0.9999 or _norm(_cross(t, n)) < 1e-3 * _norm(n):
            raise _Retry
        return _angle(t, n, z)

    def turn(i, s0, a0, s1, a1, depth=0):
        d = _wrap(a1 - a0)
        if abs(d) < 0.3:
            return d
        if depth > 30:
            raise _Retry
        sm = 0.5 * (s0 + s1)
        am = state(i, sm)
        return turn(i, s0, a0, sm, am, depth + 1) + turn(i, sm, am, s1, a1, depth + 1)

    total = 0.0
    seq = [state(0, 0.0)]
    for i in range(len(e.pts) - 1):
        a1 = state(i, 1.0)
        total += turn(i, 0.0, seq[-1], 1.0, a1)
        seq.append(a1)

    def target(theta, back):
        if not back:
            return theta - _wrap(theta)
        return theta - _wrap(theta - math.pi)

    first, last = seq[0], seq[-1]
    back0, back1 = normals[e.start][2] < 0, normals[e.end][2] < 0
    adjusted = total + (target(last, back1) - last) - (target(first, back0) - first)
    if back0:
        adjusted += -math.pi if pts[1][1] > pts[0][1] else math.pi
    if back1:
        adjusted += -math.pi if pts[-2][1] > pts[-1][1] else math.pi
    k = adjusted / (2 * math.pi)
    r = round(k)
    if abs(k - r) > 1e-6:
        raise _Retry
    return int(r)


class _Retry(Exception):
    """The chosen projection is not generic enough."""


@dataclass
class _Sub:
    edge: tuple
    lo: float  # parameter interval along the edge polyline
    hi: float
    top: tuple  # node ids at the upper and lower ends
    bottom: tuple
    orient: str  # "up" when the arrow points down the page


def _interp(pts, s):
    i = min(int(math.floor(s)), len(pts) - 2)
    u = s - i
    return _add(_mul(1 - u, pts[i]), _mul(u, pts[i + 1]))


def _seg_intersect(p1, p2, q1, q2):
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (q2[0] - q1[0], q2[1] - q1[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-14:
        return None
    r = (q1[0] - p1[0], q1[1] - p1[1])
    s = (r[0] * d2[1] - r[1] * d2[0]) / den
    t = (r[0] * d1[1] - r[1] * d1[0]) / den
    if 0 < s < 1 and 0 < t < 1:
        return s, t
    return None


def _sweep(edges, morph, normals):
    """Slices of abstract operations for the projected graph (coordinates already rotated)."""
    z = (0.0, 0.0, 1.0)
    for v, nrm in normals.items():
        if abs(nrm[2]) < 0.05:
            raise _Retry
    twists = {k: _twists(e, normals, z) for k, e in edges.items()}

    # crossings
    segs = []
    for k, e in edges.items():
        for i in range(len(e.pts) - 1):
            segs.append((k, i))
    bbox = {}
    for k, i in segs:
        p, q = edges[k].pts[i], edges[k].pts[i + 1]
        bbox[(k, i)] = (min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))
    crossings = []
    for (ka, ia), (kb, ib) in itertools.combinations(segs, 2):
        if ka == kb and abs(ia - ib) <= 1:
            continue
        A, B = bbox[(ka, ia)], bbox[(kb, ib)]
        if A[1] < B[0] or B[1] < A[0] or A[3] < B[2] or B[3] < A[2]:
            continue
        ea, eb = edges[ka], edges[kb]
        hit = _seg_intersect(ea.pts[ia], ea.pts[ia + 1], eb.pts[ib], eb.pts[ib + 1])
        if hit is None:
            continue
        s, t = hit
        if min(s, 1 - s, t, 1 - t) < 1e-4:
            raise _Retry
        crossings.append((ka, ia + s, kb, ib + t))

    # break points along every edge
    nodes = {}  # id -> (x, y)
    breaks = {k: [] for k in edges}
    for k, e in edges.items():
        ys = [p[1] for p in e.pts]
        for i in range(1, len(ys) - 1):
            if (ys[i] - ys[i - 1]) * (ys[i + 1] - ys[i]) < 0:
                nid = ("ext", k, i)
                nodes[nid] = e.pts[i]
                breaks[k].append((float(i), nid))
            elif ys[i] == ys[i - 1] or ys[i] == ys[i + 1]:
                raise _Retry
    for c, (ka, sa, kb, sb) in enumerate(crossings):
        nid = ("x", c)
        nodes[nid] = _interp(edges[ka].pts, sa)
        breaks[ka].append((sa, nid))
        breaks[kb].append((sb, nid))
    for k, e in edges.items():
        nodes[("v",) + e.start] = e.pts[0]
        nodes[("v",) + e.end] = e.pts[-1]
    ys = sorted(p[1] for p in nodes.values())
    if any(b - a < 1e-7 for a, b in zip(ys, ys[1:])):
        raise _Retry

    subs: list[_Sub] = []
    for k, e in edges.items():
        marks = [(0.0, ("v",) + e.start)] + sorted(breaks[k]) + [(float(len(e.pts) - 1), ("v",) + e.end)]
        for (s0, n0), (s1, n1) in zip(marks, marks[1:]):
            y0, y1 = nodes[n0][1], nodes[n1][1]
            down = y1 < y0  # the parameter increases down the page
            top, bottom = (n0, n1) if down else (n1, n0)
            orient = "up" if down == e.forward else "down"
            subs.append(_Sub(k, s0, s1, top, bottom, orient))

    def end_param(sb: _Sub, node):
        return sb.lo if _close(_interp(edges[sb.edge].pts, sb.lo), nodes[node]) else sb.hi

    def angle_at(sb, node, eps=1e-3):
        s0 = end_param(sb, node)
        s1 = min(sb.hi, s0 + eps) if s0 == sb.lo else max(sb.lo, s0 - eps)
        p, q = nodes[node], _interp(edges[sb.edge].pts, s1)
        return math.atan2(q[1] - p[1], q[0] - p[0])

    def x_at(sb, y):
        pts = edges[sb.edge].pts
        lo, hi = sb.lo, sb.hi
        ylo = _interp(pts, lo)[1]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            ym = _interp(pts, mid)[1]
            if (ym - y) * (ylo - y) > 0:
                lo, ylo = mid, ym
            else:
                hi = mid
        return _interp(pts, 0.5 * (lo + hi))[0]

    ups = {n: [] for n in nodes}
    downs = {n: [] for n in nodes}
    for i, sb in enumerate(subs):
        downs[sb.top].append(i)
        ups[sb.bottom].append(i)

    order = sorted(nodes, key=lambda n: -nodes[n][1])
    active: list[int] = []
    ops: list[list[tuple]] = []
    placed = set()

    def emit(*op):
        ops.append([op])

    for n in order:
        x, y, _ = nodes[n]
        up = sorted(ups[n], key=lambda i: -angle_at(subs[i], n))
        dn = sorted(downs[n], key=lambda i: angle_at(subs[i], n))
        if up:
            idx = [active.index(i) for i in up]
            if idx != list(range(idx[0], idx[0] + len(idx))):
                raise _Retry
            at = idx[0]
        else:
            at = sum(1 for i in active if x_at(subs[i], y) < x)
        kind = n[0]
        if kind == "ext":
            if up:
                emit("cap", at)
            else:
                a, b = dn
                emit("cup", at, subs[a].edge, subs[a].orient)
        elif kind == "x":
            if len(up) != 2 or len(dn) != 2:
                raise _Retry
            l, r = (subs[i] for i in up)
            zl = _interp(edges[l.edge].pts, end_param(l, n))[2]
            zr = _interp(edges[r.edge].pts, end_param(r, n))[2]
            emit("over" if zl > zr else "under", at)
        else:
            vert = n[1:]
            _vertex_ops(emit, morph[vert], at, [subs[i] for i in up], [subs[i] for i in dn], normals[vert][2] < 0)
        active[at:at + len(up)] = dn
        for p_, i in enumerate(dn):
            k = subs[i].edge
            if k not in placed:
                placed.add(k)
                t = twists[k]
                for _ in range(abs(t)):
                    emit("twist", at + p_, 1 if t > 0 else -1)
    if active:
        raise _Retry
    return ops


def _close(a, b):
    """Same point of the projection."""
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) < 1e-9


def _half_twist(emit, at, n, kind):
    for i in range(n - 1):
        for j in range(n - 1 - i):
            emit(kind, at + j)


def _vertex_ops(emit, spec, at, upper: list[_Sub], lower: list[_Sub], back: bool = False):
    """Operations realising one trivalent vertex whose upper legs sit at ``at``.

    A coupon facing away is turned over first: its upper legs pass through a
    half twist of over-crossings and its lower legs through one of under-crossings.
    """
    if back:
        _half_twist(emit, at, len(upper), "over")
        upper, lower = upper[::-1], lower[::-1]
    kind = spec[0]
    if kind == "fuse":
        a, b, c = spec[1:]
        native = [c, b, a]
        orient = {c: "up", a: "down", b: "down"}
    else:
        c, a, b = spec[1:]
        native = [a, b, c]
        orient = {a: "up", b: "up", c: "down"}
    want = [s.edge for s in reversed(upper)] + [s.edge for s in lower]
    if not _same_cycle(want, native):
        raise ColoringError("vertex reading disagrees with its morphism")
    for s in upper:
        if s.orient == orient[s.edge]:
            raise ColoringError("arrow mismatch at a vertex")
    for s in lower:
        if s.orient != orient[s.edge]:
            raise ColoringError("arrow mismatch at a vertex")
    k = len(upper)
    m = native.index(want[0])
    P = at + k
    for i, e in enumerate(reversed(native[:m])):
        emit("cup", P + i, e, "down" if orient[e] == "up" else "up")
    Q = P + m
    if kind == "fuse":
        emit("cup", Q, a, "up")
        emit("cup", Q + 1, b, "up")
        emit("fuse", Q, a, b, c)
    else:
        emit("cup", Q, c, "up")
        emit("split", Q, c, a, b)
    for i in range(m):
        emit("cap", Q - 1 - i)
    for i in range(k):
        emit("cap", at + k - 1 - i)
    if back:
        _half_twist(emit, at, len(lower), "under")


_CACHE: dict[tuple[int, int], list] = {}


def network_ops(sign: int, seed: int = 0) -> list:
    """Slices of abstract operations for the network of a pentachoron of the given sign.

    Operations are tuples ``("cup", pos, edge, orient)``, ``("cap", pos)``,
    ``("over"|"under", pos)``, ``("twist", pos, sign)``, ``("fuse", pos, a, b, c)`` and
    ``("split", pos, c, a, b)`` where edges are ``("tri", j, k)`` for the triangle
    missing the j-th and k-th vertices or ``("tet", j)`` for the tetrahedron missing
    the j-th vertex.
    """
    sign = 1 if sign > 0 else -1
    if (sign, seed) not in _CACHE:
        edges, morph = _spatial_graph(sign)
        _CACHE[(sign, seed)] = project(edges, morph, random.Random(seed))
    return _CACHE[(sign, seed)]


def project(edges: dict, morph: dict, rng: random.Random, tries: int = 400) -> list:
    """Slice operations of a framed spatial graph seen from a random generic direction."""
    for _ in range(tries):
        w = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        e1, e2, e3 = _frame_from(w, rng)

        def rot(p):
            return (_dot(p, e1), _dot(p, e2), _dot(p, e3))

        proj = {}
        for k, e in edges.items():
            proj[k] = _Edge(e.key, e.start, e.end, e.forward, [rot(p) for p in e.pts], [rot(n) for n in e.frames],
                            [rot(t) for t in e.tangents])
        normals = _coupon_normals(proj)
        try:
            return _sweep(proj, morph, normals)
        except _Retry:
            continue
    raise ColoringError("no generic projection of the network was found")
