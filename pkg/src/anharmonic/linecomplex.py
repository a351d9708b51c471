"""Line complexes of locally univalent meromorphic functions.

A base curve through the asymptotic values ``b_1 .. b_q`` splits the sphere
into two half-spheres; their preimages are the o- and x-vertices. Edges are
preimages of the arcs between consecutive ``b_k`` and faces are preimages
of the points ``b_k``: 2-gons at ordinary preimages, infinite faces over
logarithmic singularities.

A complex is stored as a finite window. Around every vertex the faces
(corners) and edges alternate anticlockwise: edge slot ``s`` lies between
corner ``s`` and corner ``s + 1``. Edges leaving the window have slot
``None`` and faces cut by the window are marked open.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .trees import EmbeddedTree, double_symmetric_trees

TWO_GON = "2-gon"
INF_GON = "inf-gon"


class InfeasibleComplex(ValueError):
    """No line complex with the requested faces and labels."""


@dataclass(frozen=True)
class LineComplex:
    q: int
    base: tuple  # labels in the cyclic order of the base curve
    kinds: tuple[str, ...]
    corners: tuple[tuple[int, ...], ...]
    slots: tuple[tuple[int | None, ...], ...]
    edges: tuple[tuple[int, int, int, int], ...]  # (u, slot at u, w, slot at w)
    face_kind: tuple[str, ...]
    face_label: tuple
    face_open: tuple[bool, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.kinds)

    def with_labels(self, labels) -> "LineComplex":
        return replace(self, face_label=tuple(labels))


@dataclass(frozen=True)
class ComplexReport:
    clauses: dict
    details: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    @property
    def violated(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "clauses": dict(self.clauses), "details": list(self.details)}


def validate_line_complex(L: LineComplex) -> ComplexReport:
    clauses = {k: True for k in ("degree", "edges", "no_loops", "bipartite", "distinct",
                                 "order", "faces")}
    details: list[str] = []

    def fail(key, msg):
        clauses[key] = False
        if len(details) < 50:
            details.append(f"{key}: {msg}")

    q = L.q
    pos = {b: k for k, b in enumerate(L.base)}
    if len(pos) != q:
        fail("distinct", "base labels repeat")
    for v in range(L.n_vertices):
        if L.kinds[v] not in ("o", "x"):
            fail("bipartite", f"vertex {v} has kind {L.kinds[v]!r}")
        if len(L.corners[v]) != q or len(L.slots[v]) != q:
            fail("degree", f"vertex {v} has {len(L.corners[v])} faces, {len(L.slots[v])} edges")
            continue
        labels = [L.face_label[f] for f in L.corners[v]]
        if None in labels or any(lab not in pos for lab in labels):
            fail("distinct", f"vertex {v} has unlabelled faces")
            continue
        if len(set(labels)) != q:
            fail("distinct", f"labels {labels} repeat around vertex {v}")
        step = 1 if L.kinds[v] == "o" else -1
        idx = [pos[lab] for lab in labels]
        if any((idx[(s + 1) % q] - idx[s]) % q != step % q for s in range(q)):
            way = "anticlockwise" if step == 1 else "clockwise"
            fail("order", f"labels around {L.kinds[v]}-vertex {v} do not follow the base "
                          f"order {way}")
    for e, (u, su, w, sw) in enumerate(L.edges):
        if u == w:
            fail("no_loops", f"edge {e} is a loop at {u}")
        if L.kinds[u] == L.kinds[w]:
            fail("bipartite", f"edge {e} joins two {L.kinds[u]}-vertices")
        if L.slots[u][su] != e or L.slots[w][sw] != e:
            fail("edges", f"edge {e} not registered at its slots")
            continue
        if (L.corners[w][sw] != L.corners[u][(su + 1) % q]
                or L.corners[w][(sw + 1) % q] != L.corners[u][su]):
            fail("edges", f"faces on the two sides of edge {e} disagree")
    seen = {e for row in L.slots for e in row if e is not None}
    if seen != set(range(len(L.edges))):
        fail("edges", "slot references do not match the edge list")
    incid: dict[int, list[tuple[int, int]]] = {}
    for v, row in enumerate(L.corners):
        for s, f in enumerate(row):
            incid.setdefault(f, []).append((v, s))
    for f, kind in enumerate(L.face_kind):
        around = incid.get(f, [])
        if kind == INF_GON:
            if not L.face_open[f]:
                fail("faces", f"infinite face {f} is closed")
            continue
        if kind != TWO_GON:
            fail("faces", f"face {f} has kind {kind!r}")
            continue
        if L.face_open[f]:
            if len(around) > 2:
                fail("faces", f"2-gon {f} has {len(around)} corners")
            continue
        if len(around) != 2 or {L.kinds[v] for v, _ in around} != {"o", "x"}:
            fail("faces", f"2-gon {f} needs one o- and one x-corner, has {around}")
            continue
        (v, s), (w, _) = around
        e1, e2 = L.slots[v][(s - 1) % q], L.slots[v][s]
        ends = []
        for e in (e1, e2):
            if e is None:
                ends.append(None)
            else:
                a, _, b, _ = L.edges[e]
                ends.append(b if a == v else a)
        if ends != [w, w]:
            fail("faces", f"2-gon {f} is not bounded by two edges between {v} and {w}")
    return ComplexReport(clauses, tuple(details))


def propagate_labels(L: LineComplex, seeds: dict) -> LineComplex:
    """Spread face labels from the seeds by the rotation rule around vertices.

    The first label reaching a face is kept; conflicts are left for the
    validator to find.
    """
    q = L.q
    labels = [None] * len(L.face_kind)
    for f, lab in seeds.items():
        labels[f] = lab
    pos = {b: k for k, b in enumerate(L.base)}
    at: dict[int, list[int]] = {}
    for v, row in enumerate(L.corners):
        for f in row:
            at.setdefault(f, []).append(v)
    queue = deque(seeds)
    done = set()
    while queue:
        f = queue.popleft()
        for v in at.get(f, []):
            if v in done:
                continue
            done.add(v)
            row = L.corners[v]
            s0 = row.index(f)
            step = 1 if L.kinds[v] == "o" else -1
            for s, g in enumerate(row):
                if labels[g] is None:
                    labels[g] = L.base[(pos[labels[f]] + step * (s - s0)) % q]
                    queue.append(g)
    return L.with_labels(labels)


# ---------------------------------------------------------------- construction from trees

_CUT = -1


def _vertex_kind(labels, faces, q: int) -> str | None:
    """Kind for which the faces around a vertex wind once through the base."""
    r = len(faces)
    diffs = [(labels[faces[s]] - labels[faces[s - 1]]) % q for s in range(r)]
    if 0 in diffs:
        return None
    total = sum(diffs)
    if total == q:
        return "o"
    if total == (r - 1) * q:
        return "x"
    return None


def complex_from_tree(t: EmbeddedTree, labels, base, arm: int = 4) -> LineComplex:
    """Line complex whose infinite faces are the faces of t.

    ``labels[k]`` is the base label of face F_k. Bundles of parallel edges
    with 2-gons between them replace the tree edges; each end becomes a
    ladder of ``arm`` vertices cut at the window. Vertex kinds are forced by
    the labels; a vertex is inserted where both ends of a tree edge have the
    same kind.
    """
    q = len(base)
    pos = {b: k for k, b in enumerate(base)}
    lab = [pos[x] for x in labels]
    if t.ends != len(lab):
        raise InfeasibleComplex("one label per face required")
    if arm < 1:
        raise ValueError("arm must be at least 1")
    t = EmbeddedTree.from_splits(t.ends, t.splits(), t.offset)
    other = {"o": "x", "x": "o"}
    kinds: list[str] = []
    index = {}
    for v in t.vertices:
        index[v] = len(kinds)
        kind = _vertex_kind(lab, t.faces_at(v), q)
        if kind is None:
            raise InfeasibleComplex(f"faces {t.faces_at(v)} cannot surround a vertex")
        kinds.append(kind)
    branches: list[list[tuple[int, int]]] = [[] for _ in kinds]

    def new(kind, row):
        kinds.append(kind)
        branches.append(row)
        return len(kinds) - 1

    first = {}  # (tree vertex, neighbour) -> skeleton vertex reached first
    for v in t.vertices:
        u = index[v]
        faces = t.faces_at(v)
        for s, w in enumerate(t.adjacency[v]):
            after, before = faces[s], faces[s - 1]
            if w < t.ends:
                # ladder towards the end; branch lists hold (target, face after)
                chain = []
                kind = other[kinds[u]]
                for _ in range(arm):
                    chain.append(new(kind, []))
                    kind = other[kind]
                for k, c in enumerate(chain):
                    nxt = chain[k + 1] if k + 1 < arm else _CUT
                    branches[c] = [(nxt, after), (chain[k - 1] if k else u, before)]
                first[v, w] = chain[0]
            elif v < w:
                x = index[w]
                if kinds[u] == kinds[x]:
                    z = new(other[kinds[u]], [(x, after), (u, before)])
                    first[v, w] = first[w, v] = z
                else:
                    first[v, w], first[w, v] = x, u
    for v in t.vertices:
        faces = t.faces_at(v)
        branches[index[v]] = [(first[v, w], faces[s]) for s, w in enumerate(t.adjacency[v])]
    return _expand(q, tuple(base), kinds, branches, lab, t.ends)


def _expand(q, base, kinds, branches, lab, n_faces) -> LineComplex:
    n = len(kinds)
    face_kind = [INF_GON] * n_faces
    face_label: list = [base[x] for x in lab]
    face_open = [True] * n_faces
    corners: list[list[int]] = [[] for _ in range(n)]
    slots: list[list] = [[] for _ in range(n)]
    pending: dict = {}  # bundle key -> list of (vertex, slots, 2-gon ids)
    edges: list[list] = []
    twogon: dict = {}
    for u in range(n):
        row = branches[u]
        r = len(row)
        sign = 1 if kinds[u] == "o" else -1
        items_c: list[int] = []
        items_s: list = []
        total = 0
        for s in range(r):
            target, after = row[s]
            before = row[s - 1][1]
            m = (sign * (lab[after] - lab[before])) % q
            total += m
            if m == 0:
                raise InfeasibleComplex(f"equal labels across a branch at vertex {u}")
            key = ("cut", u, s) if target == _CUT else (min(u, target), max(u, target))
            # bundle edges k = 0..m-1 anticlockwise as seen from the o-end
            o_side = kinds[u] == "o"
            order = range(m) if o_side else range(m - 1, -1, -1)
            for i, k in enumerate(order):
                e_key = key + ("e", k)
                items_s.append(e_key)
                if i < m - 1:
                    g = k if o_side else k - 1
                    g_key = key + ("g", g)
                    if g_key not in twogon:
                        twogon[g_key] = len(face_kind)
                        face_kind.append(TWO_GON)
                        face_label.append(base[(lab[before] + sign * (i + 1)) % q])
                        face_open.append(target == _CUT)
                    items_c.append(twogon[g_key])
            items_c.append(after)
        if total != q:
            raise InfeasibleComplex(f"labels wind {total / q:g} times around vertex {u}")
        # corner s precedes slot s: rotate so the first corner is the face before branch 0
        corners[u] = [row[-1][1]] + items_c[:-1]
        slots[u] = items_s
        for s, e_key in enumerate(items_s):
            pending.setdefault(e_key, []).append((u, s))
    slot_ids: list[list] = [[None] * q for _ in range(n)]
    for e_key, ends in sorted(pending.items(), key=lambda kv: str(kv[0])):
        if len(ends) == 2:
            (u, su), (w, sw) = ends
            slot_ids[u][su] = slot_ids[w][sw] = len(edges)
            edges.append((u, su, w, sw))
        elif e_key[0] != "cut" and len(ends) != 1:
            raise InfeasibleComplex(f"bundle edge {e_key} has {len(ends)} ends")
    return LineComplex(q, base, tuple(kinds), tuple(map(tuple, corners)),
                       tuple(map(tuple, slot_ids)), tuple(map(tuple, edges)),
                       tuple(face_kind), tuple(face_label), tuple(face_open))


def exponential_complex(arm: int = 3) -> LineComplex:
    """Window of the line complex of exp: an alternating o/x chain of
    2 arm + 1 vertices between two infinite faces over 0 and infinity."""
    t = EmbeddedTree.build(2, [(0, 2), (2, 1)])
    return complex_from_tree(t, ("0", "inf"), ("0", "inf"), arm=arm)


# asymptotic values in the 12 sectors for d = 10, with a = 2i and b = i; the
# base curve is the imaginary axis traversed upwards
D10_BASE = ("Ra", "Rb", "0", "b", "a")
D10_SECTORS = ("0", "a", "0", "b", "0", "a", "0", "Ra", "0", "Rb", "0", "Ra")


def symmetric_complexes(arm: int = 3, base=D10_BASE, sectors=D10_SECTORS) -> list[LineComplex]:
    """All complexes built from trees invariant under R and I whose infinite
    faces carry the sector values in order."""
    out = []
    for t in double_symmetric_trees(len(sectors), ends_on_axes=False):
        try:
            out.append(complex_from_tree(t, sectors, base, arm))
        except InfeasibleComplex:
            continue
    return out
