"""Planar trees with marked ends, their symmetries and face labels.

A properly embedded tree with ``E`` ends is stored as a finite tree whose
leaves ``0 .. E-1`` stand for the unbounded ends, numbered anticlockwise.
End ``j`` points in the direction ``pi (2 j + offset) / E``; the default
``offset = -1`` puts the positive real axis in the middle of face ``F_0``,
which lies between ends 0 and 1. Face ``F_t`` lies between ends ``t`` and
``t + 1`` and carries ``face_labels[t]``.

``R`` is complex conjugation and ``I`` the reflection ``z -> -conj(z)``.
On ends they act by ``j -> -j - offset`` and ``j -> E/2 - j - offset``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

KINDS = ("o", "x", "v")


class InvalidTree(ValueError):
    """The data do not describe a planar tree with the given ends."""


# ---------------------------------------------------------------- plane trees
# A rooted plane tree is a nested tuple: () is a leaf, otherwise the tuple of
# children in anticlockwise order. Inner nodes other than the root have at
# least two children, so there are no vertices of degree 2.

@lru_cache(maxsize=None)
def plane_trees(n: int) -> tuple:
    """Plane trees with n leaves and no unary nodes."""
    if n == 1:
        return ((),)
    out = []
    for a in range(1, n):
        for t in plane_trees(a):
            for rest in plane_forests(n - a):
                out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def plane_forests(n: int) -> tuple:
    """Sequences of plane trees with n leaves in total (empty only for n = 0).

    A sequence of two or more trees is the child list of an inner node, so
    these are the one-tree sequences plus the inner trees themselves.
    """
    if n == 0:
        return ((),)
    trees = plane_trees(n)
    return tuple((t,) for t in trees) + tuple(t for t in trees if t != ())


def mirror(t: tuple) -> tuple:
    return tuple(mirror(c) for c in reversed(t))


def leaf_count(t: tuple) -> int:
    return 1 if t == () else sum(leaf_count(c) for c in t)


def plane_word(t: tuple) -> str:
    return "e" if t == () else "v(" + "".join(plane_word(c) for c in t) + ")"


def rooted_word(children: tuple) -> str:
    return "r(" + "".join(plane_word(c) for c in children) + ")"


def symmetric_forests(n: int) -> list[tuple]:
    """Children sequences of a root with n leaves that equal their own mirror."""
    return [s for s in plane_forests(n) if s and mirror(s) == s]


def enumerate_rooted_symmetric(ends: int) -> list[str]:
    """Rooted planar trees with ``ends`` ends, no vertices of degree 2 away
    from the root, symmetric under the reflection through the root."""
    if ends < 1:
        raise ValueError("ends must be at least 1")
    return sorted({rooted_word(s) for s in symmetric_forests(ends)})


# ---------------------------------------------------------------- embedded trees

def _popcount(m: int) -> int:
    return bin(m).count("1")


def _interval(mask: int, n: int) -> tuple[int, int] | None:
    """(first, last) if mask is a non-empty proper cyclic interval of 0..n-1."""
    full = (1 << n) - 1
    if mask <= 0 or mask >= full:
        return None
    starts = [j for j in range(n) if mask >> j & 1 and not mask >> ((j - 1) % n) & 1]
    if len(starts) != 1:
        return None
    s = starts[0]
    return s, (s + _popcount(mask) - 1) % n


def end_angle(j: int, ends: int, offset: int = -1) -> float:
    """Direction of end j in (-pi, pi]."""
    a = math.pi * (2 * j + offset) / ends
    return math.atan2(math.sin(a), math.cos(a))


@dataclass(frozen=True, eq=False)
class EmbeddedTree:
    """Finite encoding of a properly embedded tree.

    ``adjacency[v]`` lists the neighbours of node v anticlockwise. Nodes
    ``0 .. ends-1`` are the ends, the rest are vertices with kind 'o', 'x'
    or 'v' (undecorated).
    """

    ends: int
    adjacency: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]
    face_labels: tuple | None = None
    offset: int = -1
    _sides: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        E = self.ends
        n = len(self.adjacency)
        if E < 2:
            raise InvalidTree("need at least two ends")
        if len(self.kinds) != n:
            raise InvalidTree("one kind per node required")
        if self.offset not in (-1, 0):
            raise InvalidTree("offset must be -1 or 0")
        if self.face_labels is not None and len(self.face_labels) != E:
            raise InvalidTree("one label per face required")
        for v, nb in enumerate(self.adjacency):
            if v < E and len(nb) != 1:
                raise InvalidTree(f"end {v} must have exactly one edge")
            if v >= E and (self.kinds[v] not in KINDS or not nb):
                raise InvalidTree(f"bad vertex {v}")
            if len(set(nb)) != len(nb) or v in nb:
                raise InvalidTree(f"multiple edge or loop at {v}")
            for w in nb:
                if not 0 <= w < n or v not in self.adjacency[w]:
                    raise InvalidTree(f"edge {v}-{w} is not symmetric")
        if sum(len(nb) for nb in self.adjacency) != 2 * (n - 1):
            raise InvalidTree("edge count of a tree is nodes - 1")
        object.__setattr__(self, "_sides", self._compute_sides())
        for v in range(E, n):
            masks = [self._sides[v, w] for w in self.adjacency[v]]
            spans = [_interval(m, E) for m in masks]
            if None in spans:
                raise InvalidTree(f"branches at vertex {v} are not cyclic intervals")
            # anticlockwise order: each branch starts where the previous ends
            for k, (s, t) in enumerate(spans):
                nxt = spans[(k + 1) % len(spans)][0]
                if nxt != (t + 1) % E:
                    raise InvalidTree(f"rotation at vertex {v} is not planar")

    def _compute_sides(self) -> dict:
        n = len(self.adjacency)
        parent = [-1] * n
        order = []
        seen = [False] * n
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            order.append(v)
            for w in self.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    stack.append(w)
        if not all(seen):
            raise InvalidTree("graph is not connected")
        sub = [0] * n
        for v in reversed(order):
            if v < self.ends:
                sub[v] |= 1 << v
            if parent[v] >= 0:
                sub[parent[v]] |= sub[v]
        full = (1 << self.ends) - 1
        sides = {}
        for v in range(n):
            for w in self.adjacency[v]:
                sides[v, w] = sub[w] if parent[w] == v else full ^ sub[v]
        return sides

    # -- construction

    @classmethod
    def build(cls, ends: int, edges, kinds=None, face_labels=None, offset: int = -1,
              n_nodes: int | None = None) -> "EmbeddedTree":
        """Tree from an edge list; rotations follow from the order of the ends."""
        edges = [tuple(e) for e in edges]
        n = n_nodes if n_nodes is not None else 1 + max(max(e) for e in edges)
        nb: list[list[int]] = [[] for _ in range(n)]
        for a, b in edges:
            nb[a].append(b)
            nb[b].append(a)
        if kinds is None:
            kinds = ["end"] * ends + ["v"] * (n - ends)
        kinds = tuple(kinds)
        # sort neighbours anticlockwise by the first end of their branch
        probe = _Probe(ends, nb)
        adjacency = []
        for v in range(n):
            if v < ends:
                adjacency.append(tuple(nb[v]))
                continue
            items = sorted(nb[v], key=lambda w: probe.first_end(v, w))
            adjacency.append(tuple(items))
        return cls(ends, tuple(adjacency), kinds,
                   tuple(face_labels) if face_labels is not None else None, offset)

    @classmethod
    def from_splits(cls, ends: int, splits, offset: int = -1,
                    face_labels=None) -> "EmbeddedTree":
        """Tree without degree-2 vertices from its non-trivial splits.

        Each split is a set of ends (or bit mask) not containing end 0."""
        masks = sorted({_as_mask(s) for s in splits}, key=_popcount)
        full_rest = ((1 << ends) - 1) ^ 1
        edges = []
        # vertex for each split plus the vertex next to end 0
        sets = masks + [full_rest]
        vid = {m: ends + i for i, m in enumerate(sets)}
        for i, m in enumerate(sets):
            parent = next((p for p in sets[i + 1:] if m & p == m and p != m), None)
            if parent is not None:
                edges.append((vid[m], vid[parent]))
        edges.append((0, vid[full_rest]))
        for j in range(1, ends):
            owner = next(m for m in sets if m >> j & 1)
            edges.append((j, vid[owner]))
        return cls.build(ends, edges, None, face_labels, offset, n_nodes=ends + len(sets))

    def with_labels(self, labels) -> "EmbeddedTree":
        return EmbeddedTree(self.ends, self.adjacency, self.kinds, tuple(labels), self.offset)

    def with_kinds(self, kinds) -> "EmbeddedTree":
        return EmbeddedTree(self.ends, self.adjacency, tuple(kinds), self.face_labels,
                            self.offset)

    # -- structure

    @property
    def vertices(self) -> range:
        return range(self.ends, len(self.adjacency))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def side(self, v: int, w: int) -> int:
        """Ends reached from v through its neighbour w, as a bit mask."""
        return self._sides[v, w]

    def edges(self):
        for v, nb in enumerate(self.adjacency):
            for w in nb:
                if v < w:
                    yield v, w

    def faces_at(self, v: int) -> list[int]:
        """Indices t of the faces F_t around vertex v, anticlockwise."""
        out = []
        for w in self.adjacency[v]:
            _, t = _interval(self.side(v, w), self.ends)
            out.append(t)
        return out

    def edge_faces(self, v: int, w: int) -> tuple[int, int]:
        """The two faces bordering edge v-w."""
        m = self.side(v, w)
        if _popcount(m) == self.ends - 1 or m == 0:
            m = self.side(w, v)
        s, t = _interval(m, self.ends)
        return (s - 1) % self.ends, t

    def splits(self) -> frozenset[int]:
        """Non-trivial splits, each as the side not containing end 0."""
        out = set()
        for v, w in self.edges():
            m = self.side(v, w)
            if m & 1:
                m ^= (1 << self.ends) - 1
            if 2 <= _popcount(m) <= self.ends - 2:
                out.add(m)
        return frozenset(out)

    # -- symmetry

    def r_end(self, j: int) -> int:
        return (-j - self.offset) % self.ends

    def i_end(self, j: int) -> int:
        return (self.ends // 2 - j - self.offset) % self.ends

    def act(self, perm) -> frozenset[int]:
        """Splits of the image under an end permutation."""
        full = (1 << self.ends) - 1
        out = set()
        for m in self.splits():
            img = sum(1 << perm(j) for j in range(self.ends) if m >> j & 1)
            out.add(img ^ full if img & 1 else img)
        return frozenset(out)

    def is_double_symmetric(self) -> bool:
        """Splits invariant under both R and I (degree-2 vertices ignored)."""
        if self.ends % 2:
            return False
        s = self.splits()
        return self.act(self.r_end) == s and self.act(self.i_end) == s

    def node_key(self, v: int):
        """Position-independent name of a node: its branches, and for a vertex
        of degree 2 also its place along the chain."""
        if v < self.ends:
            return ("end", v)
        comps = frozenset(self.side(v, w) for w in self.adjacency[v])
        if self.degree(v) != 2:
            return ("v", comps)
        a, b = sorted(comps)
        # walk towards the side a until the chain ends
        prev, cur, pos = v, next(w for w in self.adjacency[v] if self.side(v, w) == a), 0
        while cur >= self.ends and self.degree(cur) == 2:
            nxt = next(w for w in self.adjacency[cur] if w != prev)
            prev, cur, pos = cur, nxt, pos + 1
        return ("c", a, b, pos)

    def _image_key(self, key, perm):
        def img(m):
            return sum(1 << perm(j) for j in range(self.ends) if m >> j & 1)

        if key[0] == "end":
            return ("end", perm(key[1]))
        if key[0] == "v":
            return ("v", frozenset(img(m) for m in key[1]))
        _, a, b, pos = key
        ia, ib = img(a), img(b)
        if ia < ib:
            return ("c", ia, ib, pos)
        length = self._chain_length(a, b)
        return ("c", ib, ia, length - 1 - pos)

    def _chain_length(self, a: int, b: int) -> int:
        return sum(1 for v in self.vertices if self.degree(v) == 2
                   and self.node_key(v)[1:3] == (a, b))

    def node_map(self, perm) -> dict[int, int] | None:
        """Node bijection induced by an end permutation, or None if the tree
        (with its kinds) is not invariant."""
        index = {self.node_key(v): v for v in range(len(self.adjacency))}
        out = {}
        for v in range(len(self.adjacency)):
            w = index.get(self._image_key(self.node_key(v), perm))
            if w is None or self.kinds[w] != self.kinds[v]:
                return None
            out[v] = w
        for v, w in self.edges():
            if out[w] not in self.adjacency[out[v]]:
                return None
        return out

    def symmetry_maps(self) -> tuple[dict, dict] | None:
        """The involutions r and i on nodes, when the tree is invariant."""
        r = self.node_map(self.r_end)
        i = self.node_map(self.i_end)
        if r is None or i is None:
            return None
        return r, i

    def relabel(self, shift: int) -> "EmbeddedTree":
        """Same tree with end j renamed j + shift (kinds and labels move along)."""
        E = self.ends
        n = len(self.adjacency)
        ren = {v: (v + shift) % E if v < E else v for v in range(n)}
        inv = {b: a for a, b in ren.items()}
        adjacency = tuple(tuple(ren[w] for w in self.adjacency[inv[v]]) for v in range(n))
        kinds = tuple(self.kinds[inv[v]] for v in range(n))
        labels = None
        if self.face_labels is not None:
            labels = tuple(self.face_labels[(t - shift) % E] for t in range(E))
        return EmbeddedTree(E, adjacency, kinds, labels, self.offset)

    def subdivide(self, v: int, w: int, kind: str = "v") -> "EmbeddedTree":
        """Insert a degree-2 vertex on edge v-w."""
        n = len(self.adjacency)
        adj = [list(nb) for nb in self.adjacency]
        adj[v][adj[v].index(w)] = n
        adj[w][adj[w].index(v)] = n
        adj.append([v, w])
        return EmbeddedTree(self.ends, tuple(map(tuple, adj)), self.kinds + (kind,),
                            self.face_labels, self.offset)


class _Probe:
    """Branch end sets of an unrotated tree, used while sorting rotations."""

    def __init__(self, ends: int, nb):
        self.ends = ends
        self.nb = nb
        self.cache: dict = {}

    def mask(self, v: int, w: int) -> int:
        key = (v, w)
        if key in self.cache:
            return self.cache[key]
        seen = {v}
        stack = [w]
        m = 0
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            if u < self.ends:
                m |= 1 << u
            stack.extend(x for x in self.nb[u] if x not in seen)
        self.cache[key] = m
        return m

    def first_end(self, v: int, w: int) -> int:
        span = _interval(self.mask(v, w), self.ends)
        if span is None:
            raise InvalidTree(f"branch of {v} through {w} is not a cyclic interval")
        return span[0]


def _as_mask(s) -> int:
    return s if isinstance(s, int) else sum(1 << j for j in s)


# ---------------------------------------------------------------- canonical form

def _walk(t: EmbeddedTree, v: int, parent: int, decorated: bool) -> str:
    if v < t.ends:
        return "e"
    nb = t.adjacency[v]
    k = nb.index(parent)
    children = nb[k + 1:] + nb[:k]
    if not decorated and len(nb) == 2:
        return _walk(t, children[0], v, decorated)
    letter = t.kinds[v] if decorated else "v"
    return letter + "(" + "".join(_walk(t, w, v, decorated) for w in children) + ")"


def boundary_word(t: EmbeddedTree, start: int = 0, decorated: bool = False) -> str:
    """Depth-first word of the tree read from end ``start``, branches taken
    anticlockwise."""
    return _walk(t, t.adjacency[start][0], start, decorated)


def canonical_form(t: EmbeddedTree, decorated: bool = False) -> str:
    """Isomorphism invariant of an embedded tree.

    Vertices of degree 2 are ignored unless ``decorated``. For trees
    invariant under R and I the admissible re-numberings of the ends are the
    rotations by 0 and by half a turn; otherwise every rotation.
    """
    if not isinstance(t, EmbeddedTree):
        raise InvalidTree("expected an EmbeddedTree")
    starts = [0, t.ends // 2] if t.is_double_symmetric() else range(t.ends)
    return min(boundary_word(t, s, decorated) for s in starts)


def contour(t: EmbeddedTree) -> str:
    """Human readable walk: for each face, the degrees of the vertices on its
    boundary path from end t to end t+1."""
    parts = []
    for s in range(t.ends):
        path = _path(t, s, (s + 1) % t.ends)
        degs = [str(t.degree(v)) for v in path[1:-1] if t.degree(v) != 2]
        parts.append("-".join(degs) or "|")
    return " ".join(parts)


def _path(t: EmbeddedTree, a: int, b: int) -> list[int]:
    prev = {a: None}
    q = deque([a])
    while q:
        v = q.popleft()
        if v == b:
            break
        for w in t.adjacency[v]:
            if w not in prev:
                prev[w] = v
                q.append(w)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


# ---------------------------------------------------------------- double symmetric trees

class _Builder:
    def __init__(self, ends: int):
        self.ends = ends
        self.n = ends
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, a: int, b: int) -> None:
        self.edges.append((a, b))

    def tree(self, point: int, t: tuple, labels) -> None:
        if t == ():
            self.edge(point, next(labels))
            return
        v = self.vertex()
        self.edge(point, v)
        for c in t:
            self.tree(v, c, labels)

    def forest(self, point: int, f: tuple, labels) -> None:
        labels = iter(labels)
        for t in f:
            self.tree(point, t, labels)

    def chain(self, start: int, length: int) -> list[int]:
        out = []
        prev = start
        for _ in range(length):
            v = self.vertex()
            self.edge(prev, v)
            out.append(v)
            prev = v
        return out

    def finish(self, offset: int) -> EmbeddedTree:
        return EmbeddedTree.build(self.ends, self.edges, None, None, offset, n_nodes=self.n)


def _compositions(items: tuple):
    """Ways to cut a sequence into consecutive non-empty pieces."""
    n = len(items)
    if n == 0:
        yield ()
        return
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            yield tuple(items[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1))


def _ends_between(E: int, offset: int, lo: float, hi: float) -> list[int]:
    """Ends with direction strictly between lo and hi, sorted anticlockwise."""
    eps = 1e-9
    found = []
    for j in range(E):
        a = end_angle(j, E, offset)
        for shift in (0.0, 2 * math.pi, -2 * math.pi):
            if lo + eps < a + shift < hi - eps:
                found.append((a + shift, j))
    return [j for _, j in sorted(found)]


def _end_at(E: int, offset: int, angle: float) -> int | None:
    for j in range(E):
        a = end_angle(j, E, offset)
        if abs(math.remainder(a - angle, 2 * math.pi)) < 1e-9:
            return j
    return None


def _offset(ends: int, ends_on_axes: bool) -> int:
    return 0 if ends_on_axes else -1


def double_symmetric_trees(ends: int, ends_on_axes: bool = False) -> list[EmbeddedTree]:
    """All trees invariant under R and I, one per isomorphism class.

    With ``ends_on_axes`` an end points along the positive real axis;
    otherwise the positive real axis bisects face F_0.

    Every such tree contains the origin. Either it meets the real axis only
    at the origin, and its upper half is a rooted tree symmetric under I;
    or it meets the imaginary axis only there, and the right half is a rooted
    tree symmetric under R; or it meets both axes in segments, and it is the
    union of the images of its part in the closed first quadrant.
    """
    if ends < 2 or ends % 2:
        raise ValueError("ends must be even and at least 2")
    E = ends
    offset = _offset(E, ends_on_axes)
    pi = math.pi
    R = lambda j: (-j - offset) % E
    I = lambda j: (E // 2 - j - offset) % E
    RI = lambda j: R(I(j))
    real_end = _end_at(E, offset, 0.0)
    imag_end = _end_at(E, offset, pi / 2)
    found: dict[str, EmbeddedTree] = {}

    def keep(b: _Builder):
        t = b.finish(offset)
        found.setdefault(canonical_form(t), t)

    # origin alone on the real axis: upper half symmetric under I
    if real_end is None:
        upper = _ends_between(E, offset, 0.0, pi)
        for s in symmetric_forests(len(upper)):
            b = _Builder(E)
            o = b.vertex()
            b.forest(o, s, upper)
            b.forest(o, s, [R(j) for j in upper])
            keep(b)
    # origin alone on the imaginary axis: right half symmetric under R
    if imag_end is None:
        right = _ends_between(E, offset, -pi / 2, pi / 2)
        for s in symmetric_forests(len(right)):
            b = _Builder(E)
            o = b.vertex()
            b.forest(o, s, right)
            b.forest(o, s, [I(j) for j in right])
            keep(b)
    # segments on both axes: assemble from the first quadrant
    quad = _ends_between(E, offset, 0.0, pi / 2)
    for f in plane_forests(len(quad)):
        sizes = [leaf_count(t) for t in f]
        starts = [sum(sizes[:k]) for k in range(len(f) + 1)]
        for lo in range(len(f) + 1):
            for hi in range(lo, len(f) + 1):
                left, right = tuple(range(lo)), tuple(range(hi, len(f)))
                if real_end is None and not left:
                    continue
                if imag_end is None and not right:
                    continue
                for lp in _compositions(left):
                    for rp in _compositions(right):
                        _assemble(E, offset, f, starts, quad, lp, tuple(range(lo, hi)), rp,
                                  real_end, imag_end, (R, I, RI), keep)
    return [found[k] for k in sorted(found)]


def _assemble(E, offset, f, starts, quad, real_pieces, origin_items, imag_pieces,
              real_end, imag_end, maps, keep):
    R, I, RI = maps
    b = _Builder(E)
    o = b.vertex()

    def ends_of(items):
        return [quad[j] for k in items for j in range(starts[k], starts[k + 1])]

    def hang(point_id, point_img_r, point_img_i, point_img_ri, items):
        sub = tuple(f[k] for k in items)
        lab = ends_of(items)
        b.forest(point_id, sub, lab)
        b.forest(point_img_r, sub, [R(j) for j in lab])
        b.forest(point_img_i, sub, [I(j) for j in lab])
        b.forest(point_img_ri, sub, [RI(j) for j in lab])

    # real axis: pieces are listed outermost first, points are built inward-out
    pos = b.chain(o, len(real_pieces))
    neg = b.chain(o, len(real_pieces))
    for k, items in enumerate(real_pieces):
        p, q = pos[len(real_pieces) - 1 - k], neg[len(real_pieces) - 1 - k]
        hang(p, p, q, q, items)
    if real_end is not None:
        b.edge(pos[-1] if pos else o, real_end)
        b.edge(neg[-1] if neg else o, I(real_end))
    hang(o, o, o, o, origin_items)
    up = b.chain(o, len(imag_pieces))
    down = b.chain(o, len(imag_pieces))
    for k, items in enumerate(imag_pieces):
        hang(up[k], down[k], up[k], down[k], items)
    if imag_end is not None:
        b.edge(up[-1] if up else o, imag_end)
        b.edge(down[-1] if down else o, R(imag_end))
    keep(b)


def enumerate_double_symmetric(ends: int, ends_on_axes: bool = False) -> list[str]:
    """Canonical forms of all trees with ``ends`` ends invariant under R and I."""
    return [canonical_form(t) for t in double_symmetric_trees(ends, ends_on_axes)]


# ---------------------------------------------------------------- face conditions

ZERO = "0"


def sector_labels(d: int) -> tuple[str, ...]:
    """Asymptotic values of y / y1 in the sectors for d = 4 and d = 6."""
    if d == 4:
        return (ZERO, "a", "Ia", ZERO, "-a", "Ra")
    if d == 6:
        return (ZERO, "a", ZERO, "Ia", ZERO, "-a", ZERO, "Ra")
    raise ValueError(f"no sector labels for d={d}")


@dataclass(frozen=True)
class Proposition1Report:
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


def check_proposition1(t: EmbeddedTree, d: int) -> Proposition1Report:
    """Check the conditions a)-f) on a labelled, decorated tree.

    For d = 6 the extra condition that exactly the even-numbered faces carry
    label 0 is reported as 'alternating'.
    """
    details: list[str] = []
    E = t.ends
    labels = t.face_labels
    clauses = {k: True for k in "abcdef"}
    if labels is None:
        raise InvalidTree("face labels required")
    # a) holds for every EmbeddedTree; repeat the cheap checks
    n = len(t.adjacency)
    if sum(len(nb) for nb in t.adjacency) != 2 * (n - 1):
        clauses["a"] = False
        details.append("a: not a tree")
    for v, w in t.edges():
        f1, f2 = t.edge_faces(v, w)
        if labels[f1] == labels[f2]:
            clauses["b"] = False
            details.append(f"b: edge {v}-{w} between F{f1} and F{f2}, both {labels[f1]}")
    for v in t.vertices:
        zero_face = any(labels[f] == ZERO for f in t.faces_at(v))
        if t.kinds[v] == "o" and zero_face:
            clauses["c"] = False
            details.append(f"c: o-vertex {v} on a face labelled 0")
        if t.kinds[v] == "x" and not zero_face:
            if not any(w >= E and t.kinds[w] == "o" for w in t.adjacency[v]):
                clauses["d"] = False
                details.append(f"d: x-vertex {v} has no o-neighbour and no 0-face")
        if t.kinds[v] not in ("o", "x"):
            clauses["c"] = clauses["d"] = False
            details.append(f"c/d: vertex {v} is not decorated")
    if E != d + 2:
        clauses["e"] = False
        details.append(f"e: {E} ends for d={d}")
    h = d // 2 + 1
    if E == d + 2:
        fi = t.i_end(1)  # I(F0) lies between ends I(1) and I(0) = I(1) + 1
        if labels[0] != ZERO or labels[h % E] != ZERO or fi != h:
            clauses["f"] = False
            details.append(f"f: F0={labels[0]}, F{h}={labels[h % E]}, I(F0)=F{fi}")
    if d == 6:
        alt = all((labels[k] == ZERO) == (k % 2 == 0) for k in range(E))
        clauses["alternating"] = alt
        if not alt:
            details.append("alternating: faces labelled 0 are not exactly the even ones")
    return Proposition1Report(clauses, tuple(details))


def _label_filter(t: EmbeddedTree, labels) -> bool:
    return all(labels[f1] != labels[f2] for f1, f2 in (t.edge_faces(v, w) for v, w in t.edges()))


def admissible_trees(d: int) -> list[EmbeddedTree]:
    """Trees with d + 2 ends invariant under R and I whose edges all separate
    faces with distinct sector labels."""
    labels = sector_labels(d)
    out = []
    for t in double_symmetric_trees(d + 2, ends_on_axes=False):
        if _label_filter(t, labels):
            out.append(t.with_labels(labels))
    return out


def decoration_families(t: EmbeddedTree) -> int:
    """Number of ways to choose o/x kinds on the essential vertices.

    A vertex on a face labelled 0 must be an x-vertex; the others may be of
    either kind, consistently along orbits of R and I. When no vertex sits at
    the origin, the origin lies on an edge reversed by the half turn, and if
    that edge avoids 0-faces it may carry an o-vertex or not.
    """
    labels = t.face_labels
    E = t.ends
    perms = (lambda j: j, t.r_end, t.i_end, lambda j: t.r_end(t.i_end(j)))
    essential = [v for v in t.vertices if t.degree(v) != 2]
    keys = {v: t.node_key(v) for v in essential}
    orbits = {frozenset(t._image_key(keys[v], p) for p in perms) for v in essential}
    by_key = {k: v for v, k in keys.items()}
    free = 0
    for orb in orbits:
        v = by_key[next(iter(orb))]
        if not any(labels[f] == ZERO for f in t.faces_at(v)):
            free += 1
    centre = any(len(orb) == 1 for orb in orbits)
    if not centre:
        half = lambda j: (j + E // 2) % E
        full = (1 << E) - 1
        for v, w in t.edges():
            m = t.side(v, w)
            if sum(1 << half(j) for j in range(E) if m >> j & 1) == full ^ m:
                f1, f2 = t.edge_faces(v, w)
                if labels[f1] != ZERO and labels[f2] != ZERO:
                    free += 1
                break
    return 2 ** free


def count_filtered(d: int, decorated: bool = False) -> int:
    """Types of trees allowed by conditions b) and f) (and the alternating
    rule for d = 6, which the sector labels satisfy by construction).

    Degree-2 vertices are ignored. With ``decorated`` each topological type
    is split by its admissible o/x families.
    """
    if d not in (4, 6):
        raise ValueError("count_filtered supports d = 4 and d = 6")
    trees = admissible_trees(d)
    if not decorated:
        return len(trees)
    return sum(decoration_families(t) for t in trees)


def quartic_tree(n: int) -> EmbeddedTree:
    """Decorated tree for a quartic eigenfunction with n real zeros.

    n = 0 gives a single x-vertex at the origin; otherwise the real axis
    carries an alternating o/x chain with n o-vertices, the two x-vertices
    at its ends each joined to the two ends at angles of 30 degrees from the
    real axis, and the origin joined to the ends on the imaginary axis.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    E = 6
    labels = sector_labels(4)
    if n == 0:
        edges = [(j, E) for j in range(E)]
        return EmbeddedTree.build(E, edges, ["end"] * E + ["x"], labels)
    kinds = ["end"] * E
    edges = []

    def vertex(kind):
        kinds.append(kind)
        return len(kinds) - 1

    centre = vertex("o" if n % 2 else "x")
    per_side = n // 2  # o-vertices on each open half-axis
    for sign_ends in ((0, 1), (3, 4)):
        prev = centre
        kind = "x" if n % 2 else "o"
        for _ in range(2 * per_side - (0 if n % 2 else 1)):
            v = vertex(kind)
            edges.append((prev, v))
            prev = v
            kind = "o" if kind == "x" else "x"
        tip = vertex("x")
        edges.append((prev, tip))
        edges.extend((tip, j) for j in sign_ends)
    edges += [(centre, 2), (centre, 5)]
    return EmbeddedTree.build(E, edges, kinds, labels)
