"""Validated polyhedral maps on closed surfaces.

A map is stored as its face list; everything else (edges, rotations,
orientability, Euler characteristic) is derived at build time.  The
factory ``build_map`` validates polyhedrality, so any PolyhedralMap in
circulation satisfies the full battery of invariants:

* faces are simple polygons with at least 3 distinct vertices,
* every edge lies in exactly two distinct faces,
* two faces meet in nothing, one vertex, or one edge,
* the faces around each vertex form a single cycle,
* the underlying graph is connected,
* the Euler characteristic is 2 (sphere) or 1 (projective plane).

Only those two surfaces are supported.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from semap.errors import (
    Disconnected,
    EdgeDegreeNotTwo,
    InvalidFaceList,
    MapFormatError,
    NonPolyhedralIntersection,
    PinchedVertex,
    RepeatedVertexInFace,
    UnsupportedSurface,
)

Face = tuple[int, ...]


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def face_key(face: Sequence[int]) -> Face:
    """Canonical key of a polygon: least rotation over both directions."""
    seqs = (tuple(face), tuple(reversed(face)))
    best = None
    for seq in seqs:
        for r in range(len(seq)):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class FaceCycle:
    """Cyclic order of the faces around one vertex."""

    vertex: int
    faces: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.faces)


class PolyhedralMap:
    """Immutable combinatorial map; construct through :func:`build_map`."""

    __slots__ = (
        "vertex_count",
        "faces",
        "edges",
        "edge_faces",
        "rotations",
        "links",
        "orientable",
        "_cache",
    )

    def __init__(self, vertex_count, faces, edges, edge_faces, rotations, links, orientable):
        self.vertex_count = vertex_count
        self.faces = faces              # tuple of vertex cycles
        self.edges = edges              # sorted tuple of (u, v) pairs, u < v
        self.edge_faces = edge_faces    # edge -> (face id, face id)
        self.rotations = rotations      # per vertex: cyclic tuple of face ids
        self.links = links              # per vertex: cyclic tuple of neighbours
        self.orientable = orientable
        self._cache = {}                # lazy flag system / certificate

    # -- elementary counts -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def face_sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyhedralMap)
            and self.vertex_count == other.vertex_count
            and self.faces == other.faces
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.faces))

    def __repr__(self) -> str:
        return (
            f"PolyhedralMap(f0={self.vertex_count}, f1={self.edge_count}, "
            f"f2={self.face_count}, chi={self.euler_characteristic})"
        )


def euler_characteristic(m: PolyhedralMap) -> int:
    return m.euler_characteristic


def face_cycle(m: PolyhedralMap, v: int) -> FaceCycle:
    """The cyclic sequence of faces incident to ``v``; length = degree."""
    return FaceCycle(v, m.rotations[v])


# --------------------------------------------------------------------------
# construction


def build_map(face_list: Iterable[Sequence[int]]) -> PolyhedralMap:
    """Build and validate a map from its faces.

    Faces are the single source of truth; edges and rotations are always
    derived.  Vertex ids must densely cover 0..f0-1 (gaps are rejected,
    never compacted, so fixtures stay deterministic).
    """
    faces = tuple(tuple(f) for f in face_list)
    if not faces:
        raise InvalidFaceList("empty face list")

    seen_vertices = set()
    for f in faces:
        if len(f) < 3:
            raise InvalidFaceList(f"face {f} has fewer than 3 vertices")
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidFaceList(f"bad vertex id {v!r} in face {f}")
        if len(set(f)) != len(f):
            raise RepeatedVertexInFace(f"face {f} repeats a vertex")
        seen_vertices.update(f)

    n = max(seen_vertices) + 1
    if len(seen_vertices) != n:
        missing = sorted(set(range(n)) - seen_vertices)[:4]
        raise InvalidFaceList(f"vertex ids not dense, missing {missing}")

    # A face listed twice (up to rotation/reversal) would give its edges
    # two incidences with what is geometrically a single face.
    keys = {}
    for i, f in enumerate(faces):
        k = face_key(f)
        if k in keys:
            raise EdgeDegreeNotTwo(f"faces {keys[k]} and {i} are the same polygon")
        keys[k] = i

    # derive edges
    edge_faces_all: dict[tuple[int, int], list[int]] = {}
    for i, f in enumerate(faces):
        k = len(f)
        for j in range(k):
            e = _norm_edge(f[j], f[(j + 1) % k])
            edge_faces_all.setdefault(e, []).append(i)
    for e, inc in edge_faces_all.items():
        if len(inc) != 2:
            raise EdgeDegreeNotTwo(f"edge {e} lies in {len(inc)} faces")

    edges = tuple(sorted(edge_faces_all))
    edge_faces = {e: tuple(edge_faces_all[e]) for e in edges}

    _check_pairwise_intersections(faces, edge_faces_all)

    rotations, links = _vertex_rotations(n, faces, edge_faces)

    _check_connected(n, edges)

    chi = n - len(edges) + len(faces)
    if chi not in (2, 1):
        raise UnsupportedSurface(f"Euler characteristic {chi} is not 2 or 1")

    orientable = _orientable(faces, edge_faces)
    # closed-surface classification: chi 2 is the sphere, chi 1 the
    # projective plane; a mismatch here would be a logic error
    assert orientable == (chi == 2), "orientability inconsistent with Euler characteristic"

    return PolyhedralMap(n, faces, edges, edge_faces, rotations, links, orientable)


def _check_pairwise_intersections(faces, edge_faces_all):
    sets = [set(f) for f in faces]
    adjacency = {}  # face pair -> shared edge count
    for e, (i, j) in ((e, inc) for e, inc in edge_faces_all.items()):
        pair = (i, j) if i < j else (j, i)
        adjacency[pair] = adjacency.get(pair, 0) + 1
    for pair, count in adjacency.items():
        if count > 1:
            raise NonPolyhedralIntersection(f"faces {pair} share {count} edges")
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            shared = sets[i] & sets[j]
            if len(shared) > 2:
                raise NonPolyhedralIntersection(
                    f"faces {i} and {j} share {len(shared)} vertices"
                )
            if len(shared) == 2:
                u, v = shared
                if adjacency.get((i, j), 0) != 1:
                    raise NonPolyhedralIntersection(
                        f"faces {i} and {j} share vertices {u},{v} but no common edge"
                    )


def _corner(face: Face, v: int) -> tuple[int, int]:
    i = face.index(v)
    return face[i - 1], face[(i + 1) % len(face)]


def _vertex_rotations(n, faces, edge_faces):
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, f in enumerate(faces):
        for v in f:
            incident[v].append(i)

    rotations = []
    links = []
    for v in range(n):
        inc = incident[v]
        d = len(inc)
        if d < 3:
            # a vertex of a closed polyhedral surface lies in >= 3 faces
            raise PinchedVertex(f"vertex {v} lies in only {d} faces")
        f0 = min(inc)
        a, b = _corner(faces[f0], v)
        rot = [f0]
        link = [a]
        seen = {f0}
        cur_f, cur_u = f0, b
        ok = True
        for _ in range(d - 1):
            g1, g2 = edge_faces[_norm_edge(v, cur_u)]
            nf = g2 if g1 == cur_f else g1
            if nf in seen:
                ok = False
                break
            x, y = _corner(faces[nf], v)
            nxt = y if x == cur_u else x
            rot.append(nf)
            link.append(cur_u)
            seen.add(nf)
            cur_f, cur_u = nf, nxt
        if not ok or cur_u != a:
            raise PinchedVertex(f"faces at vertex {v} do not form a single cycle")
        g1, g2 = edge_faces[_norm_edge(v, a)]
        if (g2 if g1 == cur_f else g1) != f0:
            raise PinchedVertex(f"faces at vertex {v} do not close up")
        rotations.append(tuple(rot))
        links.append(tuple(link))
    return tuple(rotations), tuple(links)


def _check_connected(n, edges):
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    if count != n:
        raise Disconnected(f"only {count} of {n} vertices reachable")


def _orientable(faces, edge_faces) -> bool:
    """Propagate face sides across edges; a sign conflict means non-orientable."""
    directed = []
    for f in faces:
        k = len(f)
        directed.append({(f[i], f[(i + 1) % k]) for i in range(k)})
    # neighbours[i]: (j, same_dir) for each edge shared between faces i and j
    neighbours: list[list[tuple[int, bool]]] = [[] for _ in range(len(faces))]
    for (u, v), (i, j) in edge_faces.items():
        same_dir = ((u, v) in directed[i]) == ((u, v) in directed[j])
        neighbours[i].append((j, same_dir))
        neighbours[j].append((i, same_dir))
    sign = [0] * len(faces)
    sign[0] = 1
    stack = [0]
    while stack:
        i = stack.pop()
        for j, same_dir in neighbours[i]:
            want = -sign[i] if same_dir else sign[i]
            if sign[j] == 0:
                sign[j] = want
                stack.append(j)
            elif sign[j] != want:
                return False
    return True


# --------------------------------------------------------------------------
# text interchange format
#
#   map <f0>
#   f v1 v2 ... vk
#
# '#' starts a comment; the parser rejects anything else.


def format_map_text(m: PolyhedralMap) -> str:
    lines = [f"map {m.vertex_count}"]
    lines.extend("f " + " ".join(str(v) for v in face) for face in m.faces)
    return "\n".join(lines) + "\n"


def parse_map_text(text: str) -> PolyhedralMap:
    declared = None
    faces = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "map":
            if declared is not None:
                raise MapFormatError(f"line {lineno}: duplicate map header")
            if faces:
                raise MapFormatError(f"line {lineno}: map header after faces")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise MapFormatError(f"line {lineno}: malformed map header")
            declared = int(tokens[1])
        elif tokens[0] == "f":
            if declared is None:
                raise MapFormatError(f"line {lineno}: face before map header")
            if len(tokens) < 4:
                raise MapFormatError(f"line {lineno}: face needs at least 3 vertices")
            try:
                faces.append(tuple(int(t) for t in tokens[1:]))
            except ValueError:
                raise MapFormatError(f"line {lineno}: non-integer vertex id") from None
        else:
            raise MapFormatError(f"line {lineno}: unrecognised line {raw!r}")
    if declared is None:
        raise MapFormatError("missing map header")
    m = build_map(faces)
    if m.vertex_count != declared:
        raise MapFormatError(
            f"header declares {declared} vertices but faces use {m.vertex_count}"
        )
    return m
