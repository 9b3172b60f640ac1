"""Isomorphism and symmetry machinery built on flag traversals.

Certificates are minimum flag-BFS codes, so isomorphism naturally
includes orientation-reversing correspondences.  Automorphisms arise
from flags whose BFS code equals the base flag's code: the flag graph
of a polyhedral map is rigid, so every such flag determines exactly one
automorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from semap import _certpure
from semap.errors import (
    AlreadySpherical,
    InvalidInvolution,
    MapBuildError,
    NonPolyhedralQuotient,
)
from semap.flags import flag_system
from semap.map_core import PolyhedralMap, build_map, face_key

try:  # compiled kernel is optional; the pure twin has the same contract
    from semap import _certfast as _kernel
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = _certpure

KERNEL_NAME = _kernel.KERNEL_NAME


@dataclass(frozen=True)
class CanonicalCertificate:
    """Minimum flag code plus the vertex relabelling that realises it.

    Two maps are isomorphic exactly when their ``code`` fields are
    equal; ``vertex_order[i]`` is the original id of the vertex with
    canonical label i.
    """

    code: bytes
    vertex_order: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, CanonicalCertificate) and self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)


def canonical_certificate(m: PolyhedralMap) -> CanonicalCertificate:
    cert = m._cache.get("certificate")
    if cert is not None:
        return cert
    fs = flag_system(m)
    code, best_start = _kernel.min_code(fs.s0, fs.s1, fs.s2)
    order = _kernel.bfs_order(fs.s0, fs.s1, fs.s2, best_start)
    seen = [False] * m.vertex_count
    vertex_order = []
    for fl in order:
        v = fs.flag_vertex[fl]
        if not seen[v]:
            seen[v] = True
            vertex_order.append(v)
    cert = CanonicalCertificate(code, tuple(vertex_order))
    m._cache["certificate"] = cert
    return cert


def are_isomorphic(a: PolyhedralMap, b: PolyhedralMap) -> bool:
    return canonical_certificate(a).code == canonical_certificate(b).code


def isomorphism_witness(a: PolyhedralMap, b: PolyhedralMap) -> tuple[int, ...] | None:
    """A vertex bijection a -> b realising an isomorphism, or None.

    The bijection pairs vertices with equal canonical labels; the face
    sets are checked before returning.
    """
    ca = canonical_certificate(a)
    cb = canonical_certificate(b)
    if ca.code != cb.code:
        return None
    to_label = {v: i for i, v in enumerate(ca.vertex_order)}
    sigma = tuple(cb.vertex_order[to_label[v]] for v in range(a.vertex_count))
    assert _maps_faces(a, b, sigma), "certificate-derived witness failed verification"
    return sigma


def _maps_faces(a: PolyhedralMap, b: PolyhedralMap, sigma) -> bool:
    image = {face_key(tuple(sigma[v] for v in f)) for f in a.faces}
    target = {face_key(f) for f in b.faces}
    return image == target


@dataclass(frozen=True)
class AutomorphismGroup:
    """All vertex permutations preserving the face set."""

    permutations: tuple[tuple[int, ...], ...]
    orbits: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.permutations)


def automorphism_group(m: PolyhedralMap) -> AutomorphismGroup:
    """Exhaustive: every flag is tried as image of the base flag."""
    group = m._cache.get("autgroup")
    if group is not None:
        return group
    fs = flag_system(m)
    starts = _kernel.matching_starts(fs.s0, fs.s1, fs.s2)
    base_order = _kernel.bfs_order(fs.s0, fs.s1, fs.s2, 0)
    perms = []
    for g in starts:
        image_order = (
            base_order if g == 0 else _kernel.bfs_order(fs.s0, fs.s1, fs.s2, g)
        )
        sigma = [-1] * m.vertex_count
        for fl_base, fl_img in zip(base_order, image_order):
            sigma[fs.flag_vertex[fl_base]] = fs.flag_vertex[fl_img]
        perms.append(tuple(sigma))
    perms.sort()

    seen = [False] * m.vertex_count
    orbits = []
    for v in range(m.vertex_count):
        if seen[v]:
            continue
        orbit = sorted({p[v] for p in perms})
        for w in orbit:
            seen[w] = True
        orbits.append(tuple(orbit))
    group = AutomorphismGroup(tuple(perms), tuple(orbits))
    m._cache["autgroup"] = group
    return group


def is_vertex_transitive(m: PolyhedralMap) -> bool:
    return len(automorphism_group(m).orbits) == 1


# --------------------------------------------------------------------------
# antipodal symmetry and the projective-plane quotient


def _edge_orbit_free(m: PolyhedralMap, sigma) -> bool:
    for u, v in m.edges:
        if {sigma[u], sigma[v]} == {u, v}:
            return False
    return True


def _face_orbit_free(m: PolyhedralMap, sigma) -> bool:
    keys = {face_key(f) for f in m.faces}
    for f in m.faces:
        img = face_key(tuple(sigma[v] for v in f))
        if img == face_key(f):
            return False
        assert img in keys
    return True


def is_free_involution(m: PolyhedralMap, sigma) -> bool:
    """Order-2 automorphism with no fixed vertex, edge or face."""
    n = m.vertex_count
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        return False
    if any(sigma[sigma[v]] != v for v in range(n)):
        return False
    if any(sigma[v] == v for v in range(n)):
        return False
    if not _maps_faces(m, m, sigma):
        return False
    return _edge_orbit_free(m, sigma) and _face_orbit_free(m, sigma)


def free_involutions(m: PolyhedralMap) -> list[tuple[int, ...]]:
    """All automorphisms of order 2 acting freely on vertices, edges and faces."""
    n = m.vertex_count
    out = []
    for sigma in automorphism_group(m).permutations:
        if any(sigma[v] == v for v in range(n)):  # also drops the identity
            continue
        if (
            all(sigma[sigma[v]] == v for v in range(n))
            and _edge_orbit_free(m, sigma)
            and _face_orbit_free(m, sigma)
        ):
            out.append(sigma)
    return out


def quotient(m: PolyhedralMap, sigma) -> PolyhedralMap:
    """Identify antipodal cells; valid results live on the projective plane."""
    if not is_free_involution(m, sigma):
        raise InvalidInvolution("permutation is not a free involution of the map")
    reps = sorted(v for v in range(m.vertex_count) if v < sigma[v])
    new_id = {}
    for i, v in enumerate(reps):
        new_id[v] = i
        new_id[sigma[v]] = i

    qfaces = []
    seen_keys = set()
    for f in m.faces:
        img = tuple(new_id[v] for v in f)
        key = face_key(img)
        if key not in seen_keys:
            seen_keys.add(key)
            qfaces.append(img)
    try:
        q = build_map(qfaces)
    except MapBuildError as exc:
        raise NonPolyhedralQuotient(f"quotient is not polyhedral: {exc}") from exc
    if q.euler_characteristic != 1:
        raise NonPolyhedralQuotient(
            f"quotient has Euler characteristic {q.euler_characteristic}"
        )
    return q


def double_cover(y: PolyhedralMap) -> tuple[PolyhedralMap, tuple[int, ...]]:
    """Orientation double cover of a projective-plane map, with its deck swap.

    Cover flags are (flag, sign) pairs where every move flips the sign;
    cover vertices and faces are the orbits of the corresponding move
    pairs.  Each cell of the base lifts to exactly two cells.
    """
    if y.euler_characteristic == 2:
        raise AlreadySpherical("map is already on the sphere")
    fs = flag_system(y)
    count = fs.flag_count

    # signed flag: 2 * flag + sign
    def move(table, sf):
        return 2 * table[sf >> 1] + ((sf & 1) ^ 1)

    def orbits(tables):
        comp = [-1] * (2 * count)
        reps = []
        for sf in range(2 * count):
            if comp[sf] >= 0:
                continue
            cid = len(reps)
            reps.append(sf)
            stack = [sf]
            comp[sf] = cid
            while stack:
                cur = stack.pop()
                for table in tables:
                    nxt = move(table, cur)
                    if comp[nxt] < 0:
                        comp[nxt] = cid
                        stack.append(nxt)
        return comp, reps

    vertex_comp, vertex_reps = orbits((fs.s1, fs.s2))
    face_comp, face_reps = orbits((fs.s0, fs.s1))

    faces = []
    for rep in face_reps:
        cycle = []
        sf = rep
        while True:
            cycle.append(vertex_comp[sf])
            sf = move(fs.s1, move(fs.s0, sf))
            if sf == rep:
                break
        faces.append(tuple(cycle))
    cover = build_map(faces)

    deck = [0] * len(vertex_reps)
    for cid, rep in enumerate(vertex_reps):
        deck[cid] = vertex_comp[rep ^ 1]
    deck = tuple(deck)

    assert cover.euler_characteristic == 2, "double cover is not a sphere"
    assert cover.vertex_count == 2 * y.vertex_count
    assert is_free_involution(cover, deck), "deck transformation is not free"
    return cover, deck


def cycle_notation(sigma) -> str:
    """Permutation in cycle notation, fixed points omitted; identity is ().

    >>> cycle_notation((1, 2, 0, 4, 3))
    '(0 1 2)(3 4)'
    >>> cycle_notation((0, 1))
    '()'
    """
    seen = [False] * len(sigma)
    parts = []
    for v in range(len(sigma)):
        if seen[v] or sigma[v] == v:
            seen[v] = True
            continue
        cycle = [v]
        seen[v] = True
        w = sigma[v]
        while w != v:
            cycle.append(w)
            seen[w] = True
            w = sigma[w]
        parts.append("(" + " ".join(str(x) for x in cycle) + ")")
    return "".join(parts) if parts else "()"
