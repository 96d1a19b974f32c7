"""Combinatorial maps (rotation systems) on oriented surfaces.

A map is stored through its darts.  Darts come in pairs ``2e, 2e+1`` (the two
sides of edge ``e``), and the surface is encoded by the face permutation:
``face_next[d]`` is the dart following ``d`` along the boundary walk of the
face lying on the left of ``d``.  The vertex rotation is derived from the face
walks, so the two permutations always satisfy the rotation-system identity and
the encoded surface is automatically oriented.

Boundary circles are faces marked as boundary; they count as filled disks in
the raw ``V - E + F`` tally, and the surface invariants correct for that.

Everything downstream (Euler characteristics, genus, cutting along curves,
canonical codes for isomorphism testing) reduces to orbit computations here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class DiagramError(ValueError):
    """Malformed diagram data."""


class NotDisjointError(DiagramError):
    """A curve family expected to be disjoint has crossings."""


class NonTransverseError(DiagramError):
    """Two curves overlap along an edge instead of meeting at crossings."""


def opposite(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class CombinatorialSurface:
    """Oriented surface with boundary, as a rotation-system map.

    ``face_next`` determines everything; ``rotation`` (the next outgoing dart
    counterclockwise around the origin vertex) is derived once and carried.
    ``edge_label[e]`` tags edge ``e`` as scaffolding or as a segment of a
    named curve; ``boundary_faces`` marks which faces are boundary circles;
    ``vertex_kind`` tags each vertex; ``disk_labels`` records the dart cycle
    bounding each named attaching region.
    """

    face_next: tuple[int, ...]
    rotation: tuple[int, ...]
    edge_label: tuple[tuple, ...]
    boundary_faces: frozenset[int]
    vertex_kind: tuple[str, ...]
    vertex_of_dart: tuple[int, ...]
    face_of_dart: tuple[int, ...]
    disk_labels: Mapping[object, tuple[int, ...]] = field(default_factory=dict)

    # -- basic counts ------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return len(self.face_next)

    @property
    def num_edges(self) -> int:
        return len(self.face_next) // 2

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_kind) if self.face_next else 0

    @property
    def num_faces(self) -> int:
        return (1 + max(self.face_of_dart)) if self.face_of_dart else 0

    def faces(self) -> list[list[int]]:
        """Face walks, indexed consistently with ``face_of_dart``."""
        start: dict[int, int] = {}
        for d in range(self.num_darts - 1, -1, -1):
            start[self.face_of_dart[d]] = d
        out = []
        for fi in range(self.num_faces):
            d0 = start[fi]
            walk = [d0]
            d = self.face_next[d0]
            while d != d0:
                walk.append(d)
                d = self.face_next[d]
            out.append(walk)
        return out

    def vertices(self) -> list[list[int]]:
        start: dict[int, int] = {}
        for d in range(self.num_darts - 1, -1, -1):
            start[self.vertex_of_dart[d]] = d
        out = []
        for vi in range(self.num_vertices):
            d0 = start[vi]
            orbit = [d0]
            d = self.rotation[d0]
            while d != d0:
                orbit.append(d)
                d = self.rotation[d]
            out.append(orbit)
        return out

    # -- components and invariants ------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as sorted dart lists."""
        n = self.num_darts
        comp = [-1] * n
        cid = 0
        for d0 in range(n):
            if comp[d0] != -1:
                continue
            stack = [d0]
            while stack:
                x = stack.pop()
                if comp[x] != -1:
                    continue
                comp[x] = cid
                stack.append(opposite(x))
                stack.append(self.face_next[x])
            cid += 1
        groups: list[list[int]] = [[] for _ in range(cid)]
        for d in range(n):
            groups[comp[d]].append(d)
        return groups

    def component_data(self) -> list[tuple[int, int, int]]:
        """Per component ``(chi, genus, boundary_count)``.

        ``chi`` is the Euler characteristic of the actual surface with
        boundary; genus uses ``chi = 2 - 2g - b`` on each component.
        """
        out = []
        for darts in self.components():
            vs = {self.vertex_of_dart[d] for d in darts}
            fs = {self.face_of_dart[d] for d in darts}
            chi_filled = len(vs) - len(darts) // 2 + len(fs)
            b = len(fs & self.boundary_faces)
            two_g = 2 - chi_filled
            if two_g < 0 or two_g % 2:
                raise DiagramError(
                    f"component with filled chi={chi_filled} is not orientable-consistent"
                )
            out.append((chi_filled - b, two_g // 2, b))
        return out

    def euler_characteristic(self) -> int:
        """Euler characteristic of the surface (boundary circles not filled)."""
        return sum(chi for chi, _, _ in self.component_data())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    # -- curve access --------------------------------------------------------

    def curve_edge_cycles(self) -> dict[tuple, list[int]]:
        """Forward dart cycle of each curve drawn on this surface.

        Curve edges are labelled ``('curve', family, name, k)`` with ``k`` the
        running index along the curve; dart ``2e`` points forward.
        """
        segs: dict[tuple, list[tuple[int, int]]] = {}
        for e in range(self.num_edges):
            lab = self.edge_label[e]
            if lab and lab[0] == "curve":
                _, fam, name, k = lab
                segs.setdefault((fam, name), []).append((k, 2 * e))
        return {key: [d for _, d in sorted(v)] for key, v in sorted(segs.items())}


def build_from_faces(
    face_walks: Sequence[Sequence[int]],
    num_darts: int,
    edge_label: Sequence[tuple],
    boundary_face_indices: Iterable[int],
    vertex_kind_of_dart: Mapping[int, str] | None = None,
    disk_labels: Mapping[object, tuple[int, ...]] | None = None,
) -> CombinatorialSurface:
    """Assemble a surface from its face boundary walks.

    Every dart must occur in exactly one walk, exactly once.  The vertex
    rotation is ``rotation(d) = opposite(prev_in_face(d))``.
    """
    if num_darts % 2:
        raise DiagramError("odd number of darts")
    if len(edge_label) != num_darts // 2:
        raise DiagramError("edge_label length mismatch")
    face_next = [-1] * num_darts
    face_of = [-1] * num_darts
    for fi, walk in enumerate(face_walks):
        if not walk:
            raise DiagramError("empty face walk")
        for i, d in enumerate(walk):
            if not 0 <= d < num_darts:
                raise DiagramError(f"dart {d} out of range")
            if face_next[d] != -1:
                raise DiagramError(f"dart {d} appears twice in face walks")
            face_next[d] = walk[(i + 1) % len(walk)]
            face_of[d] = fi
    if -1 in face_next:
        raise DiagramError(f"dart {face_next.index(-1)} missing from face walks")

    prev_in_face = [0] * num_darts
    for d in range(num_darts):
        prev_in_face[face_next[d]] = d
    rotation = [opposite(prev_in_face[d]) for d in range(num_darts)]

    vid = [-1] * num_darts
    kinds: list[str] = []
    vk = vertex_kind_of_dart or {}
    for d in range(num_darts):
        if vid[d] != -1:
            continue
        idx = len(kinds)
        kind = "plain"
        x = d
        while vid[x] == -1:
            vid[x] = idx
            if x in vk:
                kind = vk[x]
            x = rotation[x]
        kinds.append(kind)

    return CombinatorialSurface(
        face_next=tuple(face_next),
        rotation=tuple(rotation),
        edge_label=tuple(edge_label),
        boundary_faces=frozenset(boundary_face_indices),
        vertex_kind=tuple(kinds),
        vertex_of_dart=tuple(vid),
        face_of_dart=tuple(face_of),
        disk_labels=dict(disk_labels or {}),
    )


def cut_along_cycles(
    surf: CombinatorialSurface, cycles: Sequence[Sequence[int]]
) -> CombinatorialSurface:
    """Cut the surface along disjoint simple closed edge-cycles.

    Each cycle is a closed dart walk passing straight through its vertices.
    The cut duplicates the curve edges, splits the vertices along the curve,
    and adds two boundary faces per cycle.  The Euler characteristic of the
    underlying surface is unchanged; the boundary count grows by two per
    cycle.
    """
    fwd: set[int] = set()
    for cyc in cycles:
        for d in cyc:
            if d in fwd or opposite(d) in fwd:
                raise NotDisjointError("cycles share an edge")
            fwd.add(d)

    n = surf.num_darts
    new_labels = list(surf.edge_label)
    shadow: dict[int, int] = {}
    for cyc in cycles:
        for d in cyc:
            e = d // 2
            base = n + 2 * (len(shadow) // 2)
            shadow[2 * e] = base
            shadow[2 * e + 1] = base + 1
            new_labels.append(("cut-shadow",) + tuple(surf.edge_label[e][1:]))

    def rename(d: int) -> int:
        # faces on the right of a forward curve dart see the shadow copy
        if opposite(d) in fwd:
            return shadow[d]
        return d

    walks = [[rename(d) for d in walk] for walk in surf.faces()]
    old_face_count = len(walks)
    for cyc in cycles:
        walks.append([opposite(d) for d in reversed(cyc)])
        walks.append([shadow[d] for d in cyc])

    boundary = {
        fi for fi in range(old_face_count) if fi in surf.boundary_faces
    }
    boundary |= set(range(old_face_count, len(walks)))

    return build_from_faces(
        walks,
        n + 2 * (len(shadow) // 2),
        new_labels,
        boundary,
    )


# -- canonical codes ---------------------------------------------------------


def _rooted_code(face_next: Sequence[int], colors: Sequence[tuple], root: int):
    order = {root: 0}
    queue = [root]
    code = []
    head = 0
    while head < len(queue):
        d = queue[head]
        head += 1
        for nxt in (face_next[d], opposite(d)):
            if nxt not in order:
                order[nxt] = len(order)
                queue.append(nxt)
        code.append((order[face_next[d]], order[opposite(d)], colors[d]))
    return tuple(code), len(order)


def canonical_code(
    face_next: Sequence[int], dart_color: Sequence[tuple]
) -> tuple:
    """Canonical form of an oriented map with colored darts.

    The map is relabelled in deterministic traversal order from every root
    dart of minimal color; the lexicographically smallest resulting code wins.
    Oriented maps are rigid once a dart is fixed, so no backtracking is
    needed.  Disconnected maps are canonicalized per component and the sorted
    tuple of component codes is returned.
    """
    n = len(face_next)
    if n == 0:
        return ()
    comp = [-1] * n
    cid = 0
    for d0 in range(n):
        if comp[d0] != -1:
            continue
        stack = [d0]
        while stack:
            x = stack.pop()
            if comp[x] != -1:
                continue
            comp[x] = cid
            stack.append(opposite(x))
            stack.append(face_next[x])
        cid += 1

    codes = []
    for c in range(cid):
        darts = [d for d in range(n) if comp[d] == c]
        pairs = []
        used = set()
        for d in darts:
            if d not in used:
                pairs.append((d, opposite(d)))
                used.add(d)
                used.add(opposite(d))
        remap: dict[int, int] = {}
        for i, (a, b) in enumerate(pairs):
            remap[a] = 2 * i
            remap[b] = 2 * i + 1
        m = 2 * len(pairs)
        sub_fn = [0] * m
        sub_col: list[tuple] = [()] * m
        for d in darts:
            sub_fn[remap[d]] = remap[face_next[d]]
            sub_col[remap[d]] = dart_color[d]
        min_color = min(sub_col)
        best = None
        for root in range(m):
            if sub_col[root] != min_color:
                continue
            t, reached = _rooted_code(sub_fn, sub_col, root)
            if reached != m:
                raise DiagramError("component traversal incomplete")
            if best is None or t < best:
                best = t
        codes.append(best)
    if cid == 1:
        return codes[0]
    return tuple(sorted(codes))
