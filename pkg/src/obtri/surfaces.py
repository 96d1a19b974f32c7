"""Surfaces built from spheres, tubes and holes, with curves drawn on them.

The model keeps a planar normal form: every sheet is a sphere whose removed
disks (tube mouths and boundary holes) sit on a horizontal spine, ordered by
rational x-coordinates.  The complement of the spine and the mouth circles
cuts each sheet into two disk faces (upper and lower); each tube is cut by two
rails into two disk faces.  A curve is a cyclic sequence of *ports*: exact
crossing points with skeleton edges, each tagged with the face entered next.
Between consecutive ports a curve runs as the unique chord of a disk face, so
two strands cross exactly when their chords interleave on the face boundary.
This keeps every geometric question (intersection numbers, cutting, Euler
characteristics, homology classes) an exact combinatorial computation.

Compilation realizes chords as straight segments between distinct points on a
convex curve, giving a deterministic rotation-system map
(:class:`~obtri.combmap.CombinatorialSurface`) with explicit 4-valent
crossing vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .combmap import (
    CombinatorialSurface,
    DiagramError,
    NonTransverseError,
    NotDisjointError,
    build_from_faces,
    cut_along_cycles,
)

FAMILIES = ("delta", "epsilon", "alpha", "beta", "gamma", "aux")


class Port(NamedTuple):
    """One transversal crossing of a curve with a skeleton edge.

    ``edge`` is a skeleton edge key, ``slot`` the exact position along it and
    ``face`` the face the strand enters after the crossing (the face of the
    chord that starts here).
    """

    edge: tuple
    slot: Fraction
    face: tuple


@dataclass(frozen=True)
class Curve:
    family: str
    name: str
    ports: tuple[Port, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DiagramError(f"unknown curve family {self.family!r}")
        if len(self.ports) < 2:
            raise DiagramError(f"curve {self.name} needs at least two ports")

    def reversed(self) -> "Curve":
        ports = []
        n = len(self.ports)
        for i in range(n - 1, -1, -1):
            prev_face = self.ports[i - 1].face
            p = self.ports[i]
            ports.append(Port(p.edge, p.slot, prev_face))
        return replace(self, ports=tuple(ports))


@dataclass(frozen=True)
class Site:
    sheet: str
    x: Fraction
    kind: str  # "tube" or "hole"


@dataclass(frozen=True)
class Tube:
    a: str
    b: str
    framing: int = 0


@dataclass(frozen=True)
class SurfaceModel:
    """Spheres with tubes and holes; the canvas that curves are drawn on."""

    sheets: tuple[str, ...]
    sites: Mapping[str, Site]
    tubes: Mapping[str, Tube]

    def __post_init__(self):
        seen = {}
        for sid, site in self.sites.items():
            if site.sheet not in self.sheets:
                raise DiagramError(f"site {sid} on unknown sheet {site.sheet}")
            key = (site.sheet, site.x)
            if key in seen:
                raise DiagramError(
                    f"sites {seen[key]} and {sid} share position {site.x} on {site.sheet}"
                )
            seen[key] = sid
        ends: dict[str, str] = {}
        for tid, tube in self.tubes.items():
            for s in (tube.a, tube.b):
                if s not in self.sites:
                    raise DiagramError(f"tube {tid} attached to unknown site {s}")
                if self.sites[s].kind != "tube":
                    raise DiagramError(f"tube {tid} attached to hole site {s}")
                if s in ends:
                    raise DiagramError(f"site {s} used by tubes {ends[s]} and {tid}")
                ends[s] = tid
        for sid, site in self.sites.items():
            if site.kind == "tube" and sid not in ends:
                raise DiagramError(f"tube site {sid} is not attached to any tube")

    # -- structure queries ---------------------------------------------------

    def holes(self) -> list[str]:
        return sorted(s for s, site in self.sites.items() if site.kind == "hole")

    def sheet_sites(self, sheet: str) -> list[str]:
        pairs = [
            (site.x, sid) for sid, site in self.sites.items() if site.sheet == sheet
        ]
        return [sid for _, sid in sorted(pairs)]

    def tube_of_site(self, site: str) -> str:
        for tid, tube in self.tubes.items():
            if site in (tube.a, tube.b):
                return tid
        raise DiagramError(f"site {site} has no tube")

    def other_end(self, tube: str, site: str) -> str:
        t = self.tubes[tube]
        if site == t.a:
            return t.b
        if site == t.b:
            return t.a
        raise DiagramError(f"site {site} not on tube {tube}")

    def site_face(self, site: str, top: bool) -> tuple:
        """Face behind the circle of ``site`` (tube half or hole disk)."""
        s = self.sites[site]
        if s.kind == "hole":
            return ("H", site)
        tid = self.tube_of_site(site)
        return ("TN", tid) if top else ("TS", tid)

    def faces_of_edge(self, edge: tuple) -> tuple[tuple, tuple]:
        """``(left, right)`` faces of a directed skeleton edge."""
        kind = edge[0]
        if kind == "spine":
            sheet = edge[1]
            return ("U", sheet), ("L", sheet)
        if kind == "ctop":
            site = edge[1]
            return ("U", self.sites[site].sheet), self.site_face(site, True)
        if kind == "cbot":
            site = edge[1]
            return self.site_face(site, False), ("L", self.sites[site].sheet)
        if kind == "rail0":
            return ("TS", edge[1]), ("TN", edge[1])
        if kind == "rail1":
            return ("TN", edge[1]), ("TS", edge[1])
        raise DiagramError(f"unknown edge {edge}")

    def all_faces(self) -> list[tuple]:
        out: list[tuple] = []
        for sheet in self.sheets:
            out.append(("U", sheet))
            out.append(("L", sheet))
        for tid in sorted(self.tubes):
            out.append(("TN", tid))
            out.append(("TS", tid))
        for h in self.holes():
            out.append(("H", h))
        return out

    # -- closed-form invariants ----------------------------------------------

    def component_sheets(self) -> list[list[str]]:
        parent = {s: s for s in self.sheets}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for tube in self.tubes.values():
            ra = find(self.sites[tube.a].sheet)
            rb = find(self.sites[tube.b].sheet)
            if ra != rb:
                parent[ra] = rb
        groups: dict[str, list[str]] = {}
        for s in self.sheets:
            groups.setdefault(find(s), []).append(s)
        return [sorted(groups[r]) for r in sorted(groups)]

    def stats(self) -> list[tuple[int, int, int]]:
        """Per component ``(chi, genus, boundary)`` from the closed form.

        chi = 2*sheets - 2*tubes - holes on each component.
        """
        out = []
        for sheets in self.component_sheets():
            ss = set(sheets)
            ntubes = sum(
                1 for t in self.tubes.values() if self.sites[t.a].sheet in ss
            )
            nholes = sum(
                1
                for s in self.sites.values()
                if s.kind == "hole" and s.sheet in ss
            )
            chi = 2 * len(sheets) - 2 * ntubes - nholes
            two_g = 2 - chi - nholes
            if two_g < 0 or two_g % 2:
                raise DiagramError("inconsistent surface data")
            out.append((chi, two_g // 2, nholes))
        return out

    def genus_total(self) -> int:
        return sum(g for _, g, _ in self.stats())


# -- model construction -------------------------------------------------------


def build_surface(
    spheres: int,
    tubes: Sequence[tuple[tuple[int, str], tuple[int, str], int]] = (),
    boundary_holes: Sequence[tuple[int, str]] = (),
) -> SurfaceModel:
    """Assemble spheres, surgery tubes and boundary holes into a surface.

    Regions are named ``(sphere_index, label)``; each may be used at most once
    across tube ends and holes.  Tube framing is an integer winding offset for
    strands traversing the tube; it never changes the underlying surface.
    """
    sheets = tuple(f"s{i}" for i in range(spheres))
    used: set[tuple[int, str]] = set()
    sites: dict[str, Site] = {}
    tubemap: dict[str, Tube] = {}
    positions = {sh: 0 for sh in sheets}

    def add_site(region: tuple[int, str], kind: str) -> str:
        idx, label = region
        if not 0 <= idx < spheres:
            raise DiagramError(f"region {region} on missing sphere")
        if region in used:
            raise DiagramError(f"region {region} reused")
        used.add(region)
        sheet = sheets[idx]
        positions[sheet] += 1
        sid = f"{sheet}.{label}"
        sites[sid] = Site(sheet, Fraction(positions[sheet]), kind)
        return sid

    for k, (ra, rb, framing) in enumerate(tubes):
        sa = add_site(ra, "tube")
        sb = add_site(rb, "tube")
        tubemap[f"t{k}"] = Tube(sa, sb, framing)
    for r in boundary_holes:
        add_site(r, "hole")
    return SurfaceModel(sheets, sites, tubemap)


def euler_genus_boundary(
    surf: CombinatorialSurface,
) -> tuple[int, list[int], list[int]]:
    """``(chi_total, genus per component, boundary count per component)``."""
    data = surf.component_data()
    return sum(c for c, _, _ in data), [g for _, g, _ in data], [b for _, _, b in data]


# -- boundary orders and chords ------------------------------------------------


class PortRef(NamedTuple):
    curve: int  # index into the curve list
    idx: int  # index into curve.ports


def _gather_ports(curves: Sequence[Curve]) -> dict[tuple, list[tuple[Fraction, PortRef]]]:
    by_edge: dict[tuple, list[tuple[Fraction, PortRef]]] = {}
    for ci, c in enumerate(curves):
        for pi, p in enumerate(c.ports):
            by_edge.setdefault(p.edge, []).append((p.slot, PortRef(ci, pi)))
    for edge, lst in by_edge.items():
        lst.sort(key=lambda t: t[0])
        for i in range(1, len(lst)):
            if lst[i][0] == lst[i - 1][0]:
                raise DiagramError(f"two strands share slot {lst[i][0]} on {edge}")
    return by_edge


def _spine_split(
    model: SurfaceModel, sheet: str, slots: Iterable[tuple[Fraction, PortRef]]
) -> list[list[tuple[Fraction, PortRef]]]:
    """Spine ports split into the m+1 runs between consecutive sites."""
    cuts = [model.sites[s].x for s in model.sheet_sites(sheet)]
    runs: list[list[tuple[Fraction, PortRef]]] = [[] for _ in range(len(cuts) + 1)]
    for slot, ref in slots:
        k = 0
        while k < len(cuts) and slot > cuts[k]:
            k += 1
        if k < len(cuts) and slot == cuts[k]:
            raise DiagramError(f"spine port at site position {slot} on {sheet}")
        runs[k].append((slot, ref))
    return runs


def face_boundary(
    model: SurfaceModel,
    face: tuple,
    by_edge: Mapping[tuple, list[tuple[Fraction, PortRef]]],
) -> list[PortRef]:
    """Cyclic order of curve ports along the boundary of ``face``."""

    def edge_ports(edge: tuple, forward: bool) -> list[PortRef]:
        lst = by_edge.get(edge, [])
        refs = [ref for _, ref in lst]
        return refs if forward else refs[::-1]

    kind = face[0]
    if kind in ("U", "L"):
        sheet = face[1]
        runs = _spine_split(model, sheet, by_edge.get(("spine", sheet), []))
        sites = model.sheet_sites(sheet)
        out: list[PortRef] = []
        if kind == "U":
            for k in range(len(sites) + 1):
                out.extend(ref for _, ref in runs[k])
                if k < len(sites):
                    out.extend(edge_ports(("ctop", sites[k]), True))
        else:
            for k in range(len(sites), -1, -1):
                out.extend(ref for _, ref in reversed(runs[k]))
                if k > 0:
                    out.extend(edge_ports(("cbot", sites[k - 1]), False))
        return out
    if kind == "TN":
        tid = face[1]
        tube = model.tubes[tid]
        return (
            edge_ports(("ctop", tube.a), False)
            + edge_ports(("rail1", tid), True)
            + edge_ports(("ctop", tube.b), False)
            + edge_ports(("rail0", tid), False)
        )
    if kind == "TS":
        tid = face[1]
        tube = model.tubes[tid]
        return (
            edge_ports(("cbot", tube.a), True)
            + edge_ports(("rail0", tid), True)
            + edge_ports(("cbot", tube.b), True)
            + edge_ports(("rail1", tid), False)
        )
    if kind == "H":
        raise DiagramError(f"curve strands inside boundary hole {face[1]}")
    raise DiagramError(f"unknown face {face}")


class Chord(NamedTuple):
    curve: int
    idx: int  # chord goes from ports[idx] to ports[idx+1], in ports[idx].face


def _chords_by_face(curves: Sequence[Curve]) -> dict[tuple, list[Chord]]:
    out: dict[tuple, list[Chord]] = {}
    for ci, c in enumerate(curves):
        for pi, p in enumerate(c.ports):
            out.setdefault(p.face, []).append(Chord(ci, pi))
    return out


def validate_curves(model: SurfaceModel, curves: Sequence[Curve]) -> None:
    """Check that every chord is drawable: ports sit on edges bounding its face."""
    for c in curves:
        n = len(c.ports)
        for i, p in enumerate(c.ports):
            q = c.ports[(i + 1) % n]
            lr = model.faces_of_edge(p.edge)
            if p.face not in lr:
                raise DiagramError(
                    f"curve {c.name}: port on {p.edge} cannot enter {p.face}"
                )
            if p.face not in model.faces_of_edge(q.edge):
                raise DiagramError(
                    f"curve {c.name}: chord in {p.face} ends on {q.edge}"
                )


class Crossing(NamedTuple):
    a: Chord
    b: Chord
    sign: int
    ta: Fraction  # position along chord a, for ordering
    tb: Fraction


def _interleaved(pa, pb, qa, qb, n):
    """Do chords (pa,pb) and (qa,qb) interleave in a cyclic order of n points?"""

    def between(x, lo, hi):
        if lo < hi:
            return lo < x < hi
        return x > lo or x < hi

    return between(qa, pa, pb) != between(qb, pa, pb)


def face_crossings(
    model: SurfaceModel,
    curves: Sequence[Curve],
    by_edge=None,
) -> list[Crossing]:
    """All transversal crossings between chords, exactly.

    Chords are realized as straight segments between distinct points on the
    convex curve ``y = x^2`` (boundary rank as x), so crossing positions are
    exact rationals and the arrangement is geometrically consistent.
    """
    if by_edge is None:
        by_edge = _gather_ports(curves)
    chords = _chords_by_face(curves)
    crossings: list[Crossing] = []
    for face in sorted(chords):
        order = face_boundary(model, face, by_edge)
        pos = {ref: i for i, ref in enumerate(order)}
        n = len(order)
        pts = {i: (Fraction(i), Fraction(i) * i) for i in range(n)}
        face_chords = chords[face]
        ends = []
        for ch in face_chords:
            c = curves[ch.curve]
            a = pos[PortRef(ch.curve, ch.idx)]
            b = pos[PortRef(ch.curve, (ch.idx + 1) % len(c.ports))]
            if a == b:
                raise DiagramError("degenerate chord")
            ends.append((a, b))
        for i in range(len(face_chords)):
            for j in range(i + 1, len(face_chords)):
                (a1, b1), (a2, b2) = ends[i], ends[j]
                if len({a1, b1, a2, b2}) < 4:
                    # chords of one curve meeting at a shared port: adjacency
                    if face_chords[i].curve == face_chords[j].curve:
                        continue
                    raise NonTransverseError(
                        "chords of distinct curves share an endpoint"
                    )
                if not _interleaved(a1, b1, a2, b2, n):
                    continue
                p1, q1 = pts[a1], pts[b1]
                p2, q2 = pts[a2], pts[b2]
                t1, t2 = _segment_params(p1, q1, p2, q2)
                sign = 1 if _cyclic_ccw(a1, a2, b1) else -1
                crossings.append(
                    Crossing(face_chords[i], face_chords[j], sign, t1, t2)
                )
    return crossings


def _cyclic_ccw(a, b, c):
    """True if b lies in the cyclic interval (a, c)."""
    if a < c:
        return a < b < c
    return b > a or b < c


def _segment_params(p1, q1, p2, q2):
    """Intersection parameters of segments p1->q1 and p2->q2 (must cross)."""
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        raise DiagramError("parallel chords reported as crossing")
    w = (p2[0] - p1[0], p2[1] - p1[1])
    t1 = Fraction(w[0] * d2[1] - w[1] * d2[0], den)
    t2 = Fraction(w[0] * d1[1] - w[1] * d1[0], den)
    return t1, t2


# -- public intersection queries ----------------------------------------------


def crossings_between(
    model: SurfaceModel, c1: Curve, c2: Curve
) -> list[Crossing]:
    return face_crossings(model, [c1, c2])


def algebraic_intersection(model: SurfaceModel, c1: Curve, c2: Curve) -> int:
    """Signed count of crossings of two transverse curves."""
    total = 0
    for cr in crossings_between(model, c1, c2):
        total += cr.sign
    return total


def geometric_intersection(model: SurfaceModel, c1: Curve, c2: Curve) -> int:
    return len(crossings_between(model, c1, c2))


def family_is_disjoint(model: SurfaceModel, curves: Sequence[Curve]) -> bool:
    return not face_crossings(model, list(curves))


def assert_simple(model: SurfaceModel, curve: Curve) -> None:
    """A simple closed curve has no self-crossings."""
    if face_crossings(model, [curve]):
        raise NotDisjointError(f"curve {curve.name} is not embedded")


# -- compilation ----------------------------------------------------------------


def compile_surface(
    model: SurfaceModel, curves: Sequence[Curve] = ()
) -> CombinatorialSurface:
    """Realize the model and its curves as a rotation-system map.

    Vertices: sheet poles, site circle corners (disk corners), curve/skeleton
    ports (plain) and curve crossings.  Deterministic for identical input.
    """
    curves = list(curves)
    validate_curves(model, curves)
    by_edge = _gather_ports(curves)
    crossings = face_crossings(model, curves, by_edge)

    nodes: dict[object, int] = {}

    def node(key) -> int:
        if key not in nodes:
            nodes[key] = len(nodes)
        return nodes[key]

    # sub-edge registry: (label, node_from, node_to) with darts 2e/2e+1
    edge_labels: list[tuple] = []
    edge_nodes: list[tuple[int, int]] = []

    def add_edge(label: tuple, nf: int, nt: int) -> int:
        edge_labels.append(label)
        edge_nodes.append((nf, nt))
        return len(edge_labels) - 1

    # rotation accumulation: at each node, outgoing darts in ccw order are
    # inserted into labelled slots; slots are sorted at the end.
    rot_slots: dict[int, list[tuple[tuple, int]]] = {}

    def put(nd: int, slot_key: tuple, dart: int):
        rot_slots.setdefault(nd, []).append((slot_key, dart))

    # ---- skeleton edges, subdivided at their ports
    port_node: dict[PortRef, int] = {}
    skeleton_edges: list[tuple] = []
    for sheet in model.sheets:
        skeleton_edges.append(("spine", sheet))
    for sid in sorted(model.sites):
        skeleton_edges.append(("ctop", sid))
        skeleton_edges.append(("cbot", sid))
    for tid in sorted(model.tubes):
        skeleton_edges.append(("rail0", tid))
        skeleton_edges.append(("rail1", tid))

    def skeleton_endpoints(edge: tuple) -> tuple[object, object]:
        kind = edge[0]
        if kind == "spine":
            return ("inf", edge[1]), ("inf", edge[1])
        if kind in ("ctop", "cbot"):
            return ("W", edge[1]), ("E", edge[1])
        tid = edge[1]
        tube = model.tubes[tid]
        # orientation-reversing mouth identification: rails join E to W
        if kind == "rail0":
            return ("E", tube.a), ("W", tube.b)
        return ("W", tube.a), ("E", tube.b)

    # spine interior nodes: none except ports; but site positions break the
    # spine into pieces bounded by W/E corner nodes.
    seg_pieces: dict[tuple, list[tuple[int, int, int]]] = {}

    for edge in skeleton_edges:
        kind = edge[0]
        ports = by_edge.get(edge, [])
        if kind == "spine":
            sheet = edge[1]
            sites = model.sheet_sites(sheet)
            runs = _spine_split(model, sheet, ports)
            stops: list[object] = [("inf", sheet)]
            for s in sites:
                stops.append(("W", s))
                stops.append(("E", s))
            stops.append(("inf", sheet))
            pieces = []
            for k in range(len(sites) + 1):
                nf = node(stops[2 * k])
                nt = node(stops[2 * k + 1])
                chain: list[int] = [nf]
                for _, ref in runs[k]:
                    pn = node(("port", ref))
                    port_node[ref] = pn
                    chain.append(pn)
                chain.append(nt)
                for i in range(len(chain) - 1):
                    e = add_edge(edge, chain[i], chain[i + 1])
                    pieces.append(e)
            seg_pieces[edge] = pieces  # flat list in west->east order
        else:
            a_key, b_key = skeleton_endpoints(edge)
            nf, nt = node(a_key), node(b_key)
            chain = [nf]
            for _, ref in ports:
                pn = node(("port", ref))
                port_node[ref] = pn
                chain.append(pn)
            chain.append(nt)
            pieces = []
            for i in range(len(chain) - 1):
                e = add_edge(edge, chain[i], chain[i + 1])
                pieces.append(e)
            seg_pieces[edge] = pieces

    # ---- curve chords, subdivided at crossings
    # group crossings by chord with ordering parameter
    on_chord: dict[Chord, list[tuple[Fraction, int]]] = {}
    for xi, cr in enumerate(crossings):
        on_chord.setdefault(cr.a, []).append((cr.ta, xi))
        on_chord.setdefault(cr.b, []).append((cr.tb, xi))
    for lst in on_chord.values():
        lst.sort()
        for i in range(1, len(lst)):
            if lst[i][0] == lst[i - 1][0]:
                raise DiagramError("coincident crossings on a chord")

    curve_edge_count: dict[int, int] = {ci: 0 for ci in range(len(curves))}
    chord_pieces: dict[Chord, list[int]] = {}
    for ci, c in enumerate(curves):
        n = len(c.ports)
        for pi in range(n):
            ch = Chord(ci, pi)
            chain = [node(("port", PortRef(ci, pi)))]
            for _, xi in on_chord.get(ch, []):
                chain.append(node(("x", xi)))
            chain.append(node(("port", PortRef(ci, (pi + 1) % n))))
            pieces = []
            for i in range(len(chain) - 1):
                k = curve_edge_count[ci]
                curve_edge_count[ci] += 1
                e = add_edge(
                    ("curve", c.family, c.name, k), chain[i], chain[i + 1]
                )
                pieces.append(e)
            chord_pieces[ch] = pieces

    # ---- rotations
    # structural vertices
    for sheet in model.sheets:
        inf = nodes.get(("inf", sheet))
        pieces = seg_pieces[("spine", sheet)]
        first, last = pieces[0], pieces[-1]
        put(inf, (0,), 2 * first)  # eastward out of infinity
        put(inf, (1,), 2 * last + 1)  # westward out of infinity
    for sid in sorted(model.sites):
        site = model.sites[sid]
        sheet_pieces = seg_pieces[("spine", site.sheet)]
        sites = model.sheet_sites(site.sheet)
        k = sites.index(sid)
        # spine piece chains: runs are concatenated; recover boundaries by
        # counting ports per run.
        runs = _spine_split(model, site.sheet, by_edge.get(("spine", site.sheet), []))
        run_sizes = [len(r) + 1 for r in runs]
        starts = [0]
        for sz in run_sizes:
            starts.append(starts[-1] + sz)
        west_piece = sheet_pieces[starts[k + 1] - 1]  # last piece of run k
        east_piece = sheet_pieces[starts[k + 1]]  # first piece of run k+1
        w = nodes[("W", sid)]
        e = nodes[("E", sid)]
        ctop = seg_pieces[("ctop", sid)]
        cbot = seg_pieces[("cbot", sid)]
        # ccw at W: west-spine(back), cbot(start), rail1?(into disk), ctop(start)
        put(w, (0,), 2 * west_piece + 1)
        put(w, (1,), 2 * cbot[0])
        put(w, (3,), 2 * ctop[0])
        # ccw at E: east-spine(fwd), ctop(back), rail0?(into disk), cbot(back)
        put(e, (0,), 2 * east_piece)
        put(e, (1,), 2 * ctop[-1] + 1)
        put(e, (3,), 2 * cbot[-1] + 1)
        if site.kind == "tube":
            tid = model.tube_of_site(sid)
            tube = model.tubes[tid]
            r0 = seg_pieces[("rail0", tid)]
            r1 = seg_pieces[("rail1", tid)]
            if sid == tube.a:
                put(w, (2,), 2 * r1[0])
                put(e, (2,), 2 * r0[0])
            else:
                put(w, (2,), 2 * r0[-1] + 1)
                put(e, (2,), 2 * r1[-1] + 1)

    # port vertices: ccw [edge-forward, strand-into-left, edge-back, strand-into-right]
    for ref, nd in port_node.items():
        c = curves[ref.curve]
        p = c.ports[ref.idx]
        prev_face = c.ports[ref.idx - 1].face
        left, right = model.faces_of_edge(p.edge)
        # pieces of the skeleton edge around this port
        pieces = seg_pieces[p.edge]
        # locate: the port is the boundary between piece i and i+1 within its
        # edge chain; find via edge_nodes
        before = after = None
        for e in pieces:
            nf, nt = edge_nodes[e]
            if nt == nd:
                before = e
            if nf == nd:
                after = e
        if before is None or after is None:
            raise DiagramError("port not on its edge chain")
        out_fwd = 2 * after
        out_back = 2 * before + 1
        # strand darts at this node: chord (ref.idx) goes out into p.face;
        # chord (ref.idx - 1) comes in from prev_face, so its last piece's
        # backward dart points into prev_face.
        ch_out = chord_pieces[Chord(ref.curve, ref.idx)][0]
        ch_in = chord_pieces[Chord(ref.curve, (ref.idx - 1) % len(c.ports))][-1]
        into_next = 2 * ch_out
        into_prev = 2 * ch_in + 1
        if p.face == right:
            strand_left, strand_right = into_prev, into_next
        elif p.face == left:
            strand_left, strand_right = into_next, into_prev
        else:  # pragma: no cover - validated earlier
            raise DiagramError("port face mismatch")
        put(nd, (0,), out_fwd)
        put(nd, (1,), strand_left)
        put(nd, (2,), out_back)
        put(nd, (3,), strand_right)

    # crossing vertices: ccw interleaving by sign
    for xi, cr in enumerate(crossings):
        nd = nodes[("x", xi)]
        ia = on_chord[cr.a]
        ka = [i for i, (_, x) in enumerate(ia) if x == xi][0]
        ib = on_chord[cr.b]
        kb = [i for i, (_, x) in enumerate(ib) if x == xi][0]
        a_in = chord_pieces[cr.a][ka]
        a_out = chord_pieces[cr.a][ka + 1]
        b_in = chord_pieces[cr.b][kb]
        b_out = chord_pieces[cr.b][kb + 1]
        if cr.sign > 0:
            seq = [2 * a_out, 2 * b_out, 2 * a_in + 1, 2 * b_in + 1]
        else:
            seq = [2 * a_out, 2 * b_in + 1, 2 * a_in + 1, 2 * b_out]
        for slot, dart in enumerate(seq):
            put(nd, (slot,), dart)

    num_darts = 2 * len(edge_labels)
    rotation = [-1] * num_darts
    for nd, lst in rot_slots.items():
        lst.sort()
        darts = [d for _, d in lst]
        for i, d in enumerate(darts):
            rotation[d] = darts[(i + 1) % len(darts)]
    if -1 in rotation:
        raise DiagramError("dart missing from rotation assembly")

    # faces on the left: next_in_face(d) = sigma_inv(opposite(d))
    rot_inv = [0] * num_darts
    for d in range(num_darts):
        rot_inv[rotation[d]] = d
    face_next = [rot_inv[d ^ 1] for d in range(num_darts)]

    walks = []
    seen = [False] * num_darts
    for d0 in range(num_darts):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = face_next[d]
        walks.append(walk)

    boundary = set()
    hole_face_of: dict[str, int] = {}
    for h in model.holes():
        piece = seg_pieces[("ctop", h)][0]
        dart = 2 * piece + 1
        for fi, walk in enumerate(walks):
            if dart in walk:
                boundary.add(fi)
                hole_face_of[h] = fi
                break

    kinds: dict[int, str] = {}
    for key, nd in nodes.items():
        if isinstance(key, tuple) and key[0] in ("W", "E"):
            kind = "disk-corner"
        elif isinstance(key, tuple) and key[0] == "x":
            kind = "crossing"
        else:
            kind = "plain"
        # mark via any outgoing dart
        for slotlist in (rot_slots.get(nd) or []):
            break
        kinds[nd] = kind
    vertex_kind_of_dart = {}
    for nd, lst in rot_slots.items():
        for _, d in lst:
            vertex_kind_of_dart[d] = kinds[nd]

    disk_labels = {}
    for sid in sorted(model.sites):
        cyc = []
        for e in reversed(seg_pieces[("ctop", sid)]):
            cyc.append(2 * e + 1)
        for e in seg_pieces[("cbot", sid)]:
            cyc.append(2 * e)
        disk_labels[sid] = tuple(cyc)

    surf = build_from_faces(
        walks,
        num_darts,
        edge_labels,
        boundary,
        vertex_kind_of_dart=vertex_kind_of_dart,
        disk_labels=disk_labels,
    )
    # cross-check the two Euler characteristic routes
    model_chi = sum(c for c, _, _ in model.stats())
    if surf.euler_characteristic() != model_chi:
        raise DiagramError(
            f"compiled chi {surf.euler_characteristic()} != model chi {model_chi}"
        )
    return surf


def cut_along(
    model: SurfaceModel, curves: Sequence[Curve]
) -> CombinatorialSurface:
    """Cut the surface along a disjoint family of simple closed curves."""
    curves = list(curves)
    for c in curves:
        assert_simple(model, c)
    if face_crossings(model, curves):
        raise NotDisjointError("cut curves intersect")
    surf = compile_surface(model, curves)
    cycles = list(surf.curve_edge_cycles().values())
    return cut_along_cycles(surf, cycles)
