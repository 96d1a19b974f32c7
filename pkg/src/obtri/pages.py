"""Sutured Heegaard diagrams of open-book pages, in normal form.

A page diagram records the splitting surface of the page as spheres with
tubes: one model sphere per binding component, tubes realizing the binding
genus (no parallel belt curve), and compression-handle tubes (each carrying
an implicit belt curve parallel to its attaching regions).  The attaching
curves of the handlebody side are stored explicitly.  The bundle variant has
a single non-binding sphere and no suture circles.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .combmap import DiagramError
from .drawing import Draw, circle_between, tube_hop
from .surfaces import (
    Curve,
    Port,
    SurfaceModel,
    Site,
    Tube,
    compile_surface,
    cut_along,
    euler_genus_boundary,
    face_crossings,
    geometric_intersection,
)

OPEN_BOOK = "open-book"
BUNDLE = "bundle"


@dataclass(frozen=True)
class PageDiagram:
    model: SurfaceModel
    genus_tubes: tuple[str, ...]
    handles: tuple[str, ...]  # ordered compression handles a_1..a_k
    deltas: tuple[Curve, ...]
    mode: str = OPEN_BOOK
    epsilons: tuple[Curve, ...] | None = None  # derived when omitted

    def handle_sites(self, handle: str) -> tuple[str, str]:
        t = self.model.tubes[handle]
        return t.a, t.b

    def epsilon_curves(self) -> tuple[Curve, ...]:
        """Belt curves, one per compression handle, around its plus region."""
        if self.epsilons is not None:
            return self.epsilons
        draw = Draw(self.model, self.deltas)
        out = []
        for h in self.handles:
            site = self.model.tubes[h].a
            s = self.model.sites[site]
            out.append(
                circle_between(
                    draw, "epsilon", f"eps-{h}", s.sheet, (s.x, -1), (s.x, 1)
                )
            )
        return tuple(out)


@dataclass(frozen=True)
class PageStats:
    k: int
    ell: int
    g_page: int
    g_binding: int
    n_binding: int
    p: int
    b: int


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[tuple[str, str], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed


def _encircled_sites(model: SurfaceModel, curve: Curve) -> list[str] | None:
    """Sites enclosed by a two-port spine circle, or None if another shape."""
    if len(curve.ports) != 2:
        return None
    p, q = curve.ports
    if p.edge[0] != "spine" or q.edge[0] != "spine" or p.edge != q.edge:
        return None
    sheet = p.edge[1]
    lo, hi = min(p.slot, q.slot), max(p.slot, q.slot)
    return [
        sid
        for sid in model.sheet_sites(sheet)
        if lo < model.sites[sid].x < hi
    ]


def _mouth_entries(curve: Curve) -> dict[str, int]:
    out: dict[str, int] = {}
    for p in curve.ports:
        if p.edge[0] in ("ctop", "cbot"):
            out[p.edge[1]] = out.get(p.edge[1], 0) + 1
    return out


def validate_page_diagram(d: PageDiagram) -> ValidationReport:
    """Check every normal-form clause; report violations by name."""
    bad: list[tuple[str, str]] = []
    model = d.model

    if d.mode not in (OPEN_BOOK, BUNDLE):
        return ValidationReport((("mode", f"unknown mode {d.mode!r}"),))

    tube_ids = set(model.tubes)
    if set(d.genus_tubes) | set(d.handles) != tube_ids or set(
        d.genus_tubes
    ) & set(d.handles):
        bad.append(
            ("tube-roles", "tubes must split into genus tubes and handles")
        )
    if len(set(d.handles)) != len(d.handles):
        bad.append(("tube-roles", "handle list has repeats"))

    for t in d.genus_tubes:
        tube = model.tubes.get(t)
        if tube and model.sites[tube.a].sheet != model.sites[tube.b].sheet:
            bad.append(
                ("genus-tube-local", f"genus tube {t} joins two spheres")
            )

    if len(model.component_sheets()) != 1:
        bad.append(("surface-connected", "splitting surface is disconnected"))

    holes = model.holes()
    if d.mode == BUNDLE:
        if len(model.sheets) != 1:
            bad.append(("bundle-sheet", "bundle mode needs exactly one sphere"))
        if holes:
            bad.append(("bundle-sutures", "bundle mode admits no sutures"))
        if d.genus_tubes:
            bad.append(("bundle-binding", "bundle mode has no binding genus"))
        if len(d.deltas) != len(d.handles):
            bad.append(
                ("bundle-counts", "closed splitting needs as many attaching "
                 "curves as handles")
            )

    # belt curves parallel to exactly one handle region
    try:
        eps = d.epsilon_curves()
    except DiagramError as e:
        bad.append(("epsilon-shape", str(e)))
        eps = ()
    plus_sites = {model.tubes[h].a: h for h in d.handles if h in model.tubes}
    for c in eps:
        enclosed = _encircled_sites(model, c)
        if enclosed is None or len(enclosed) != 1 or enclosed[0] not in plus_sites:
            bad.append(
                ("epsilon-parallel",
                 f"{c.name} must encircle exactly one handle region")
            )

    # attaching curves: simple, pairwise disjoint, crossing belts only
    # through handle traversals
    try:
        if face_crossings(model, list(d.deltas)):
            bad.append(("delta-disjoint", "attaching curves intersect"))
    except DiagramError as e:
        bad.append(("delta-drawable", str(e)))
        return ValidationReport(tuple(bad))
    for c in d.deltas:
        entries = _mouth_entries(c)
        for site, cnt in entries.items():
            tid = model.tube_of_site(site)
            if tid in d.genus_tubes:
                continue
            if tid not in d.handles:
                bad.append(("delta-route", f"{c.name} enters unknown tube"))
        for e_curve, h in zip(eps, d.handles):
            plus = model.tubes[h].a
            expected = entries.get(plus, 0)
            if geometric_intersection(model, c, e_curve) != expected:
                bad.append(
                    ("delta-epsilon-transverse",
                     f"{c.name} meets the belt of {h} away from the handle")
                )

    # handlebody side: the attaching curves cut the surface to a connected
    # planar piece (genus of the free boundary side in the sutured case)
    if not bad:
        surf = cut_along(model, list(d.deltas))
        chi, genus, bnds = euler_genus_boundary(surf)
        if len(genus) != 1:
            bad.append(
                ("h-side-cut", "attaching curves disconnect the surface")
            )
        elif not holes and genus[0] != 0:
            bad.append(
                ("h-side-cut",
                 f"cut surface has genus {genus[0]}, expected planar")
            )
        g_f = model.genus_total()
        p = genus[0] if len(genus) == 1 else 0
        if len(d.deltas) != g_f - p:
            bad.append(
                ("curve-count",
                 f"{len(d.deltas)} attaching curves for genus {g_f} "
                 f"(free side genus {p})")
            )

    # chi bookkeeping between binding and splitting surface
    n_sheets = len(model.sheets)
    chi_b = 2 * n_sheets - 2 * len(d.genus_tubes) - len(holes)
    chi_f = 2 * n_sheets - 2 * len(model.tubes) - len(holes)
    if chi_b - 2 * len(d.handles) != chi_f:
        bad.append(("chi-consistency", "handle count breaks chi bookkeeping"))

    return ValidationReport(tuple(bad))


def page_stats(d: PageDiagram) -> PageStats:
    report = validate_page_diagram(d)
    if not report:
        raise DiagramError(f"invalid page diagram: {report.failures}")
    model = d.model
    holes = model.holes()
    k = len(d.handles)
    ell = len(d.deltas)
    g_page = model.genus_total()
    if d.mode == BUNDLE:
        n_b = 0
        g_b = 0
    else:
        n_b = len(model.sheets)
        g_b = len(d.genus_tubes)
    if holes:
        surf = cut_along(model, list(d.deltas))
        _, genus, _ = euler_genus_boundary(surf)
        p = genus[0]
    else:
        p = 0
    return PageStats(k, ell, g_page, g_b, n_b, p, len(holes))


# -- construction helpers --------------------------------------------------------


def _rename_prefix(model: SurfaceModel, prefix: str):
    sheets = tuple(prefix + s for s in model.sheets)
    sites = {
        prefix + sid: Site(prefix + s.sheet, s.x, s.kind)
        for sid, s in model.sites.items()
    }
    tubes = {
        prefix + tid: Tube(prefix + t.a, prefix + t.b, t.framing)
        for tid, t in model.tubes.items()
    }
    return SurfaceModel(sheets, sites, tubes)


def make_remapper(prefix: str, fused_old: str, fused_new: str, offset: Fraction):
    """Port/edge/face renamer for carrying the second summand's data over."""

    def edge_map(edge, slot):
        kind = edge[0]
        if kind == "spine":
            if edge[1] == fused_old:
                return ("spine", fused_new), slot + offset
            return ("spine", prefix + edge[1]), slot
        return (kind, prefix + edge[1]), slot

    def face_map(face):
        kind = face[0]
        if kind in ("U", "L"):
            if face[1] == fused_old:
                return (kind, fused_new)
            return (kind, prefix + face[1])
        return (kind, prefix + face[1])

    def curve_map(curve: Curve) -> Curve:
        ports = []
        for p in curve.ports:
            edge, slot = edge_map(p.edge, p.slot)
            ports.append(Port(edge, slot, face_map(p.face)))
        return replace(curve, name=prefix + curve.name, ports=tuple(ports))

    return edge_map, face_map, curve_map


def merge_pages(
    d1: PageDiagram, d2: PageDiagram, sheet1: str, sheet2: str
) -> tuple[PageDiagram, dict]:
    """Boundary connected sum along the named binding spheres.

    The two model spheres fuse into one; everything of the second diagram is
    carried over under a deterministic renaming (returned for callers that
    must remap monodromy data).
    """
    if d1.mode != OPEN_BOOK or d2.mode != OPEN_BOOK:
        raise DiagramError("boundary sum needs open-book pages")
    if sheet1 not in d1.model.sheets:
        raise DiagramError(f"no sheet {sheet1} in the first page")
    if sheet2 not in d2.model.sheets:
        raise DiagramError(f"no sheet {sheet2} in the second page")

    prefix = "r."
    hi1 = Fraction(0)
    for s in d1.model.sheet_sites(sheet1):
        hi1 = max(hi1, d1.model.sites[s].x)
    for c in d1.deltas:
        for p in c.ports:
            if p.edge == ("spine", sheet1):
                hi1 = max(hi1, p.slot)
    lo2 = Fraction(0)
    for s in d2.model.sheet_sites(sheet2):
        lo2 = min(lo2, d2.model.sites[s].x)
    for c in d2.deltas:
        for p in c.ports:
            if p.edge == ("spine", sheet2):
                lo2 = min(lo2, p.slot)
    offset = hi1 - lo2 + 2

    edge_map, face_map, curve_map = make_remapper(
        prefix, sheet2, sheet1, offset
    )

    sheets = d1.model.sheets + tuple(
        prefix + s for s in d2.model.sheets if s != sheet2
    )
    sites = dict(d1.model.sites)
    for sid, s in d2.model.sites.items():
        if s.sheet == sheet2:
            sites[prefix + sid] = Site(sheet1, s.x + offset, s.kind)
        else:
            sites[prefix + sid] = Site(prefix + s.sheet, s.x, s.kind)
    tubes = dict(d1.model.tubes)
    for tid, t in d2.model.tubes.items():
        tubes[prefix + tid] = Tube(prefix + t.a, prefix + t.b, t.framing)
    model = SurfaceModel(sheets, sites, tubes)

    deltas = tuple(d1.deltas) + tuple(curve_map(c) for c in d2.deltas)
    out = PageDiagram(
        model,
        d1.genus_tubes + tuple(prefix + t for t in d2.genus_tubes),
        d1.handles + tuple(prefix + h for h in d2.handles),
        deltas,
        OPEN_BOOK,
    )
    info = {
        "prefix": prefix,
        "edge_map": edge_map,
        "face_map": face_map,
        "curve_map": curve_map,
    }
    return out, info


def boundary_connected_sum(
    d1: PageDiagram, d2: PageDiagram, sheet1: str, sheet2: str
) -> PageDiagram:
    return merge_pages(d1, d2, sheet1, sheet2)[0]


def stabilize_splitting(d: PageDiagram) -> PageDiagram:
    """One Heegaard stabilization: a new handle whose belt meets a new
    attaching curve exactly once, away from everything else."""
    model = d.model
    sheet = model.sheets[0]
    xs = [model.sites[s].x for s in model.sheet_sites(sheet)]
    for c in d.deltas:
        xs.extend(p.slot for p in c.ports if p.edge == ("spine", sheet))
    base = max(xs, default=Fraction(0)) + 1
    n = 0
    while f"stab{n}" in model.tubes or f"{sheet}.stab{n}a" in model.sites:
        n += 1
    sa, sb = f"{sheet}.stab{n}a", f"{sheet}.stab{n}b"
    tid = f"stab{n}"
    sites = dict(model.sites)
    sites[sa] = Site(sheet, base + 1, "tube")
    sites[sb] = Site(sheet, base + 2, "tube")
    tubes = dict(model.tubes)
    tubes[tid] = Tube(sa, sb, 0)
    model2 = SurfaceModel(model.sheets, sites, tubes)

    draw = Draw(model2, d.deltas)
    pb = draw.path("delta", f"delta-{tid}")
    tube_hop(draw, pb, sa)
    new_delta = pb.done()
    return PageDiagram(
        model2,
        d.genus_tubes,
        d.handles + (tid,),
        d.deltas + (new_delta,),
        d.mode,
    )
