"""Elementary handle maps, monodromy words, and their trace curves.

Words are sequences of the four elementary handle maps, composed right to
left.  Twisting a foot acts as a Dehn twist along a circle around the foot's
dragged region; sliding a foot acts as the point-push pair of opposite twists
along the two push-offs of the slide loop; inverting a handle and exchanging
two handles rewire the mouth ports of the affected tubes (the reflection of
the local model is fixed so that every labelled sub-copy of a handle is
carried to the like-labelled sub-copy).

The trace construction assembles, letter by letter, the attaching circles of
the 2-handles that cancel the doubled handle system: each new outermost
letter acts on the accumulated state, contributes one freshly twisted band
per handle, and the intermediate copies are cancelled by splicing the bands
into the state curves.  Crossings between the two systems are removed by
validated finger moves before splicing.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .combmap import DiagramError
from .drawing import (
    Draw,
    circle_between,
    dehn_twist,
    finger_clean,
    offset_port,
    tube_hop,
    uncross_self,
)
from .pages import BUNDLE, PageDiagram, page_stats, validate_page_diagram
from .surfaces import (
    Curve,
    Port,
    Site,
    SurfaceModel,
    Tube,
    face_crossings,
    geometric_intersection,
)


# -- letters ---------------------------------------------------------------------


@dataclass(frozen=True)
class TwistFoot:
    handle: str
    foot: str  # "+" or "-"
    sign: int = 1


@dataclass(frozen=True)
class InvertHandle:
    handle: str


@dataclass(frozen=True)
class SlideFoot:
    handle: str
    foot: str
    arc: tuple[tuple[Fraction, bool], ...]  # spine crossings (x, to_upper)
    sign: int = 1


@dataclass(frozen=True)
class ExchangeHandles:
    a: str
    b: str


Letter = TwistFoot | InvertHandle | SlideFoot | ExchangeHandles
Word = tuple  # of letters, applied right to left


def word_handles(word) -> set[str]:
    out = set()
    for let in word:
        if isinstance(let, ExchangeHandles):
            out.update((let.a, let.b))
        else:
            out.add(let.handle)
    return out


def check_word(word, page: PageDiagram) -> None:
    missing = word_handles(word) - set(page.handles)
    if missing:
        raise DiagramError(f"word references unknown handles {sorted(missing)}")


# -- tripled page model -----------------------------------------------------------

COPIES = ("A", "B", "C")  # start, middle, end sub-copies of each handle


@dataclass(frozen=True)
class TripledPage:
    page: PageDiagram
    model: SurfaceModel
    site_of: dict  # (handle, foot, copy) -> site id
    tube_of: dict  # (handle, copy) -> tube id
    zone: dict  # (handle, foot) -> (west, east) of the dragged B..C zone

    def foot_sheet(self, handle: str, foot: str) -> str:
        return self.model.sites[self.site_of[(handle, foot, "B")]].sheet


def _clearance(page: PageDiagram, sheet: str, x: Fraction) -> Fraction:
    gaps = []
    for sid in page.model.sheet_sites(sheet):
        gx = page.model.sites[sid].x
        if gx != x:
            gaps.append(abs(gx - x))
    for c in page.deltas:
        for p in c.ports:
            if p.edge == ("spine", sheet) and p.slot != x:
                gaps.append(abs(p.slot - x))
    step = min(gaps, default=Fraction(1)) / 4
    return step


def tripled_page(page: PageDiagram) -> TripledPage:
    """Replace each handle's attaching regions by three labelled copies.

    Copies sit at ``x - step, x, x + step`` (start, middle, end) inside the
    old region's clearance; genus tubes and sutures are untouched, so all
    sheet coordinates carry over verbatim.
    """
    model = page.model
    sites = {
        sid: s for sid, s in model.sites.items()
    }
    tubes = dict(model.tubes)
    site_of = {}
    tube_of = {}
    zone = {}
    for h in page.handles:
        t = tubes.pop(h)
        for foot, old in (("+", t.a), ("-", t.b)):
            s = model.sites[old]
            step = _clearance(page, s.sheet, s.x)
            del sites[old]
            for k, copy in enumerate(COPIES):
                sid = f"{old}.{copy}"
                sites[sid] = Site(s.sheet, s.x + (k - 1) * step, s.kind)
                site_of[(h, foot, copy)] = sid
            zone[(h, foot)] = (s.x - step / 2, s.x + step + step / 2)
        for copy in COPIES:
            tid = f"{h}.{copy}"
            tubes[tid] = Tube(
                site_of[(h, "+", copy)], site_of[(h, "-", copy)], t.framing
            )
            tube_of[(h, copy)] = tid
    return TripledPage(page, SurfaceModel(model.sheets, sites, tubes), site_of,
                       tube_of, zone)


def translate_delta_copies(tp: TripledPage, draw: Draw) -> dict[str, list[Curve]]:
    """Draw the three parallel copies of every attaching curve.

    Copy ``j`` reroutes each handle traversal through the ``j``-th tube copy;
    away from the handles the copies run parallel to the original at nested
    offsets.  Returns the copies per family tag ``alpha, beta, gamma``.
    """
    page = tp.page
    families = ("alpha", "beta", "gamma")
    out = {fam: [] for fam in families}
    old_site_to_copy = {}
    for (h, foot, copy), sid in tp.site_of.items():
        old = tp.page.model.tubes[h].a if foot == "+" else tp.page.model.tubes[h].b
        old_site_to_copy[(old, copy)] = sid

    gap = Fraction(1)
    for c in page.deltas:
        for p in c.ports:
            gap = min(gap, Fraction(1, 4))
    for j, fam in enumerate(families):
        copy = COPIES[j]
        off = Fraction(j + 1, 1000)
        for c in page.deltas:
            ports = []
            for p in c.ports:
                kind = p.edge[0]
                if kind in ("ctop", "cbot"):
                    old = p.edge[1]
                    if (old, copy) in old_site_to_copy:
                        sid = old_site_to_copy[(old, copy)]
                        face = p.face
                        if face[0] in ("TN", "TS"):
                            tid = tp.page.model.tube_of_site(old)
                            face = (face[0], tp.tube_of[(tid, copy)])
                        ports.append(Port((kind, sid), p.slot + off, face))
                        continue
                    # genus tube mouth: keep, offset the slot
                    ports.append(Port(p.edge, p.slot + off, p.face))
                elif kind.startswith("rail"):
                    old_tid = p.edge[1]
                    if old_tid in page.handles:
                        tid = tp.tube_of[(old_tid, copy)]
                        ports.append(Port((kind, tid), p.slot + off, (p.face[0], tid)))
                    else:
                        ports.append(Port(p.edge, p.slot + off, p.face))
                else:
                    ports.append(Port(p.edge, p.slot + off, p.face))
            curve = Curve(fam, f"{fam}-{c.name}", tuple(ports))
            draw.add(curve)
            out[fam].append(curve)
    return out


# -- letter actions ----------------------------------------------------------------


def _zone_flanks(draw: Draw, sheet: str, west: Fraction, east: Fraction):
    e = ("spine", sheet)
    w = draw.fresh_beside(e, west, +1)
    x = draw.fresh_beside(e, east, -1)
    return w, x


def _foot_circle(draw: Draw, sheet: str, west: Fraction, east: Fraction, name):
    """Outermost circle inside the zone: the dragged region's boundary."""
    e = ("spine", sheet)
    w, x = _zone_flanks(draw, sheet, west, east)
    curve = Curve(
        "aux", name, (Port(e, x, ("L", sheet)), Port(e, w, ("U", sheet)))
    )
    return curve, (w, x)


def _release_curve(draw: Draw, curve: Curve):
    for p in curve.ports:
        draw._release(p.edge, p.slot)


def _twist_zone(draw: Draw, sheet, west, east, sign, keys):
    circle, slots = _foot_circle(draw, sheet, west, east, "aux-twist")
    dehn_twist(draw, circle, sign, keys=keys)
    e = ("spine", sheet)
    draw._release(e, slots[0])
    draw._release(e, slots[1])


def _slide_zone(draw: Draw, sheet, west, east, arc, sign, keys):
    """Point-push of the zone along the spine loop ``arc``."""
    e = ("spine", sheet)
    c1_ports = []
    for x, up in arc:
        face = ("U", sheet) if up else ("L", sheet)
        slot = draw.fresh_beside(e, x, +1)
        c1_ports.append(Port(e, slot, face))
    c1 = Curve("aux", "aux-slide-1", tuple(c1_ports))
    if face_crossings(draw.model, [c1]):
        _release_curve(draw, c1)
        raise DiagramError("slide arc is not embedded")

    last_face = c1.ports[-1].face
    tries = []
    for side in ("L", "R"):
        tries.append(side)
    c2 = None
    for side in tries:
        offs = [offset_port(draw, p, side) for p in c1.ports]
        w, x = _zone_flanks(draw, sheet, west, east)
        if last_face[0] == "U":
            wrap = [Port(e, w, ("L", sheet)), Port(e, x, ("U", sheet))]
        else:
            wrap = [Port(e, w, ("U", sheet)), Port(e, x, ("L", sheet))]
        cand = Curve("aux", "aux-slide-2", tuple(offs + wrap))
        if not face_crossings(draw.model, [cand]) and not face_crossings(
            draw.model, [cand, c1]
        ):
            c2 = cand
            break
        for p in offs + wrap:
            draw._release(p.edge, p.slot)
    if c2 is None:
        _release_curve(draw, c1)
        raise DiagramError("cannot thicken the slide arc around the foot")
    dehn_twist(draw, c1, sign, keys=keys)
    dehn_twist(draw, c2, -sign, keys=keys)
    _release_curve(draw, c1)
    _release_curve(draw, c2)


def _teleport_sites(draw: Draw, pairs: list[tuple[str, str]], keys):
    """Swap all mouth ports between paired sites (both on one sphere).

    Realizes the reflection of the half-twist local models.  Every rerouted
    strand is escorted: it still runs to the old site's neighborhood, then
    takes a fresh tunnel through the opposite sheet face over to the new
    site, so reroutes of different strands stay parallel.
    """
    model = draw.model
    for sa, sb in pairs:
        if model.sites[sa].sheet != model.sites[sb].sheet:
            raise DiagramError(
                "handle inversion/exchange needs its regions on one sphere"
            )
    site_map = {}
    for sa, sb in pairs:
        site_map[sa] = sb
        site_map[sb] = sa
    tube_map = {}
    for s_old, s_new in site_map.items():
        tube_map[model.tube_of_site(s_old)] = model.tube_of_site(s_new)

    # spine ports hugging a swapped site travel with it
    def spine_home(sheet: str, x: Fraction) -> str | None:
        best, dist = None, None
        for sid in model.sheet_sites(sheet):
            d = abs(model.sites[sid].x - x)
            if dist is None or d < dist:
                best, dist = sid, d
        return best

    keyset = list(keys)
    for key in keyset:
        curve = draw.curves[key]

        def port_move(p: Port):
            """New (edge, anchor_slot, face) if the port travels, else None."""
            kind = p.edge[0]
            if kind in ("ctop", "cbot") and p.edge[1] in site_map:
                face = p.face
                if face[0] in ("TN", "TS"):
                    face = (face[0], tube_map[model.tube_of_site(p.edge[1])])
                return (kind, site_map[p.edge[1]]), p.slot, face
            if kind.startswith("rail") and p.edge[1] in tube_map:
                tid = tube_map[p.edge[1]]
                return (kind, tid), p.slot, (p.face[0], tid)
            if kind == "spine":
                home = spine_home(p.edge[1], p.slot)
                if home in site_map:
                    shift = (
                        model.sites[site_map[home]].x - model.sites[home].x
                    )
                    return p.edge, p.slot + shift, p.face
            return None

        moves = [port_move(p) for p in curve.ports]
        if not any(moves):
            continue
        draw.remove(key)
        ports: list[Port] = []
        allocated: list[tuple[tuple, Fraction]] = []

        def alloc(edge, slot):
            lst = draw._used.get(edge, [])
            while slot in lst or (edge, slot) in allocated:
                slot += Fraction(1, 997)
            draw._register(edge, slot)
            allocated.append((edge, slot))
            return slot

        def fresh_near(edge, anchor, direction, face):
            slot = draw.fresh_beside(edge, anchor, direction)
            allocated.append((edge, slot))
            return Port(edge, slot, face)

        n = len(curve.ports)
        for i, p in enumerate(curve.ports):
            mv = moves[i]
            if mv is None:
                ports.append(p)
                continue
            edge, anchor, face = mv
            target = Port(edge, alloc(edge, anchor), face)
            kind = p.edge[0]
            if kind not in ("ctop", "cbot"):
                ports.append(target)
                continue
            old_site = p.edge[1]
            new_site = site_map[old_site]
            sheet = model.sites[old_site].sheet
            x_old = model.sites[old_site].x
            x_new = model.sites[new_site].x
            toward_new = 1 if x_new > x_old else -1
            near = ("U", sheet) if kind == "ctop" else ("L", sheet)
            far = ("L", sheet) if kind == "ctop" else ("U", sheet)
            e = ("spine", sheet)
            entering = p.face[0] in ("TN", "TS")
            if entering and moves[(i - 1) % n] is None:
                # approached from outside the zone: tunnel to the new site
                e1 = fresh_near(e, x_old, toward_new, far)
                e2 = fresh_near(e, x_new, -toward_new, near)
                ports.extend([e1, e2, target])
            elif not entering and moves[(i + 1) % n] is None:
                # leaves the zone afterwards: tunnel back
                e2 = fresh_near(e, x_new, -toward_new, far)
                e1 = fresh_near(e, x_old, toward_new, near)
                ports.extend([target, e2, e1])
            else:
                ports.append(target)
        for edge, slot in allocated:
            draw._release(edge, slot)
        draw.add(replace(curve, ports=tuple(ports)))
    # residual forced crossings of the straight reconnections
    for key in keyset:
        if key in draw.curves:
            uncross_self(draw, key)


def apply_letter(
    draw: Draw,
    letter,
    keys,
    tp: TripledPage | None = None,
    page: PageDiagram | None = None,
):
    """Rewrite the named curves by one elementary handle map.

    On a tripled model the letter drags the middle and end copies of its
    regions (the start copies stay put, as the trace bookkeeping requires);
    on a plain page it drags the whole regions.
    """
    keys = list(keys)
    if tp is not None:
        model = tp.model

        def foot_zone(handle, foot):
            sheet = tp.foot_sheet(handle, foot)
            w, e = tp.zone[(handle, foot)]
            return sheet, w, e

        def invert_pairs(handle):
            return [
                (tp.site_of[(handle, "+", c)], tp.site_of[(handle, "-", c)])
                for c in ("B", "C")
            ]

        def exchange_pairs(h1, h2):
            out = []
            for foot in ("+", "-"):
                for c in ("B", "C"):
                    out.append(
                        (tp.site_of[(h1, foot, c)], tp.site_of[(h2, foot, c)])
                    )
            return out

    else:
        model = page.model

        def foot_zone(handle, foot):
            t = model.tubes[handle]
            site = t.a if foot == "+" else t.b
            s = model.sites[site]
            step = _clearance(page, s.sheet, s.x)
            return s.sheet, s.x - step, s.x + step

        def invert_pairs(handle):
            t = model.tubes[handle]
            return [(t.a, t.b)]

        def exchange_pairs(h1, h2):
            t1, t2 = model.tubes[h1], model.tubes[h2]
            return [(t1.a, t2.a), (t1.b, t2.b)]

    if isinstance(letter, TwistFoot):
        sheet, w, e = foot_zone(letter.handle, letter.foot)
        _twist_zone(draw, sheet, w, e, letter.sign, keys)
    elif isinstance(letter, SlideFoot):
        sheet, w, e = foot_zone(letter.handle, letter.foot)
        _slide_zone(draw, sheet, w, e, letter.arc, letter.sign, keys)
    elif isinstance(letter, InvertHandle):
        _teleport_sites(draw, invert_pairs(letter.handle), keys)
    elif isinstance(letter, ExchangeHandles):
        _teleport_sites(draw, exchange_pairs(letter.a, letter.b), keys)
    else:
        raise DiagramError(f"unknown letter {letter!r}")


def apply_elementary(letter, page: PageDiagram) -> PageDiagram:
    """Image of a page diagram under one elementary handle map."""
    check_word((letter,), page)
    draw = Draw(page.model, page.deltas)
    keys = [(c.family, c.name) for c in page.deltas]
    apply_letter(draw, letter, keys, page=page)
    deltas = tuple(draw.curves[k] for k in keys)
    return replace(page, deltas=deltas)


# -- the trace construction ---------------------------------------------------------


@dataclass(frozen=True)
class TraceResult:
    tripled: TripledPage
    q_curves: tuple[Curve, ...]  # indexed by handle order
    sigma: dict  # handle -> handle, end copy i meets start copy sigma(i)


def _band(draw: Draw, tp: TripledPage, handle: str, hi: str, lo: str, name: str):
    """Straight band through the ``hi`` and ``lo`` copies of a handle."""
    pb = draw.path("gamma", name)
    tube_hop(draw, pb, tp.site_of[(handle, "+", hi)])
    tube_hop(draw, pb, tp.site_of[(handle, "-", lo)])
    return pb.done()


def _traversal_blocks(curve: Curve, mouths: set[str]) -> list[tuple[int, int]]:
    """Index ranges [i, j] of ports realizing traversals of the given tube.

    A traversal starts at a port on one mouth circle and ends at the first
    following mouth port (rail winds in between belong to the block).
    """
    n = len(curve.ports)
    blocks = []
    i = 0
    while i < n:
        p = curve.ports[i]
        if p.edge[0] in ("ctop", "cbot") and p.edge[1] in mouths:
            j = i + 1
            while j < i + n:
                q = curve.ports[j % n]
                if q.edge[0] in ("ctop", "cbot"):
                    break
                j += 1
            blocks.append((i, j % n))
            i = j + 1 if j % n > i else n
        else:
            i += 1
    return blocks


def _splice(draw: Draw, state_key, band_key, mouths: set[str]) -> None:
    """Cancel the middle copy: reroute the state curve along the band.

    Both curves traverse the middle tube exactly once; the state curve's
    passage is replaced by the band's complement path, taking over the band's
    ports.
    """
    state = draw.curves[state_key]
    band = draw.curves[band_key]
    sblocks = _traversal_blocks(state, mouths)
    bblocks = _traversal_blocks(band, mouths)
    if len(sblocks) != 1 or len(bblocks) != 1:
        raise DiagramError(
            f"middle copy met {len(sblocks)}/{len(bblocks)} times; expected once"
        )
    si, sj = sblocks[0]
    bi, bj = bblocks[0]
    n_b = len(band.ports)

    # complement of the band's traversal, from just after its exit back to
    # just before its entry
    comp = [band.ports[(bj + 1 + t) % n_b] for t in range((bi - bj - 1) % n_b)]

    s_in = state.ports[si]
    b_in = band.ports[bi]
    same_side = s_in.edge[1] == b_in.edge[1]
    if same_side:
        # both enter through the same mouth: walk the band backwards
        rev = []
        for t in range(len(comp) - 1, -1, -1):
            p = comp[t]
            prev = comp[t - 1] if t > 0 else band.ports[bj]
            rev.append(Port(p.edge, p.slot, prev.face))
        comp = rev

    n_s = len(state.ports)
    ports = []
    i = (sj + 1) % n_s
    while i != si:
        ports.append(state.ports[i])
        i = (i + 1) % n_s
    # state enters at si; insert the complement so faces match at the seams
    ports.extend(comp)
    new_state = replace(state, ports=tuple(ports))

    draw.remove(state_key)
    draw.remove(band_key)
    draw.add(new_state)


def trace_spheres(word, page: PageDiagram) -> TraceResult:
    """Attaching circles of the cancelling 2-handles for a monodromy word.

    Peels the word from the first-applied letter: each round the next letter
    acts on the whole drawing, a fresh twisted band is added per handle, the
    two systems are made disjoint by finger moves, and the middle copies are
    cancelled by splicing.
    """
    report = validate_page_diagram(page)
    if not report:
        raise DiagramError(f"invalid page: {report.failures}")
    check_word(word, page)
    tp = tripled_page(page)
    draw = Draw(tp.model)

    state_keys = []
    for h in page.handles:
        c = _band(draw, tp, h, "C", "A", f"q-{h}")
        state_keys.append((c.family, c.name))

    for round_idx, letter in enumerate(reversed(list(word))):
        # reslot: the accumulated start copies become middle copies
        for h in page.handles:
            mouths = {
                tp.site_of[(h, f, "A")]: tp.site_of[(h, f, "B")]
                for f in ("+", "-")
            }
            _retarget_mouths(draw, state_keys, mouths, tp)
        # fresh bands join the middle copies to new start copies
        band_keys = []
        for h in page.handles:
            c = _band(draw, tp, h, "B", "A", f"p{round_idx}-{h}")
            band_keys.append((c.family, c.name))
        # the letter acts on everything drawn
        apply_letter(draw, letter, state_keys + band_keys, tp=tp)
        # remove crossings between and among the systems, moving the bands
        finger_clean(draw, band_keys, band_keys + state_keys)
        # cancel middle copies
        for h in page.handles:
            mouths = {tp.site_of[(h, f, "B")] for f in ("+", "-")}
            state_key = _unique_traverser(draw, state_keys, mouths)
            band_key = _unique_traverser(draw, band_keys, mouths)
            _splice(draw, state_key, band_key, mouths)
        state_keys = [k for k in state_keys if k in draw.curves]

    # postconditions and the permutation
    sigma = {}
    q_by_handle = {}
    for h in page.handles:
        cm = {tp.site_of[(h, f, "C")] for f in ("+", "-")}
        key = _unique_traverser(draw, state_keys, cm)
        q = draw.curves[key]
        q_by_handle[h] = q
        starts = set()
        for h2 in page.handles:
            am = {tp.site_of[(h2, f, "A")] for f in ("+", "-")}
            blocks = _traversal_blocks(q, am)
            if len(blocks) == 1:
                starts.add(h2)
            elif blocks:
                raise DiagramError("trace curve meets a start copy repeatedly")
        if len(starts) != 1:
            raise DiagramError("trace curve must meet exactly one start copy")
        sigma[h] = starts.pop()
    if sorted(sigma.values()) != sorted(page.handles):
        raise DiagramError("trace pairing is not a permutation")
    qs = tuple(q_by_handle[h] for h in page.handles)
    for q in qs:
        if face_crossings(draw.model, [q]):
            raise DiagramError(f"trace curve {q.name} is not embedded")
    if face_crossings(draw.model, list(qs)):
        raise DiagramError("trace curves intersect")
    return TraceResult(tp, qs, sigma)


def _retarget_mouths(draw: Draw, keys, site_map: dict, tp: TripledPage):
    """Move every mouth port of the given curves to the mapped sites."""
    if not site_map:
        return
    model = draw.model
    tube_map = {}
    for s_old, s_new in site_map.items():
        tube_map[model.tube_of_site(s_old)] = model.tube_of_site(s_new)
    for key in list(keys):
        curve = draw.curves[key]
        changed = False
        ports = []
        for p in curve.ports:
            kind = p.edge[0]
            if kind in ("ctop", "cbot") and p.edge[1] in site_map:
                face = p.face
                if face[0] in ("TN", "TS"):
                    face = (face[0], tube_map[model.tube_of_site(p.edge[1])])
                ports.append(Port((kind, site_map[p.edge[1]]), p.slot, face))
                changed = True
            elif kind.startswith("rail") and p.edge[1] in tube_map:
                tid = tube_map[p.edge[1]]
                ports.append(Port((kind, tid), p.slot, (p.face[0], tid)))
                changed = True
            else:
                ports.append(p)
        if changed:
            draw.remove(key)
            cand = replace(curve, ports=tuple(ports))
            # fresh slots if occupied
            fixed = []
            for p in cand.ports:
                lst = draw._used.get(p.edge, [])
                slot = p.slot
                while slot in lst or any(
                    q.edge == p.edge and q.slot == slot for q in fixed
                ):
                    slot += Fraction(1, 991)
                fixed.append(Port(p.edge, slot, p.face))
            draw.add(replace(cand, ports=tuple(fixed)))
            uncross_self(draw, key)


def _unique_traverser(draw: Draw, keys, mouths: set[str]):
    hits = []
    for key in keys:
        if key not in draw.curves:
            continue
        if _traversal_blocks(draw.curves[key], mouths):
            hits.append(key)
    if len(hits) != 1:
        raise DiagramError(
            f"expected exactly one curve through {sorted(mouths)}, got {hits}"
        )
    return hits[0]


# -- derived words -----------------------------------------------------------------


def torus_twist_word(
    page: PageDiagram, binding_sheet: str, power: int
) -> tuple:
    """Word of foot slides realizing a twist along a boundary-parallel torus.

    Every compression-handle foot on the genus-one binding sphere slides once
    around the near mouth of its genus tube, repeated ``|power|`` times.
    """
    model = page.model
    gts = [
        t
        for t in page.genus_tubes
        if model.sites[model.tubes[t].a].sheet == binding_sheet
    ]
    if len(gts) != 1:
        raise DiagramError(
            f"binding sphere {binding_sheet} does not carry exactly one genus tube"
        )
    g = model.tubes[gts[0]]
    ga = model.sites[g.a]
    feet = []
    for h in page.handles:
        t = model.tubes[h]
        for foot, site in (("+", t.a), ("-", t.b)):
            if model.sites[site].sheet == binding_sheet:
                feet.append((h, foot))
    letters = []
    sgn = 1 if power >= 0 else -1
    arc = (
        (ga.x - Fraction(1, 3), False),
        (ga.x + Fraction(1, 3), True),
    )
    for _ in range(abs(power)):
        for h, foot in feet:
            letters.append(SlideFoot(h, foot, arc, sgn))
    return tuple(letters)


def sphere_twist_word(page: PageDiagram, binding_sheet: str, power: int = 1):
    """Twist along a sphere binding component: rotate every attached foot."""
    model = page.model
    for t in page.genus_tubes:
        if model.sites[model.tubes[t].a].sheet == binding_sheet:
            raise DiagramError(f"{binding_sheet} is not a sphere component")
    letters = []
    sgn = 1 if power >= 0 else -1
    for _ in range(abs(power)):
        for h in page.handles:
            t = model.tubes[h]
            for foot, site in (("+", t.a), ("-", t.b)):
                if model.sites[site].sheet == binding_sheet:
                    letters.append(TwistFoot(h, foot, sgn))
    return tuple(letters)


def slide_homeomorphism_word(
    page: PageDiagram, binding_sheet: str, through_handle: str | None
):
    """Slide of a sphere binding component along an arc through a handle.

    All other feet attached to the sphere slide once around the chosen
    handle's mouth; a null arc gives the empty word.
    """
    if through_handle is None:
        return ()
    model = page.model
    t = model.tubes[through_handle]
    anchor = None
    for site in (t.a, t.b):
        if model.sites[site].sheet == binding_sheet:
            anchor = model.sites[site]
            break
    if anchor is None:
        raise DiagramError("handle is not attached to that sphere")
    arc = (
        (anchor.x - Fraction(1, 3), False),
        (anchor.x + Fraction(1, 3), True),
    )
    letters = []
    for h in page.handles:
        if h == through_handle:
            continue
        tt = model.tubes[h]
        for foot, site in (("+", tt.a), ("-", tt.b)):
            if model.sites[site].sheet == binding_sheet:
                letters.append(SlideFoot(h, foot, arc, 1))
    return tuple(letters)
