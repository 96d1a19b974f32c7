"""Curve drawing and rewriting on a :class:`~obtri.surfaces.SurfaceModel`.

The :class:`Draw` context owns the live set of curves on one fixed model and
hands out fresh port slots so strands never collide.  On top of the raw path
builder it implements the rewrite engine behind the handle-map actions:
parallel offsets, Dehn twists along embedded circles (a simultaneous spiral
construction that keeps disjoint families disjoint), and finger moves that
push crossings of one curve system past the tube mouths of another.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction

from .combmap import DiagramError
from .surfaces import (
    Crossing,
    Curve,
    Port,
    SurfaceModel,
    face_crossings,
    validate_curves,
)


class Draw:
    """Mutable drawing state: one model, named curves, slot bookkeeping."""

    def __init__(self, model: SurfaceModel, curves=()):
        self.model = model
        self.curves: dict[tuple[str, str], Curve] = {}
        self._used: dict[tuple, list[Fraction]] = {}
        # sentinels: spine slots at site positions stay free of ports, so
        # offsets never drift across a mouth
        for sid, site in model.sites.items():
            self._register(("spine", site.sheet), site.x)
        for c in curves:
            self.add(c)

    # -- slot bookkeeping ---------------------------------------------------

    def _register(self, edge: tuple, slot: Fraction):
        lst = self._used.setdefault(edge, [])
        i = bisect_left(lst, slot)
        if i < len(lst) and lst[i] == slot:
            raise DiagramError(f"slot {slot} on {edge} already used")
        lst.insert(i, slot)

    def _release(self, edge: tuple, slot: Fraction):
        lst = self._used[edge]
        i = bisect_left(lst, slot)
        if i >= len(lst) or lst[i] != slot:
            raise DiagramError(f"slot {slot} on {edge} not registered")
        del lst[i]

    def fresh_beside(self, edge: tuple, v: Fraction, direction: int) -> Fraction:
        """Fresh slot strictly between ``v`` and its nearest used neighbor."""
        lst = self._used.get(edge, [])
        if direction > 0:
            i = bisect_right(lst, v)
            hi = lst[i] if i < len(lst) else v + 1
            slot = (v + hi) / 2
        else:
            i = bisect_left(lst, v)
            lo = lst[i - 1] if i > 0 else v - 1
            slot = (v + lo) / 2
        self._register(edge, slot)
        return slot

    def fresh_between(self, edge: tuple, lo: Fraction, hi: Fraction) -> Fraction:
        """Deterministic fresh slot in the open interval ``(lo, hi)``."""
        if not lo < hi:
            raise DiagramError("empty slot interval")
        x = (lo + hi) / 2
        lst = self._used.get(edge, [])
        while True:
            i = bisect_left(lst, x)
            if i == len(lst) or lst[i] != x:
                break
            x = (lo + x) / 2
        self._register(edge, x)
        return x

    def snapshot(self):
        return (
            dict(self.curves),
            {e: list(v) for e, v in self._used.items()},
        )

    def restore(self, snap):
        self.curves = dict(snap[0])
        self._used = {e: list(v) for e, v in snap[1].items()}

    # -- curve management ----------------------------------------------------

    def add(self, curve: Curve) -> Curve:
        key = (curve.family, curve.name)
        if key in self.curves:
            raise DiagramError(f"curve {key} already present")
        validate_curves(self.model, [curve])
        for p in curve.ports:
            self._register(p.edge, p.slot)
        self.curves[key] = curve
        return curve

    def remove(self, key: tuple[str, str]) -> Curve:
        curve = self.curves.pop(key)
        for p in curve.ports:
            self._release(p.edge, p.slot)
        return curve

    def replace(self, curve: Curve) -> Curve:
        self.remove((curve.family, curve.name))
        return self.add(curve)

    def all_curves(self) -> list[Curve]:
        return [self.curves[k] for k in sorted(self.curves)]

    def family(self, family: str) -> list[Curve]:
        return [c for k, c in sorted(self.curves.items()) if c.family == family]

    def path(self, family: str, name: str) -> "PathBuilder":
        return PathBuilder(self, family, name)


class PathBuilder:
    """Accumulates ports for one closed curve; slots register immediately."""

    def __init__(self, draw: Draw, family: str, name: str):
        self.draw = draw
        self.family = family
        self.name = name
        self.ports: list[Port] = []

    def cross(self, edge: tuple, slot: Fraction, face: tuple) -> "PathBuilder":
        self.draw._register(edge, slot)
        self.ports.append(Port(edge, slot, face))
        return self

    def cross_beside(self, edge, v, direction, face) -> "PathBuilder":
        slot = self.draw.fresh_beside(edge, v, direction)
        self.ports.append(Port(edge, slot, face))
        return self

    def cross_between(self, edge, lo, hi, face) -> "PathBuilder":
        slot = self.draw.fresh_between(edge, lo, hi)
        self.ports.append(Port(edge, slot, face))
        return self

    def extend(self, ports) -> "PathBuilder":
        for p in ports:
            self.cross(p.edge, p.slot, p.face)
        return self

    def done(self) -> Curve:
        curve = Curve(self.family, self.name, tuple(self.ports))
        for p in self.ports:
            self.draw._release(p.edge, p.slot)
        return self.draw.add(curve)


# -- standard shapes ------------------------------------------------------------


def circle_between(
    draw: Draw,
    family: str,
    name: str,
    sheet: str,
    west: tuple[Fraction, int],
    east: tuple[Fraction, int],
) -> Curve:
    """Closed curve crossing the spine twice, encircling the sites between.

    ``west``/``east`` are ``(anchor, direction)`` pairs; the spine slots are
    allocated fresh beside the anchors, which controls nesting against curves
    already circling the same sites.
    """
    e = ("spine", sheet)
    xw = draw.fresh_beside(e, west[0], west[1])
    xe = draw.fresh_beside(e, east[0], east[1])
    if not xw < xe:
        raise DiagramError("collapsed circle")
    curve = Curve(
        family,
        name,
        (Port(e, xe, ("L", sheet)), Port(e, xw, ("U", sheet))),
    )
    draw._release(e, xw)
    draw._release(e, xe)
    return draw.add(curve)


def tube_hop(
    draw: Draw,
    pb: PathBuilder,
    enter_site: str,
    enter_top: bool = True,
    exit_top: bool = True,
    winds: int | None = None,
    enter_anchor: tuple[Fraction, int] | None = None,
    exit_anchor: tuple[Fraction, int] | None = None,
) -> PathBuilder:
    """Append a tube traversal entering the mouth at ``enter_site``.

    The strand crosses the mouth circle, winds inside the tube (the tube's
    framing unless overridden), and exits through the other mouth.  Anchors
    ``(slot, direction)`` control parallel placement on the mouth circles.
    """
    model = draw.model
    tid = model.tube_of_site(enter_site)
    tube = model.tubes[tid]
    out_site = model.other_end(tid, enter_site)
    if winds is None:
        winds = tube.framing
    # mouth gluing reverses orientation: successive parallel strands enter at
    # ascending slots and must exit at descending ones
    if enter_anchor is None:
        enter_anchor = (Fraction(1, 2), 1)
    if exit_anchor is None:
        exit_anchor = (Fraction(1, 2), -1)
    side = "TN" if enter_top else "TS"
    in_edge = ("ctop" if enter_top else "cbot", enter_site)
    pb.cross_beside(in_edge, enter_anchor[0], enter_anchor[1], (side, tid))
    flips = 2 * abs(winds) + (0 if enter_top == exit_top else 1)
    for k in range(flips):
        if winds >= 0:
            rail = "rail1" if side == "TN" else "rail0"
        else:
            rail = "rail0" if side == "TN" else "rail1"
        side = "TS" if side == "TN" else "TN"
        pb.cross_beside((rail, tid), Fraction(1, 2), 1, (side, tid))
    out_edge = ("ctop" if exit_top else "cbot", out_site)
    sheet_face = ("U" if exit_top else "L", model.sites[out_site].sheet)
    pb.cross_beside(out_edge, exit_anchor[0], exit_anchor[1], sheet_face)
    return pb


# -- parallel offsets ------------------------------------------------------------


def offset_side_sign(model: SurfaceModel, port: Port, side: str) -> int:
    """Slot direction putting a fresh port on the strand's left or right."""
    left, right = model.faces_of_edge(port.edge)
    sign = 1 if port.face == right else -1
    return sign if side == "L" else -sign


def offset_port(draw: Draw, port: Port, side: str) -> Port:
    sign = offset_side_sign(draw.model, port, side)
    slot = draw.fresh_beside(port.edge, port.slot, sign)
    return Port(port.edge, slot, port.face)


def parallel_cycle(
    draw: Draw, base: Curve, side: str, family: str, name: str
) -> Curve:
    """Disjoint parallel copy of a closed curve, on one side of it."""
    ports = tuple(offset_port(draw, p, side) for p in base.ports)
    for p in ports:
        draw._release(p.edge, p.slot)
    return draw.add(Curve(family, name, ports))


# -- Dehn twists -------------------------------------------------------------------


def dehn_twist(
    draw: Draw,
    along: Curve,
    handed: int,
    keys: list[tuple[str, str]] | None = None,
) -> None:
    """Twist the drawn curves along the auxiliary circle ``along``.

    Rerouting follows the cut-and-reglue picture: every strand hitting the
    circle is replaced by a helix that winds once around a collar of the
    circle, entering at the outermost level and drifting one level inward at
    each other strand's entry point.  All helices are parallel, so images of
    disjoint curves stay disjoint, whatever the crossing signs.  ``handed``
    picks the winding direction.
    """
    if handed not in (1, -1):
        raise DiagramError("handedness must be +1 or -1")
    model = draw.model
    targets = keys if keys is not None else sorted(draw.curves)
    curve_list = [draw.curves[k] for k in targets]
    all_curves = [along] + curve_list
    crossings = [
        cr
        for cr in face_crossings(model, all_curves)
        if (cr.a.curve == 0) != (cr.b.curve == 0)
    ]
    if not crossings:
        return
    n_c = len(along.ports)
    R = len(crossings)
    # one fixed collar side; handedness only flips the winding direction
    lap_side = "R"

    # cyclic position of each crossing along the twisting circle
    def circle_pos(cr: Crossing) -> tuple:
        k, t = (cr.a, cr.ta) if cr.a.curve == 0 else (cr.b, cr.tb)
        return (k.idx + t, cr.a, cr.b)

    # ranks follow the winding direction
    order = sorted(
        range(R),
        key=lambda i: circle_pos(crossings[i]),
        reverse=handed < 0,
    )
    rank_of = {xi: r for r, xi in enumerate(order)}
    positions = [circle_pos(crossings[xi])[0] for xi in order]

    def sector(port_idx: int) -> int:
        """Rank of the last crossing (in winding order) before this port."""
        p = Fraction(port_idx)
        best = R - 1
        for r in range(R):
            if (positions[r] < p) if handed > 0 else (positions[r] > p):
                best = r
        return best

    def depth(r: int, j: int) -> int:
        """Helix of rank r sits this far from the circle in sector j.

        A helix enters outermost (depth R) in its own sector and moves one
        level inward per entry point passed, reaching depth 1 before exiting.
        """
        return R - ((j - r) % R)

    # depth slots beside every circle port, on the lap side; depth 1 nearest
    slot_of: dict[tuple[int, int], Fraction] = {}
    for i, p in enumerate(along.ports):
        sgn = offset_side_sign(model, p, lap_side)
        for d in range(1, R + 1):
            anchor = p.slot if d == 1 else slot_of[(i, d - 1)]
            slot_of[(i, d)] = draw.fresh_beside(p.edge, anchor, sgn)

    by_chord: dict[tuple[int, int], list[int]] = {}
    for xi, cr in enumerate(crossings):
        g = cr.a if cr.a.curve != 0 else cr.b
        by_chord.setdefault((g.curve, g.idx), []).append(xi)
    for key, lst in by_chord.items():
        lst.sort(
            key=lambda xi: (
                crossings[xi].ta
                if crossings[xi].a.curve != 0
                else crossings[xi].tb
            )
        )

    def lap_ports(xi: int) -> list[Port]:
        cr = crossings[xi]
        r = rank_of[xi]
        k = cr.a if cr.a.curve == 0 else cr.b
        s = cr.sign if cr.a.curve == 0 else -cr.sign
        # sign=+1: target starts on the circle's right, the collar side, so
        # it traverses its helix from the deep end.
        forward = s > 0
        if handed > 0:
            seq = [(k.idx + 1 + t) % n_c for t in range(n_c)]
        else:
            seq = [(k.idx - t) % n_c for t in range(n_c)]
        out = []
        for i in seq:
            p = along.ports[i]
            d = depth(r, sector(i))
            out.append(Port(p.edge, slot_of[(i, d)], p.face))
        plus = handed > 0
        if not forward:
            out.reverse()
            plus = not plus
        if not plus:
            # traversal runs against the circle: faces are the reverse-walk
            fixed = []
            for q, i in zip(out, (seq if forward else list(reversed(seq)))):
                fixed.append(Port(q.edge, q.slot, along.ports[i - 1].face))
            out = fixed
        return out

    new_curves = []
    for ci, curve in enumerate(curve_list, start=1):
        ports: list[Port] = []
        for pi in range(len(curve.ports)):
            ports.append(curve.ports[pi])
            for xi in by_chord.get((ci, pi), []):
                ports.extend(lap_ports(xi))
        new_curves.append(Curve(curve.family, curve.name, tuple(ports)))

    for (i, d), slot in slot_of.items():
        draw._release(along.ports[i].edge, slot)
    for curve in new_curves:
        draw.replace(curve)


# -- self-crossing repair ----------------------------------------------------------


def _port_anchor(model: SurfaceModel, port: Port) -> Fraction:
    """Rough position of a port along its face, for placing detours."""
    kind = port.edge[0]
    if kind == "spine":
        return port.slot
    if kind in ("ctop", "cbot"):
        return model.sites[port.edge[1]].x
    return Fraction(1, 2)


def _detour_candidates(draw: Draw, curve: Curve, idx: int):
    """Reroutes of chord ``idx`` through the opposite face."""
    model = draw.model
    n = len(curve.ports)
    p = curve.ports[idx]
    q = curve.ports[(idx + 1) % n]
    face = p.face
    out = []
    if face[0] in ("U", "L"):
        sheet = face[1]
        e = ("spine", sheet)
        other = ("L", sheet) if face[0] == "U" else ("U", sheet)
        xa, xb = _port_anchor(model, p), _port_anchor(model, q)
        for da in (1, -1):
            for db in (1, -1):
                out.append(
                    lambda da=da, db=db: [
                        Port(e, draw.fresh_beside(e, xa, da), other),
                        Port(e, draw.fresh_beside(e, xb, db), face),
                    ]
                )
    elif face[0] in ("TN", "TS"):
        tid = face[1]
        other = ("TS", tid) if face[0] == "TN" else ("TN", tid)
        for r1 in ("rail0", "rail1"):
            for r2 in ("rail0", "rail1"):
                out.append(
                    lambda r1=r1, r2=r2: [
                        Port(
                            (r1, tid),
                            draw.fresh_between(
                                (r1, tid), Fraction(0), Fraction(1)
                            ),
                            other,
                        ),
                        Port(
                            (r2, tid),
                            draw.fresh_between(
                                (r2, tid), Fraction(0), Fraction(1)
                            ),
                            face,
                        ),
                    ]
                )
    return out


def uncross_self(draw: Draw, key, max_rounds: int = 40) -> int:
    """Remove self-crossings of a curve by detours through opposite faces.

    Needed after mouth rewiring, whose straight reconnections may be forced
    across each other in one face.  Each repair must strictly decrease the
    self-crossing count.
    """
    moves = 0
    while moves <= max_rounds:
        curve = draw.curves[key]
        selfx = face_crossings(draw.model, [curve])
        if not selfx:
            return moves
        before = len(selfx)
        cr = selfx[0]
        done = False
        for chord in (cr.a, cr.b):
            for make in _detour_candidates(draw, curve, chord.idx):
                snap = draw.snapshot()
                try:
                    detour = make()
                    ports = []
                    for i in range(len(curve.ports)):
                        ports.append(curve.ports[i])
                        if i == chord.idx:
                            ports.extend(detour)
                    cand = Curve(curve.family, curve.name, tuple(ports))
                    for dp in detour:
                        draw._release(dp.edge, dp.slot)
                    draw.replace(cand)
                    after = len(face_crossings(draw.model, [cand]))
                except DiagramError:
                    draw.restore(snap)
                    continue
                if after < before:
                    done = True
                    break
                draw.restore(snap)
            if done:
                break
        if not done:
            raise DiagramError(f"cannot repair self-crossings of {key}")
        moves += 1
    raise DiagramError(f"self-crossing repair of {key} did not terminate")


# -- finger moves -----------------------------------------------------------------


def crossings_between_keys(draw: Draw, key1, key2) -> int:
    return len(face_crossings(draw.model, [draw.curves[key1], draw.curves[key2]]))


def finger_clean(
    draw: Draw,
    moving_keys: list[tuple[str, str]],
    static_keys: list[tuple[str, str]],
    max_moves: int = 200,
) -> int:
    """Remove crossings between two systems by sliding past tube mouths.

    Repeatedly picks the crossing nearest (along its static curve) to a tube
    mouth and pushes the moving strand along the static curve, around that
    mouth.  Candidate reroutes are validated: a move must strictly decrease
    the number of crossings with the static system and keep the moving curve
    embedded.  Returns the number of moves performed.
    """
    moves = 0
    while moves <= max_moves:
        job = _next_finger(draw, moving_keys, static_keys)
        if job is None:
            return moves
        _finger_once(draw, *job)
        moves += 1
    raise DiagramError("finger cleanup did not terminate")


def _tube_entries(curve: Curve) -> list[int]:
    return [i for i, p in enumerate(curve.ports) if p.edge[0] in ("ctop", "cbot")]


def _next_finger(draw, moving_keys, static_keys):
    best = None
    for skey in static_keys:
        static = draw.curves[skey]
        entries = _tube_entries(static)
        if not entries:
            continue
        n = len(static.ports)
        for mkey in moving_keys:
            if mkey == skey:
                continue
            moving = draw.curves[mkey]
            for cr in face_crossings(draw.model, [moving, static]):
                if cr.a.curve == cr.b.curve:
                    continue  # self-crossing, not a pair crossing
                g = cr.a if cr.a.curve == 0 else cr.b
                k = cr.a if cr.a.curve == 1 else cr.b
                tk = cr.ta if cr.a.curve == 1 else cr.tb
                steps = 0
                i = k.idx
                while (i + 1) % n not in entries:
                    steps += 1
                    i = (i + 1) % n
                    if steps > n:
                        raise DiagramError("static curve never enters a tube")
                cand = ((steps, -tk), mkey, skey, g.idx, k.idx)
                if best is None or cand[0] < best[0] or (
                    cand[0] == best[0] and cand[1:] < best[1:]
                ):
                    best = cand
    if best is None:
        return None
    return best[1:]


def _static_cross_count(draw, mkey, static_keys) -> int:
    total = 0
    for skey in static_keys:
        if skey == mkey:
            continue
        total += crossings_between_keys(draw, mkey, skey)
    return total


def _finger_once(draw: Draw, mkey, skey, gidx, kidx):
    """Push the crossing of moving chord ``gidx`` with static chord ``kidx``
    along the static curve and around the next tube mouth it enters."""
    model = draw.model
    static = draw.curves[skey]
    n = len(static.ports)
    entries = _tube_entries(static)
    seq = []
    i = kidx
    while True:
        i = (i + 1) % n
        seq.append(i)
        if i in entries:
            break
    entry = static.ports[seq[-1]]
    site = entry.edge[1]
    sheet = model.sites[site].sheet
    x = model.sites[site].x
    top_entry = entry.edge[0] == "ctop"
    before = _all_static_crossings(draw, mkey, [skey])
    statics_all = [k for k in draw.curves if k != mkey]

    best = None
    for leg_side in ("L", "R"):
        for west_first in (True, False):
            snap = draw.snapshot()
            try:
                cand = _build_finger(
                    draw, mkey, skey, gidx, seq, leg_side, west_first,
                    sheet, x, top_entry,
                )
                self_x = len(face_crossings(model, [cand]))
                with_static = _all_static_crossings(draw, mkey, [skey])
                score = (self_x, with_static, leg_side, not west_first)
            except DiagramError:
                draw.restore(snap)
                continue
            if self_x == 0 and with_static < before:
                if best is None or score < best[0]:
                    best = (score, leg_side, west_first)
            draw.restore(snap)
    if best is None:
        raise DiagramError(
            f"no admissible finger move for {mkey} across {skey}"
        )
    _, leg_side, west_first = best
    _build_finger(
        draw, mkey, skey, gidx, seq, leg_side, west_first, sheet, x, top_entry
    )


def _all_static_crossings(draw, mkey, skeys) -> int:
    moving = draw.curves[mkey]
    total = 0
    for skey in skeys:
        total += len(face_crossings(draw.model, [moving, draw.curves[skey]]))
    return total


def _build_finger(
    draw, mkey, skey, gidx, seq, leg_side, west_first, sheet, x, top_entry
):
    model = draw.model
    moving = draw.curves[mkey]
    static = draw.curves[skey]
    out_idx = seq[:-1]
    out_leg = [offset_port(draw, static.ports[i], leg_side) for i in out_idx]
    opp = "R" if leg_side == "L" else "L"
    back_raw = [offset_port(draw, static.ports[i], opp) for i in reversed(out_idx)]
    back_leg = []
    for p, i in zip(back_raw, list(reversed(out_idx))):
        back_leg.append(Port(p.edge, p.slot, static.ports[i - 1].face))

    e = ("spine", sheet)
    near = ("U", sheet) if top_entry else ("L", sheet)
    far = ("L", sheet) if top_entry else ("U", sheet)
    if west_first:
        w = draw.fresh_beside(e, x, -1)
        eE = draw.fresh_beside(e, x, +1)
        wrap = [Port(e, w, far), Port(e, eE, near)]
    else:
        eE = draw.fresh_beside(e, x, +1)
        w = draw.fresh_beside(e, x, -1)
        wrap = [Port(e, eE, far), Port(e, w, near)]

    insert = out_leg + wrap + back_leg
    ports = []
    for pi in range(len(moving.ports)):
        ports.append(moving.ports[pi])
        if pi == gidx:
            ports.extend(insert)
    cand = Curve(moving.family, moving.name, tuple(ports))
    for p in insert:
        draw._release(p.edge, p.slot)
    draw.replace(cand)
    return cand
