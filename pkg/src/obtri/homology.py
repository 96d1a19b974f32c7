"""First homology of drawn surfaces and of the 4-manifolds they present.

Two independent routes are implemented.

* The pairing route dralws an explicit basis of the first homology of a
  closed surface from its tube structure (belt circles of tubes off a
  spanning tree of the sheet graph, paired with cycles through them) and
  expresses curve classes through exact intersection numbers against that
  basis.  The basis intersection matrix is unimodular by construction, so
  coordinates are integral.

* The chain route works on the compiled rotation-system map: the cellular
  chain complex of the diagram gives the kernel-mod-boundaries presentation
  directly, with curves as explicit edge cycles.

Both routes feed the same quotient computation (Smith normal form); tests
require them to agree on every catalog diagram.
"""
from __future__ import annotations

from fractions import Fraction

from .combmap import CombinatorialSurface, DiagramError
from .drawing import Draw, circle_between, tube_hop
from .snf import abelian_quotient, kernel_basis, solve_in_lattice
from .surfaces import Curve, SurfaceModel, algebraic_intersection


def _sheet_tree(model: SurfaceModel) -> tuple[dict[str, str], list[str]]:
    """Spanning forest of the sheet graph: tree tubes and the leftovers."""
    parent = {}
    tree: list[str] = []
    rest: list[str] = []
    reps = {s: s for s in model.sheets}

    def find(x):
        while reps[x] != x:
            reps[x] = reps[reps[x]]
            x = reps[x]
        return x

    for tid in sorted(model.tubes):
        t = model.tubes[tid]
        ra, rb = find(model.sites[t.a].sheet), find(model.sites[t.b].sheet)
        if ra == rb:
            rest.append(tid)
        else:
            reps[ra] = rb
            tree.append(tid)
    return {t: None for t in tree}, rest


def _tree_route(model: SurfaceModel, tree: list[str], src: str, dst: str):
    """Tube hops leading from sheet ``src`` to sheet ``dst`` inside the tree."""
    adj: dict[str, list[tuple[str, str]]] = {s: [] for s in model.sheets}
    for tid in tree:
        t = model.tubes[tid]
        sa, sb = model.sites[t.a].sheet, model.sites[t.b].sheet
        adj[sa].append((tid, t.a))
        adj[sb].append((tid, t.b))
    prev: dict[str, tuple[str, str] | None] = {src: None}
    queue = [src]
    while queue:
        s = queue.pop(0)
        if s == dst:
            break
        for tid, enter_site in sorted(adj[s]):
            other = model.sites[model.other_end(tid, enter_site)].sheet
            if other not in prev:
                prev[other] = (tid, enter_site)
                queue.append(other)
    if dst not in prev:
        raise DiagramError("sheets not connected in the spanning tree")
    route = []
    s = dst
    while prev[s] is not None:
        tid, enter_site = prev[s]
        route.append((tid, enter_site))
        s = model.sites[enter_site].sheet
    route.reverse()
    return route


def homology_basis(model: SurfaceModel, draw: Draw) -> list[Curve]:
    """Draw a homology basis of a connected closed surface into ``draw``.

    For each tube off a spanning tree of the sheet graph (in tube order): the
    belt circle of the tube and a cycle through the tube closed up through
    the tree.  The pairing matrix of the result is unimodular.
    """
    if model.holes():
        raise DiagramError("pairing basis needs a closed surface")
    if len(model.component_sheets()) != 1:
        raise DiagramError("pairing basis needs a connected surface")
    tree_map, rest = _sheet_tree(model)
    tree = list(tree_map)
    basis: list[Curve] = []
    for tid in rest:
        t = model.tubes[tid]
        site = min(t.a, t.b)
        x = model.sites[site].x
        mu = circle_between(
            draw, "aux", f"basis-mu-{tid}", model.sites[site].sheet,
            (x, -1), (x, 1),
        )
        basis.append(mu)
        pb = draw.path("aux", f"basis-lam-{tid}")
        tube_hop(draw, pb, t.a)
        back = _tree_route(
            model, tree, model.sites[t.b].sheet, model.sites[t.a].sheet
        )
        for hop_tid, enter_site in back:
            tube_hop(draw, pb, enter_site)
        basis.append(pb.done())
    return basis


def pairing_matrix(model: SurfaceModel, basis: list[Curve]) -> list[list[int]]:
    n = len(basis)
    J = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = algebraic_intersection(model, basis[i], basis[j])
            J[i][j] = v
            J[j][i] = -v
    return J


def _solve_unimodular(J: list[list[int]], v: list[int]) -> list[int]:
    """Integer solution of ``J^T x = v`` via exact fraction elimination."""
    n = len(J)
    A = [[Fraction(J[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    # A is J^T augmented with v
    row = 0
    cols = []
    for col in range(n):
        piv = None
        for r in range(row, n):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        pv = A[row][col]
        A[row] = [x / pv for x in A[row]]
        for r in range(n):
            if r != row and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        cols.append(col)
        row += 1
    x = [Fraction(0)] * n
    for r, col in enumerate(cols):
        x[col] = A[r][n]
    for r in range(row, n):
        if A[r][n]:
            raise DiagramError("class outside basis span")
    out = []
    for xi in x:
        if xi.denominator != 1:
            raise DiagramError("pairing basis not unimodular")
        out.append(int(xi))
    return out


class PairingBasis:
    """Homology coordinates on a closed connected surface via intersections."""

    def __init__(self, model: SurfaceModel, existing_curves):
        self.model = model
        draw = Draw(model, existing_curves)
        self.basis = homology_basis(model, draw)
        self.J = pairing_matrix(model, self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def class_of(self, curve: Curve) -> list[int]:
        v = [algebraic_intersection(self.model, curve, b) for b in self.basis]
        return _solve_unimodular(self.J, v)


def presentation_matrix(
    model: SurfaceModel, curves: list[Curve], context_curves=None
) -> list[list[int]]:
    """Columns = classes of the curves in the stable tube-structure basis."""
    pb = PairingBasis(model, list(context_curves or curves))
    cols = [pb.class_of(c) for c in curves]
    return [[col[i] for col in cols] for i in range(pb.rank)]


def quotient_by_curves(
    model: SurfaceModel, curves: list[Curve]
) -> tuple[int, list[int]]:
    """Structure of H1 of the surface modulo the given curve classes."""
    pb = PairingBasis(model, list(curves))
    cols = [pb.class_of(c) for c in curves]
    return abelian_quotient(pb.rank, cols)


# -- chain-complex route -------------------------------------------------------


def chain_quotient(
    surf: CombinatorialSurface, curve_keys=None
) -> tuple[int, list[int]]:
    """H1 of the compiled surface modulo the named drawn curves.

    Generators are the edges of the map, relations the interior face
    boundaries; the curves enter as explicit edge cycles.  Independent of the
    intersection pairing route.
    """
    n_e = surf.num_edges
    n_v = surf.num_vertices
    d1 = [[0] * n_e for _ in range(n_v)]
    for e in range(n_e):
        d1[surf.vertex_of_dart[2 * e + 1]][e] += 1
        d1[surf.vertex_of_dart[2 * e]][e] -= 1
    kernel = kernel_basis(d1)

    gens: list[list[int]] = []
    for fi, walk in enumerate(surf.faces()):
        if fi in surf.boundary_faces:
            continue
        vec = [0] * n_e
        for d in walk:
            vec[d // 2] += 1 if d % 2 == 0 else -1
        gens.append(vec)

    cycles = surf.curve_edge_cycles()
    for key in sorted(curve_keys if curve_keys is not None else cycles):
        vec = [0] * n_e
        for d in cycles[key]:
            vec[d // 2] += 1 if d % 2 == 0 else -1
        gens.append(vec)

    cols = [solve_in_lattice(kernel, g) for g in gens]
    return abelian_quotient(len(kernel), cols)


def chain_h1_of_surface(surf: CombinatorialSurface) -> tuple[int, list[int]]:
    """H1 of the bare compiled surface (no curves killed)."""
    n_e = surf.num_edges
    n_v = surf.num_vertices
    d1 = [[0] * n_e for _ in range(n_v)]
    for e in range(n_e):
        d1[surf.vertex_of_dart[2 * e + 1]][e] += 1
        d1[surf.vertex_of_dart[2 * e]][e] -= 1
    kernel = kernel_basis(d1)
    gens = []
    for fi, walk in enumerate(surf.faces()):
        if fi in surf.boundary_faces:
            continue
        vec = [0] * n_e
        for d in walk:
            vec[d // 2] += 1 if d % 2 == 0 else -1
        gens.append(vec)
    cols = [solve_in_lattice(kernel, g) for g in gens]
    return abelian_quotient(len(kernel), cols)
