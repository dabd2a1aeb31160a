"""Exact state-vector simulator of the quantum double Hamiltonian with boundary.

The state lives on a small planar patch of a square lattice: one tensor axis
per edge, bulk edges carrying the group algebra and wall edges carrying the
algebra of the boundary subgroup.  Vertex, face and boundary operators act as
local permutations, masks and cocycle phases on those axes; ribbon operators
are built from elementary triangle actions and provide the independent
numeric route to the boundary algebra character.

Geometry conventions.  Vertices sit at integer points (i, j); bulk horizontal
edges point right, vertical edges point up, and wall edges (the j = 0 row of a
boundary patch) point left.  Face (i, j) is the unit square with lower-left
corner (i, j); its cycle is traversed counterclockwise.  A site is a pair
(vertex, face) with the vertex on the face's corner, or (vertex, None) for a
wall site whose face is the outer region.  Every ribbon move consumes the
counterclockwise-last edge of the current site's cycle: a "v" move walks it to
the neighbouring vertex, an "f" move crosses it into the neighbouring face,
and a leading "w" move on a wall site crosses the site's solid wall edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cocycles import TwoCocycle, normalize, trivial_cocycle
from .errors import (
    DimensionCap,
    GroupMismatch,
    InvalidRibbon,
    NotInSubgroup,
    SubgroupMismatch,
    ZeroProjection,
)
from .groups import GroupTable, Subgroup, cosets
from .quantum_double import DGClassFunction

AMPLITUDE_CAP = 2**22
GROUND_RETRIES = 8


@dataclass(frozen=True)
class Edge:
    tail: tuple[int, int]
    head: tuple[int, int]
    wall: bool = False
    mark: str | None = None  # "solid" / "dotted" on wall edges


@dataclass(frozen=True, eq=False)
class LatticePatch:
    group: GroupTable
    boundary: Subgroup | None
    cocycle: TwoCocycle | None
    edges: tuple[Edge, ...]
    dims: tuple[int, ...]
    faces: tuple[tuple[int, int], ...]
    ham_vertices: tuple[tuple[int, int], ...]
    ham_wall_vertices: tuple[tuple[int, int], ...]
    _axis: dict = field(repr=False)
    _star: dict = field(repr=False)
    _cache: dict = field(repr=False, default_factory=dict)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    def axis(self, tail, head) -> int:
        return self._axis[(tuple(tail), tuple(head))]

    def star(self, v) -> list[tuple[int, int]]:
        """Incident edges as (axis, +1 out of v / -1 into v)."""
        return self._star[tuple(v)]


@dataclass(eq=False)
class LatticeState:
    patch: LatticePatch
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "LatticeState":
        return LatticeState(self.patch, self.amplitudes.copy())


def inner(a: LatticeState, b: LatticeState) -> complex:
    if a.patch is not b.patch:
        raise GroupMismatch("states live on different patches")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def _assemble(g, boundary, cocycle, edges) -> LatticePatch:
    if boundary is not None:
        if boundary.parent is not g:
            raise SubgroupMismatch("boundary subgroup must live in the bulk group")
        if cocycle is None:
            cocycle = trivial_cocycle(boundary)
        if not np.array_equal(cocycle.subgroup.members, boundary.members):
            raise SubgroupMismatch("cocycle is not defined on the boundary subgroup")
        # The boundary operators assume the gauge with phi(k, k^-1) = 1 and
        # phi(k^-1, l^-1) = phi(l, k)^-1; boundary observables only depend on
        # the cocycle class, so swap in the equivalent normalized table.
        cocycle = normalize(cocycle)[0]
    dims = tuple(boundary.order if e.wall else g.order for e in edges)
    size = 1
    for d in dims:
        size *= d
        if size > AMPLITUDE_CAP:
            raise DimensionCap(f"state would need {size} > {AMPLITUDE_CAP} amplitudes")
    axis = {(e.tail, e.head): i for i, e in enumerate(edges)}
    star: dict = {}
    for i, e in enumerate(edges):
        star.setdefault(e.tail, []).append((i, 1))
        star.setdefault(e.head, []).append((i, -1))
    corners = lambda i, j: [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
    vertices = set(star)
    faces = []
    lo_i = min(v[0] for v in vertices)
    hi_i = max(v[0] for v in vertices)
    lo_j = min(v[1] for v in vertices)
    hi_j = max(v[1] for v in vertices)
    for i in range(lo_i, hi_i):
        for j in range(lo_j, hi_j):
            cs = corners(i, j)
            if all(
                ((cs[t], cs[(t + 1) % 4]) in axis or (cs[(t + 1) % 4], cs[t]) in axis)
                for t in range(4)
            ):
                faces.append((i, j))
    ham_vertices = tuple(v for v in sorted(vertices) if len(star[v]) == 4)
    wall_vs = []
    if boundary is not None:
        for v in sorted(vertices):
            incident = [edges[a] for a, _ in star[v]]
            if sum(e.wall for e in incident) == 2 and len(incident) == 3:
                wall_vs.append(v)
    return LatticePatch(
        g,
        boundary,
        cocycle,
        tuple(edges),
        dims,
        tuple(faces),
        ham_vertices,
        tuple(wall_vs),
        axis,
        star,
    )


def build_patch(
    g: GroupTable,
    width: int,
    height: int,
    boundary: Subgroup | None = None,
    cocycle: TwoCocycle | None = None,
) -> LatticePatch:
    """Rectangular patch with width x height vertices.

    With a boundary the bottom row is the wall: those horizontal edges carry
    the subgroup algebra, point left, and alternate solid/dotted marks (edge
    (i,0)-(i+1,0) is solid for odd i, so a wall vertex at odd i has its solid
    edge on the right).  Only complete stars and plaquettes become Hamiltonian
    terms; rim edges are left unconstrained."""
    if width < 2 or height < 2:
        raise DimensionCap("patch needs at least 2x2 vertices")
    edges = []
    for j in range(height):
        for i in range(width - 1):
            if boundary is not None and j == 0:
                mark = "solid" if i % 2 == 1 else "dotted"
                edges.append(Edge((i + 1, 0), (i, 0), wall=True, mark=mark))
            else:
                edges.append(Edge((i, j), (i + 1, j)))
    for j in range(height - 1):
        for i in range(width):
            edges.append(Edge((i, j), (i, j + 1)))
    return _assemble(g, boundary, cocycle, edges)


def minimal_boundary_patch(
    g: GroupTable, boundary: Subgroup, cocycle: TwoCocycle | None = None
) -> LatticePatch:
    """Seven-edge patch: the smallest geometry whose Hamiltonian contains a
    complete wall site, a complete interior star and a complete plaquette.

    The wall site sits at (1,0) (dotted edge left, solid edge right), the
    interior site at vertex (1,1) with face (1,0); the canonical ribbon between
    them is make_ribbon(patch, ((1,0), None), "wv")."""
    edges = [
        Edge((1, 0), (0, 0), wall=True, mark="dotted"),
        Edge((2, 0), (1, 0), wall=True, mark="solid"),
        Edge((1, 0), (1, 1)),
        Edge((2, 0), (2, 1)),
        Edge((1, 1), (2, 1)),
        Edge((0, 1), (1, 1)),
        Edge((1, 1), (1, 2)),
    ]
    return _assemble(g, boundary, cocycle, edges)


def random_state(patch: LatticePatch, rng: np.random.Generator) -> LatticeState:
    amps = rng.standard_normal(patch.dims) + 1j * rng.standard_normal(patch.dims)
    amps /= np.linalg.norm(amps)
    return LatticeState(patch, amps)


# --- local operators ---------------------------------------------------------


def _axis_take(amps: np.ndarray, axis: int, source: np.ndarray) -> np.ndarray:
    return np.take(amps, source, axis=axis)


def _axis_scale(amps: np.ndarray, axis: int, vec: np.ndarray) -> np.ndarray:
    shape = [1] * amps.ndim
    shape[axis] = len(vec)
    return amps * vec.reshape(shape)


def _face_cycle(patch: LatticePatch, face, base) -> list[tuple[int, int]]:
    """Edges of the face as (axis, +-1 traversal sign), counterclockwise from base."""
    i, j = face
    cs = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
    if tuple(base) not in cs:
        raise InvalidRibbon(f"vertex {base} is not a corner of face {face}")
    k = cs.index(tuple(base))
    cs = cs[k:] + cs[:k]
    out = []
    for t in range(4):
        a, b = cs[t], cs[(t + 1) % 4]
        if (a, b) in patch._axis:
            out.append((patch._axis[(a, b)], 1))
        else:
            out.append((patch._axis[(b, a)], -1))
    return out


def _edge_values(patch: LatticePatch, axis: int) -> np.ndarray:
    """Axis values as bulk group elements (wall axes map through the subgroup)."""
    if patch.edges[axis].wall:
        return patch.boundary.members
    return np.arange(patch.group.order)


def _holonomy_mask(patch: LatticePatch, face, base, h: int) -> np.ndarray:
    key = ("holonomy", tuple(face), tuple(base))
    cache = patch._cache
    if key not in cache:
        g = patch.group
        cycle = _face_cycle(patch, face, base)
        acc = None
        for axis, sign in cycle:
            vals = _edge_values(patch, axis)
            vals = vals if sign == 1 else g.inv[vals]
            acc = vals if acc is None else g.mul[acc[..., None], vals]
        cache[key] = acc
    hol = cache[key]
    return hol == h


def apply_face(patch: LatticePatch, state: LatticeState, site, h: int) -> LatticeState:
    """B_s^h: keep configurations whose face holonomy, based at the site's
    vertex, equals h."""
    base, face = site
    cycle = _face_cycle(patch, face, base)
    axes = [a for a, _ in cycle]
    mask = _holonomy_mask(patch, face, base, int(h))
    moved = np.moveaxis(state.amplitudes.copy(), axes, range(4))
    moved *= mask.reshape(mask.shape + (1,) * (moved.ndim - 4))
    return LatticeState(patch, np.moveaxis(moved, range(4), axes))


def face_projector(patch: LatticePatch, state: LatticeState, face) -> LatticeState:
    base = (face[0], face[1])
    return apply_face(patch, state, (base, face), patch.group.identity)


def apply_vertex(patch: LatticePatch, state: LatticeState, v, g: int) -> LatticeState:
    """A_v^g: left-multiply outgoing edges, right-divide incoming ones.

    Only bulk vertices; wall vertices use apply_wall_vertex."""
    gt = patch.group
    g = int(g)
    amps = state.amplitudes
    for axis, sign in patch.star(v):
        if patch.edges[axis].wall:
            raise NotInSubgroup("use apply_wall_vertex at wall vertices")
        idx = np.arange(gt.order)
        if sign == 1:
            source = gt.mul[gt.inv[g], idx]  # new[z] = old[g^-1 z]
        else:
            source = gt.mul[idx, g]  # new[z] = old[z g]
        amps = _axis_take(amps, axis, source)
    return LatticeState(patch, amps)


def vertex_projector(patch: LatticePatch, state: LatticeState, v) -> LatticeState:
    acc = np.zeros_like(state.amplitudes)
    for g in range(patch.group.order):
        acc += apply_vertex(patch, state, v, g).amplitudes
    return LatticeState(patch, acc / patch.group.order)


def _wall_star(patch: LatticePatch, v):
    solid = dotted = internal = None
    for axis, sign in patch.star(v):
        e = patch.edges[axis]
        if e.mark == "solid":
            solid = (axis, sign)
        elif e.mark == "dotted":
            dotted = (axis, sign)
        else:
            internal = (axis, sign)
    if solid is None or dotted is None or internal is None:
        raise InvalidRibbon(f"vertex {v} is not a complete wall site")
    return solid, dotted, internal


def apply_wall_vertex(patch: LatticePatch, state: LatticeState, v, k: int) -> LatticeState:
    """Boundary vertex operator: the subgroup action on all three edges with
    the cocycle phase attached positively on the solid edge and negatively on
    the dotted one (incoming edges read their value inverted)."""
    kg = patch.boundary.as_group
    phi = patch.cocycle.table
    k = int(k)
    solid, dotted, internal = _wall_star(patch, v)
    amps = state.amplitudes
    for (axis, sign), positive in ((solid, True), (dotted, False)):
        idx = np.arange(kg.order)
        if sign == 1:
            source = kg.mul[kg.inv[k], idx]
            vals = source  # pre-action value of slot z is k^-1 z
        else:
            source = kg.mul[idx, k]
            vals = kg.inv[source]  # incoming edges act through the reversal rule
        phase = phi[k, vals]
        amps = _axis_scale(_axis_take(amps, axis, source), axis, phase if positive else 1 / phase)
    axis, sign = internal
    gt = patch.group
    gk = int(patch.boundary.members[k])
    idx = np.arange(gt.order)
    source = gt.mul[gt.inv[gk], idx] if sign == 1 else gt.mul[idx, gk]
    amps = _axis_take(amps, axis, source)
    return LatticeState(patch, amps)


def wall_vertex_projector(patch: LatticePatch, state: LatticeState, v) -> LatticeState:
    acc = np.zeros_like(state.amplitudes)
    for k in range(patch.boundary.order):
        acc += apply_wall_vertex(patch, state, v, k).amplitudes
    return LatticeState(patch, acc / patch.boundary.order)


def apply_wall_face(patch: LatticePatch, state: LatticeState, v, k: int) -> LatticeState:
    """B_s^k at a wall site: keep configurations whose solid edge reads k."""
    (axis, _), _, _ = _wall_star(patch, v)
    mask = np.zeros(patch.boundary.order)
    mask[int(k)] = 1.0
    return LatticeState(patch, _axis_scale(state.amplitudes, axis, mask))


def local_ops(patch: LatticePatch) -> dict:
    """Named operator handles; wall entries exist only on boundary patches."""
    ops = {
        "vertex": apply_vertex,
        "face": apply_face,
        "vertex_projector": vertex_projector,
        "face_projector": face_projector,
    }
    if patch.boundary is not None:
        ops["wall_vertex"] = apply_wall_vertex
        ops["wall_vertex_projector"] = wall_vertex_projector
        ops["wall_face"] = apply_wall_face
    return ops


def hamiltonian_terms(patch: LatticePatch):
    """Commuting projectors of the truncated Hamiltonian, as callables."""
    terms = []
    for v in patch.ham_vertices:
        terms.append(("vertex", v, lambda s, v=v: vertex_projector(patch, s, v)))
    for f in patch.faces:
        terms.append(("face", f, lambda s, f=f: face_projector(patch, s, f)))
    for v in patch.ham_wall_vertices:
        terms.append(("wall", v, lambda s, v=v: wall_vertex_projector(patch, s, v)))
    return terms


def _project_pass(patch: LatticePatch, rng, terms) -> LatticeState:
    for _ in range(GROUND_RETRIES):
        state = random_state(patch, rng)
        for proj in terms:
            state = proj(state)
        n = state.norm()
        if n > 1e-12:
            state.amplitudes /= n
            return state
    raise ZeroProjection("random state projected to numerical zero repeatedly")


def ground_state(patch: LatticePatch, seed: int = 0) -> LatticeState:
    """One pass of the commuting projectors over a seeded random state."""
    rng = np.random.default_rng(seed)
    return _project_pass(patch, rng, [t[2] for t in hamiltonian_terms(patch)])


def disk_state(patch: LatticePatch, seed: int = 0) -> LatticeState:
    """Reference state projected by every face and every vertex, rim included.

    Partial rim stars still carry a group action, so their averages are valid
    commuting projectors even though the truncated Hamiltonian omits them.
    The extra constraints pin the state of a bulk patch down to the unique
    closed-string superposition, which makes this the right state for
    deformation (path independence) and seed-independence checks."""
    projs = [lambda s, f=f: face_projector(patch, s, f) for f in patch.faces]
    wall_set = set(patch.ham_wall_vertices)
    for v in sorted(patch._star):
        incident = [patch.edges[a] for a, _ in patch.star(v)]
        if v in wall_set:
            projs.append(lambda s, v=v: wall_vertex_projector(patch, s, v))
        elif not any(e.wall for e in incident):
            projs.append(lambda s, v=v: vertex_projector(patch, s, v))
    return _project_pass(patch, np.random.default_rng(seed), projs)


# --- ribbons -------------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    kind: str  # "direct" | "dual" | "wall"
    axis: int
    sign: int  # direct: +1 walk along edge direction; dual: +1 edge leaves the vertex


@dataclass(frozen=True)
class RibbonSpec:
    sites: tuple  # visited (vertex, face-or-None) pairs, length = len(triangles)+1
    triangles: tuple[Triangle, ...]

    @property
    def start(self):
        return self.sites[0]

    @property
    def end(self):
        return self.sites[-1]


def _other_face(patch: LatticePatch, axis: int, face) -> tuple[int, int] | None:
    e = patch.edges[axis]
    (x1, y1), (x2, y2) = e.tail, e.head
    if y1 == y2:  # horizontal edge: faces above and below
        i = min(x1, x2)
        options = [(i, y1), (i, y1 - 1)]
    else:  # vertical edge: faces right and left
        j = min(y1, y2)
        options = [(x1, j), (x1 - 1, j)]
    options = [f for f in options if f != tuple(face)]
    return options[0] if options and options[0] in patch.faces else None


def make_ribbon(patch: LatticePatch, start, moves: str) -> RibbonSpec:
    """Build a ribbon from a site and a move string ("w" wall crossing, "v"
    vertex walk, "f" face crossing).  Each move consumes the
    counterclockwise-last edge of the current site; edges are never reused."""
    v, f = tuple(start[0]), start[1]
    sites = [(v, f)]
    triangles: list[Triangle] = []
    used: set[int] = set()
    for pos, mv in enumerate(moves):
        if mv == "w":
            if pos != 0 or f is not None:
                raise InvalidRibbon("wall crossing is only allowed as the first move")
            solid, _, _ = _wall_star(patch, v)
            axis, sign = solid
            if sign != -1:
                raise InvalidRibbon("the site's solid edge must point into the wall vertex")
            new_f = _other_face(patch, axis, (None, None))
            if new_f is None:
                raise InvalidRibbon("no face above the solid edge")
            triangles.append(Triangle("wall", axis, -1))
            f = new_f
        elif mv in ("v", "f"):
            if f is None:
                raise InvalidRibbon("ribbon at a wall site must start with 'w'")
            axis, trav = _face_cycle(patch, f, v)[-1]
            if mv == "v":
                e = patch.edges[axis]
                v2 = e.head if e.tail == v else e.tail
                triangles.append(Triangle("direct", axis, 1 if e.tail == v else -1))
                v = v2
            else:
                new_f = _other_face(patch, axis, f)
                if new_f is None:
                    raise InvalidRibbon(f"no face across edge {axis} from {f}")
                e = patch.edges[axis]
                triangles.append(Triangle("dual", axis, 1 if e.tail == v else -1))
                f = new_f
        else:
            raise InvalidRibbon(f"unknown move {mv!r}")
        if axis in used:
            raise InvalidRibbon("ribbon would reuse an edge")
        used.add(axis)
        sites.append((v, f))
    if len(triangles) < 2:
        raise InvalidRibbon("ribbon needs at least two triangles")
    if sites[0] == sites[-1]:
        raise InvalidRibbon("ribbon endpoints must differ")
    return RibbonSpec(tuple(sites), tuple(triangles))


def apply_ribbon(
    patch: LatticePatch, spec: RibbonSpec, state: LatticeState, h: int, g: int
) -> LatticeState:
    """Ribbon operator with flux h and charge label g.

    Walks the triangles keeping per-prefix buckets: direct triangles split the
    state by the walked edge value (accumulating the prefix product u), dual
    triangles multiply the crossed edge at the vertex end by the conjugated
    flux, and the wall triangle right-divides the solid edge by h with its
    cocycle phase.  The final bucket u = g is the result."""
    gt = patch.group
    h, g = int(h), int(g)
    wall_start = spec.triangles[0].kind == "wall"
    if wall_start:
        if patch.boundary is None:
            raise InvalidRibbon("wall ribbon on a patch without boundary")
        kk = int(patch.boundary.position[h])
        if kk < 0:
            raise NotInSubgroup(f"flux {h} is outside the boundary subgroup")
    buckets = {gt.identity: state.amplitudes}
    for tri in spec.triangles:
        if tri.kind == "direct":
            vals = _edge_values(patch, tri.axis)
            vals = vals if tri.sign == 1 else gt.inv[vals]
            new: dict[int, np.ndarray] = {}
            for u, amps in buckets.items():
                moved = np.moveaxis(amps, tri.axis, 0)
                for z in range(patch.dims[tri.axis]):
                    nu = int(gt.mul[u, vals[z]])
                    if nu not in new:
                        new[nu] = np.zeros_like(amps)
                    np.moveaxis(new[nu], tri.axis, 0)[z] = moved[z]
            buckets = new
        elif tri.kind == "dual":
            idx = np.arange(gt.order)
            for u, amps in buckets.items():
                m = int(gt.mul[gt.mul[gt.inv[u], h], u])
                if tri.sign == 1:
                    source = gt.mul[gt.inv[m], idx]  # new[z] = old[m^-1 z]
                else:
                    source = gt.mul[idx, m]  # new[z] = old[z m]
                buckets[u] = _axis_take(amps, tri.axis, source)
        else:  # wall crossing: solid edge x -> x k^-1 with phase
            kg = patch.boundary.as_group
            idx = np.arange(kg.order)
            source = kg.mul[idx, kk]  # new[y] = old[y k]
            phase = patch.cocycle.table[idx, kk]
            for u, amps in buckets.items():
                buckets[u] = _axis_scale(_axis_take(amps, tri.axis, source), tri.axis, phase)
    result = buckets.get(g)
    if result is None:
        result = np.zeros_like(state.amplitudes)
    return LatticeState(patch, result)


def apply_invariant_op(
    patch: LatticePatch, spec: RibbonSpec, state: LatticeState, k: int, g: int
) -> LatticeState:
    """Boundary-invariant ribbon combination for k in the wall subgroup:
    the phased sum over conjugations sum_l phi(l,k) phi(lk,l^-1) F^{lkl^-1, l g^-1}."""
    if spec.triangles[0].kind != "wall":
        raise InvalidRibbon("invariant operators need a ribbon starting at the wall")
    sub = patch.boundary
    kg = sub.as_group
    kk = int(sub.position[int(k)])
    if kk < 0:
        raise NotInSubgroup(f"label {k} is outside the boundary subgroup")
    gt = patch.group
    phi = patch.cocycle.table
    acc = np.zeros_like(state.amplitudes)
    g_inv = gt.inv[int(g)]
    for l in range(sub.order):
        phase = phi[l, kk] * phi[kg.mul[l, kk], kg.inv[l]]
        lg = int(sub.members[l])
        flux = int(gt.mul[gt.mul[lg, sub.members[kk]], gt.inv[lg]])
        charge = int(gt.mul[lg, g_inv])
        acc += phase * apply_ribbon(patch, spec, state, flux, charge).amplitudes
    return LatticeState(patch, acc)


def lattice_boundary_character(
    patch: LatticePatch, spec: RibbonSpec, seed: int = 0
) -> DGClassFunction:
    """Boundary algebra character extracted numerically from the lattice.

    Applies the invariant ribbon operators to the ground state to span the
    excitation space, then reads off chi(g h*) by acting with the end-site
    vertex and face operators on that basis.  The result is directly
    comparable to the algebraic boundary character."""
    if patch.boundary is None:
        raise SubgroupMismatch("character extraction needs a boundary patch")
    v1, f1 = spec.end
    if v1 not in patch.ham_vertices or f1 not in patch.faces:
        raise InvalidRibbon("ribbon must end at a complete interior site")
    gt = patch.group
    sub = patch.boundary
    reps = cosets(gt, sub)
    r = len(reps)
    psi = ground_state(patch, seed=seed)
    basis = [
        apply_invariant_op(patch, spec, psi, int(sub.members[k]), int(gi))
        for k in range(sub.order)
        for gi in reps
    ]
    values = np.zeros((gt.order, gt.order), dtype=np.complex128)
    for h in range(gt.order):
        masked = [apply_face(patch, b, (v1, f1), h) for b in basis]
        for g in range(gt.order):
            total = 0.0 + 0.0j
            for b, mb in zip(basis, masked):
                total += inner(b, apply_vertex(patch, mb, v1, g))
            values[g, h] = r * total
    return DGClassFunction(gt, values)


# --- relation suite -----------------------------------------------------------------

def _dist(a: LatticeState, b: LatticeState, scale: complex = 1.0) -> float:
    return float(np.linalg.norm(a.amplitudes - scale * b.amplitudes))


def _draw(rng, n: int) -> int:
    return int(rng.integers(n))


def bulk_relation_report(g: GroupTable, states: int = 16, seed: int = 0):
    """Residuals of the bulk operator identities, [(name, residual), ...].

    Each identity is probed on `states` seeded random states with labels
    redrawn per state; the reported residual is the max over probes.  Vacuum
    and Gram statements are evaluated once on the smooth disk state with a
    full label sweep.  The patch is 4x3 when the amplitude cap allows,
    otherwise 3x2; only the larger patch admits two ribbons with shared
    endpoints, so the deformation check is emitted only there."""
    rng = np.random.default_rng(seed)
    wide = g.order ** 17 <= AMPLITUDE_CAP
    patch = build_patch(g, 4, 3) if wide else build_patch(g, 3, 2)
    n = g.order
    mul, inv = g.mul, g.inv
    site = ((1, 0), (1, 0))
    corners = [(2, 0), (2, 1), (1, 1)]
    if wide:
        rib = make_ribbon(patch, ((3, 1), (2, 1)), "vfv")
        alt = make_ribbon(patch, ((3, 1), (2, 1)), "fvvfvvf")
        mid_vertices = [(3, 0), (2, 0), (1, 0)]
        mid_faces = [(2, 0), (1, 0)]
    else:
        rib = make_ribbon(patch, ((1, 0), (1, 0)), "fv")
        alt = None
        mid_vertices = []
        mid_faces = []
    s0v, s0 = rib.start[0], rib.start
    s1v, s1 = rib.end[0], rib.end

    def frib(st, h, gg, spec=rib):
        return apply_ribbon(patch, spec, st, h, gg)

    checks = []

    def probe(name, fn, *dims):
        err = 0.0
        for _ in range(states):
            psi = random_state(patch, rng)
            labels = [_draw(rng, d) for d in dims]
            err = max(err, fn(psi, *labels))
        checks.append((name, err))

    probe(
        "A_v^g A_v^h = A_v^{gh}",
        lambda psi, a, b: _dist(
            apply_vertex(patch, apply_vertex(patch, psi, (1, 1), b), (1, 1), a),
            apply_vertex(patch, psi, (1, 1), int(mul[a, b])),
        ),
        n, n,
    )
    probe(
        "(A_v^g)^+ = A_v^{g^-1}",
        lambda psi, a: abs(
            inner(psi, apply_vertex(patch, psi, (1, 1), a))
            - inner(apply_vertex(patch, psi, (1, 1), int(inv[a])), psi)
        ),
        n,
    )
    probe(
        "B_s^h B_s^h' = delta B_s^h",
        lambda psi, a, b: _dist(
            apply_face(patch, apply_face(patch, psi, site, b), site, a),
            apply_face(patch, psi, site, a),
            scale=1.0 if a == b else 0.0,
        ),
        n, n,
    )
    probe(
        "sum_h B_s^h = 1",
        lambda psi: float(np.linalg.norm(
            sum(apply_face(patch, psi, site, h).amplitudes for h in range(n))
            - psi.amplitudes
        )),
    )
    probe(
        "A_v^g B_s^h = B_s^{ghg^-1} A_v^g (base corner)",
        lambda psi, a, b: _dist(
            apply_vertex(patch, apply_face(patch, psi, site, b), (1, 0), a),
            apply_face(patch, apply_vertex(patch, psi, (1, 0), a), site,
                       int(mul[mul[a, b], inv[a]])),
        ),
        n, n,
    )
    probe(
        "[A_w^g, B_s^h] = 0 (other corners)",
        lambda psi, w, a, b: _dist(
            apply_vertex(patch, apply_face(patch, psi, site, b), corners[w], a),
            apply_face(patch, apply_vertex(patch, psi, corners[w], a), site, b),
        ),
        len(corners), n, n,
    )
    probe(
        "[A_v, A_w] = 0 (adjacent vertices)",
        lambda psi, a, b: _dist(
            apply_vertex(patch, apply_vertex(patch, psi, (1, 0), b), (1, 1), a),
            apply_vertex(patch, apply_vertex(patch, psi, (1, 1), a), (1, 0), b),
        ),
        n, n,
    )
    probe(
        "F^{h,g} F^{h',g'} = delta_{g,g'} F^{hh',g}",
        lambda psi, h, gg, h2, g2: _dist(
            frib(frib(psi, h2, g2), h, gg),
            frib(psi, int(mul[h, h2]), gg),
            scale=1.0 if gg == g2 else 0.0,
        ),
        n, n, n, n,
    )
    probe(
        "(F^{h,g})^+ = F^{h^-1,g}",
        lambda psi, h, gg: abs(
            inner(psi, frib(psi, h, gg)) - inner(frib(psi, int(inv[h]), gg), psi)
        ),
        n, n,
    )
    probe(
        "sum_g F^{e,g} = 1",
        lambda psi: float(np.linalg.norm(
            sum(frib(psi, 0, gg).amplitudes for gg in range(n)) - psi.amplitudes
        )),
    )
    probe(
        "A_{s0}^k F^{h,g} = F^{khk^-1,kg} A_{s0}^k",
        lambda psi, k, h, gg: _dist(
            apply_vertex(patch, frib(psi, h, gg), s0v, k),
            frib(apply_vertex(patch, psi, s0v, k),
                 int(mul[mul[k, h], inv[k]]), int(mul[k, gg])),
        ),
        n, n, n,
    )
    probe(
        "B_{s0}^k F^{h,g} = F^{h,g} B_{s0}^{kh}",
        lambda psi, k, h, gg: _dist(
            apply_face(patch, frib(psi, h, gg), s0, k),
            frib(apply_face(patch, psi, s0, int(mul[k, h])), h, gg),
        ),
        n, n, n,
    )
    probe(
        "A_{s1}^k F^{h,g} = F^{h,gk^-1} A_{s1}^k",
        lambda psi, k, h, gg: _dist(
            apply_vertex(patch, frib(psi, h, gg), s1v, k),
            frib(apply_vertex(patch, psi, s1v, k), h, int(mul[gg, inv[k]])),
        ),
        n, n, n,
    )
    probe(
        "B_{s1}^k F^{h,g} = F^{h,g} B_{s1}^{g^-1h^-1gk}",
        lambda psi, k, h, gg: _dist(
            apply_face(patch, frib(psi, h, gg), s1, k),
            frib(apply_face(patch, psi, s1,
                            int(mul[mul[inv[gg], inv[h]], mul[gg, k]])), h, gg),
        ),
        n, n, n,
    )
    if alt is not None:
        probe(
            "[F, A_t^k] = 0 at intermediate vertices",
            lambda psi, w, k, h, gg: _dist(
                apply_vertex(patch, frib(psi, h, gg, alt), mid_vertices[w], k),
                frib(apply_vertex(patch, psi, mid_vertices[w], k), h, gg, alt),
            ),
            len(mid_vertices), n, n, n,
        )
        probe(
            "[F, B_t^e] = 0 at crossed faces",
            lambda psi, w, h, gg: _dist(
                face_projector(patch, frib(psi, h, gg, alt), mid_faces[w]),
                frib(face_projector(patch, psi, mid_faces[w]), h, gg, alt),
            ),
            len(mid_faces), n, n,
        )

    disk = disk_state(patch, seed=seed)
    if alt is not None:
        err = max(
            _dist(frib(disk, h, gg), frib(disk, h, gg, alt))
            for h in range(n) for gg in range(n)
        )
        checks.append(("ribbon deformation on the disk state", err))
    err = max(
        abs(inner(disk, frib(disk, h, gg)) - (1.0 if h == 0 else 0.0) / n)
        for h in range(n) for gg in range(n)
    )
    checks.append(("<F^{h,g}> = delta_{h,e}/|G| on the disk state", err))
    exc = {(h, gg): frib(disk, h, gg) for h in range(n) for gg in range(n)}
    err = max(
        abs(inner(a, b) - (1.0 if ka == kb else 0.0) / n)
        for ka, a in exc.items() for kb, b in exc.items()
    )
    checks.append(("<psi^{h,g}|psi^{h',g'}> = delta delta / |G|", err))
    return checks


def wall_relation_report(
    g: GroupTable,
    boundary: Subgroup,
    cocycle: TwoCocycle | None = None,
    states: int = 16,
    seed: int = 0,
):
    """Residuals of the boundary operator identities on the snowflake patch.

    Same probing scheme as the bulk report; the cocycle-phased identities use
    the patch's normalized table, and the Gram and vacuum statements run once
    on the ground state with a full label sweep."""
    rng = np.random.default_rng(seed)
    patch = minimal_boundary_patch(g, boundary, cocycle)
    rib = make_ribbon(patch, ((1, 0), None), "wv")
    sub = patch.boundary
    kg = sub.as_group
    mem = sub.members
    phit = patch.cocycle.table
    nk, n = sub.order, g.order
    mul, inv = g.mul, g.inv
    v0, v1, f1 = (1, 0), (1, 1), (1, 0)
    reps = [int(r) for r in cosets(g, sub)]

    def ft(st, k, gg):
        return apply_ribbon(patch, rib, st, int(mem[k]), gg)

    def tt(st, k, gg):
        return apply_invariant_op(patch, rib, st, int(mem[k]), gg)

    checks = []

    def probe(name, fn, *dims):
        err = 0.0
        for _ in range(states):
            psi = random_state(patch, rng)
            labels = [_draw(rng, d) for d in dims]
            err = max(err, fn(psi, *labels))
        checks.append((name, err))

    probe(
        "wall A^k A^l = A^{kl}",
        lambda psi, a, b: _dist(
            apply_wall_vertex(patch, apply_wall_vertex(patch, psi, v0, b), v0, a),
            apply_wall_vertex(patch, psi, v0, int(kg.mul[a, b])),
        ),
        nk, nk,
    )
    probe(
        "wall (A^k)^+ = A^{k^-1}",
        lambda psi, a: abs(
            inner(psi, apply_wall_vertex(patch, psi, v0, a))
            - inner(apply_wall_vertex(patch, psi, v0, int(kg.inv[a])), psi)
        ),
        nk,
    )
    probe(
        "wall B^l A^k = A^k B^{lk}",
        lambda psi, a, b: _dist(
            apply_wall_face(patch, apply_wall_vertex(patch, psi, v0, a), v0, b),
            apply_wall_vertex(patch,
                              apply_wall_face(patch, psi, v0, int(kg.mul[b, a])),
                              v0, a),
        ),
        nk, nk,
    )
    terms = hamiltonian_terms(patch)
    probe(
        "hamiltonian projectors commute",
        lambda psi, i, j: _dist(
            terms[i][2](terms[j][2](psi)), terms[j][2](terms[i][2](psi))
        ),
        len(terms), len(terms),
    )
    probe(
        "wall A^l F~^{k,g} = phi(l,k)phi(lk,l^-1) F~^{lkl^-1,lg} A^l",
        lambda psi, l, k, gg: _dist(
            apply_wall_vertex(patch, ft(psi, k, gg), v0, l),
            ft(apply_wall_vertex(patch, psi, v0, l),
               int(kg.mul[kg.mul[l, k], kg.inv[l]]),
               int(mul[mem[l], gg])),
            scale=phit[l, k] * phit[kg.mul[l, k], kg.inv[l]],
        ),
        nk, nk, n,
    )
    probe(
        "wall B^m F~^{k,g} = F~^{k,g} B^{mk}",
        lambda psi, m, k, gg: _dist(
            apply_wall_face(patch, ft(psi, k, gg), v0, m),
            ft(apply_wall_face(patch, psi, v0, int(kg.mul[m, k])), k, gg),
        ),
        nk, nk, n,
    )
    probe(
        "F~^{k,g} F~^{k',g'} = delta phi(k,k') F~^{kk',g}",
        lambda psi, k, gg, k2, g2: _dist(
            ft(ft(psi, k2, g2), k, gg),
            ft(psi, int(kg.mul[k, k2]), gg),
            scale=phit[k, k2] if gg == g2 else 0.0,
        ),
        nk, n, nk, n,
    )
    probe(
        "(F~^{k,g})^+ = phi(k,k^-1)^-1 F~^{k^-1,g}",
        lambda psi, k, gg: abs(
            inner(psi, ft(psi, k, gg))
            - inner(ft(psi, int(kg.inv[k]), gg), psi) / np.conj(phit[k, kg.inv[k]])
        ),
        nk, n,
    )
    probe(
        "A_{s1}^m F~^{k,g} = F~^{k,gm^-1} A_{s1}^m",
        lambda psi, m, k, gg: _dist(
            apply_vertex(patch, ft(psi, k, gg), v1, m),
            ft(apply_vertex(patch, psi, v1, m), k, int(mul[gg, inv[m]])),
        ),
        n, nk, n,
    )
    probe(
        "B_{s1}^m F~^{k,g} = F~^{k,g} B_{s1}^{g^-1h^-1gm}",
        lambda psi, m, k, gg: _dist(
            apply_face(patch, ft(psi, k, gg), (v1, f1), m),
            ft(apply_face(patch, psi, (v1, f1),
                          int(mul[mul[inv[gg], inv[mem[k]]], mul[gg, m]])), k, gg),
        ),
        n, nk, n,
    )
    probe(
        "[T~^{k,g}, wall A^m] = 0",
        lambda psi, m, k, gg: _dist(
            apply_wall_vertex(patch, tt(psi, k, gg), v0, m),
            tt(apply_wall_vertex(patch, psi, v0, m), k, gg),
        ),
        nk, nk, n,
    )
    probe(
        "T~^{k,gm} = phi(m,k)phi(mk,m^-1) T~^{mkm^-1,g}",
        lambda psi, m, k, gg: _dist(
            tt(psi, k, int(mul[gg, mem[m]])),
            tt(psi, int(kg.mul[kg.mul[m, k], kg.inv[m]]), gg),
            scale=phit[m, k] * phit[kg.mul[m, k], kg.inv[m]],
        ),
        nk, nk, n,
    )
    probe(
        "T~^{k,g} T~^{k',g} = phi(k,k') T~^{kk',g}",
        lambda psi, k, k2, gg: _dist(
            tt(tt(psi, k2, gg), k, gg),
            tt(psi, int(kg.mul[k, k2]), gg),
            scale=phit[k, k2],
        ),
        nk, nk, n,
    )
    if len(reps) > 1:
        def coset_zero(psi, k, k2, i, j, m, m2):
            ga = int(mul[reps[i], mem[m]])
            gb = int(mul[reps[j], mem[m2]])
            out = tt(tt(psi, k2, gb), k, ga)
            return float(np.linalg.norm(out.amplitudes))

        probe(
            "T~^{k,g} T~^{k',g'} = 0 off the coset",
            lambda psi, k, k2, i, m, m2, step: coset_zero(
                psi, k, k2, i, (i + 1 + step) % len(reps), m, m2
            ),
            nk, nk, len(reps), nk, nk, len(reps) - 1,
        )
    probe(
        "(T~^{k,g})^+ = T~^{k^-1,g}",
        lambda psi, k, gg: abs(
            inner(psi, tt(psi, k, gg)) - inner(tt(psi, int(kg.inv[k]), gg), psi)
        ),
        nk, n,
    )

    gs = ground_state(patch, seed=seed)
    err = max(
        abs(inner(gs, ft(gs, k, gg)) - (1.0 if k == 0 else 0.0) / n)
        for k in range(nk) for gg in range(n)
    )
    checks.append(("<F~^{k,g}> = delta_{k,e}/|G| on the ground state", err))
    basis = {(k, i): tt(gs, k, gi) for k in range(nk) for i, gi in enumerate(reps)}
    scale = nk / n
    err = max(
        abs(inner(a, b) - (scale if ka == kb else 0.0))
        for ka, a in basis.items() for kb, b in basis.items()
    )
    checks.append(("<psi~^{k,gi}|psi~^{k',gj}> = (|K|/|G|) delta delta", err))
    err = 0.0
    for (k, i), st in basis.items():
        gi = reps[i]
        for m in range(n):
            err = max(err, _dist(apply_vertex(patch, st, v1, m),
                                 tt(gs, k, int(mul[m, gi]))))
            flux = int(mul[mul[gi, mem[k]], inv[gi]])
            err = max(err, _dist(apply_face(patch, st, (v1, f1), m), st,
                                 scale=1.0 if m == flux else 0.0))
    checks.append(("basis carries charge g and flux gkg^-1 at s1", err))
    return checks
