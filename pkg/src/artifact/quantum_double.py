"""Anyon data of the quantum double of a finite group.

Simple objects are labeled by a conjugacy class together with an irreducible
character of the centralizer of its representative.  Every derived quantity
here (S and T matrices, fusion multiplicities, duality) is computed from the
characters chi(g h*), which live on commuting pairs and determine the object
up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .characters import character_table
from .errors import GroupMismatch, NegativeOrNonInteger, NonIntegerMultiplicity
from .groups import GroupTable, Subgroup, conjugacy_data, subgroup

MULT_TOL = 1e-4
FUSION_TOL = 1e-6


@dataclass(frozen=True)
class Anyon:
    """Simple object: conjugacy class of class_rep paired with centralizer irrep pi."""

    group: GroupTable = field(repr=False)
    class_rep: int
    pi: int
    dim: int
    label: str


@dataclass(frozen=True, eq=False)
class DGClassFunction:
    """Character-like function on the double: values[g, h] = chi(g h*).

    Supported on commuting pairs and constant on simultaneous-conjugation
    orbits; sums and differences stay in the span of anyon characters."""

    group: GroupTable = field(repr=False)
    values: np.ndarray

    def on(self, g: int, h: int) -> complex:
        return complex(self.values[g, h])

    def _same_group(self, other: "DGClassFunction") -> None:
        if self.group is not other.group:
            raise GroupMismatch("class functions live on different doubles")

    def __add__(self, other: "DGClassFunction") -> "DGClassFunction":
        self._same_group(other)
        return DGClassFunction(self.group, self.values + other.values)

    def __sub__(self, other: "DGClassFunction") -> "DGClassFunction":
        self._same_group(other)
        return DGClassFunction(self.group, self.values - other.values)


def centralizer(g: GroupTable, a: int) -> Subgroup:
    """Centralizer of an element, memoized per group.

    In a direct product the centralizer of (a, b) factorizes; the factor
    structure is recorded on the re-indexed table so its character table is
    assembled from the factor tables instead of rerunning the generic solver."""
    cache = g._cache.setdefault("centralizers", {})
    a = int(a)
    if a in cache:
        return cache[a]
    if "product_of" in g.meta:
        ga, gb = g.meta["product_of"]
        nb = gb.order
        za = centralizer(ga, a // nb)
        zb = centralizer(gb, a % nb)
        members = (za.members[:, None] * nb + zb.members[None, :]).ravel()
        sub = subgroup(g, members, label=f"Z[{g.label}:{a}]")
        sub.as_group.meta["product_of"] = (za.as_group, zb.as_group)
    else:
        conj = g.conj_table()
        sub = subgroup(g, np.nonzero(conj[:, a] == a)[0], label=f"Z[{g.label}:{a}]")
    cache[a] = sub
    return sub


def anyons(g: GroupTable) -> list[Anyon]:
    """All simple objects, ordered by (class representative, irrep row).

    Index 0 is always the vacuum (identity class, trivial irrep)."""
    if "anyons" in g._cache:
        return g._cache["anyons"]
    data = conjugacy_data(g)
    out: list[Anyon] = []
    index: dict[tuple[int, int], int] = {}
    for ci, a in enumerate(data.reps):
        size = int(data.classes[ci].size)
        tab = character_table(centralizer(g, int(a)).as_group)
        cl = "e" if a == 0 else f"c{a}"
        for p in range(tab.n_rows):
            index[(int(a), p)] = len(out)
            out.append(Anyon(g, int(a), p, size * int(tab.dims[p]), f"({cl},r{p})"))
    assert sum(x.dim**2 for x in out) == g.order**2, "squared dims must total |G|^2"
    g._cache["anyons"] = out
    g._cache["anyon_index"] = index
    return out


def anyon_by(g: GroupTable, class_rep: int, pi: int) -> Anyon:
    """Anyon with the given canonical class representative and irrep row."""
    lst = anyons(g)
    return lst[g._cache["anyon_index"][(int(class_rep), int(pi))]]


def anyon_character(
    g: GroupTable, x: Anyon, transversal: np.ndarray | None = None
) -> DGClassFunction:
    """chi(g h*) = [h in class][gh = hg] tr_pi(k_h^-1 g k_h).

    The optional transversal override (k_h a k_h^-1 = h) exists so tests can
    confirm the values do not depend on that choice."""
    data = conjugacy_data(g)
    tr = data.transversal if transversal is None else np.asarray(transversal)
    zc = centralizer(g, x.class_rep)
    tab = character_table(zc.as_group)
    local = conjugacy_data(zc.as_group).class_of
    member_vals = tab.table[x.pi][local]
    values = np.zeros((g.order, g.order), dtype=np.complex128)
    for h in data.classes[data.class_of[x.class_rep]]:
        k = int(tr[h])
        assert g.conj(k, x.class_rep) == h, "transversal must map the class rep to h"
        values[g.mul[g.mul[k, zc.members], g.inv[k]], h] = member_vals
    return DGClassFunction(g, values)


def character_stack(g: GroupTable) -> np.ndarray:
    """(num anyons, |G|, |G|) array stacking every anyon character."""
    if "anyon_character_stack" not in g._cache:
        g._cache["anyon_character_stack"] = np.stack(
            [anyon_character(g, x).values for x in anyons(g)]
        )
    return g._cache["anyon_character_stack"]


def dg_inner_product(chi1: DGClassFunction, chi2: DGClassFunction) -> complex:
    """(1/|G|) sum over all basis pairs of chi1(g h*)* chi2(g h*)."""
    chi1._same_group(chi2)
    return complex(np.vdot(chi1.values, chi2.values) / chi1.group.order)


def dg_decompose(chi: DGClassFunction, tol: float = MULT_TOL) -> np.ndarray:
    """Integer multiplicities against anyons(group), by orthonormality.

    Raises NonIntegerMultiplicity when the projections are not integers or the
    reassembled sum misses the input (the input was not in the character span)."""
    g = chi.group
    stack = character_stack(g)
    raw = np.tensordot(np.conj(stack), chi.values, axes=([1, 2], [0, 1])) / g.order
    mult = np.rint(raw.real).astype(np.int64)
    err = float(np.max(np.abs(raw - mult)))
    if err > tol:
        raise NonIntegerMultiplicity(f"projection off nearest integer by {err:.3e}")
    scale = max(1.0, float(np.max(np.abs(chi.values))))
    residual = float(np.max(np.abs(np.tensordot(mult, stack, axes=1) - chi.values)))
    if residual > 1e-8 * scale:
        raise NonIntegerMultiplicity(f"reassembly residual {residual:.3e}")
    return mult


def tensor_character(chi1: DGClassFunction, chi2: DGClassFunction) -> DGClassFunction:
    """Product character via the coproduct: h splits over ordered pairs h1 h2 = h."""
    chi1._same_group(chi2)
    g = chi1.group
    out = np.zeros_like(chi1.values)
    for h1 in range(g.order):
        out += chi1.values[:, h1][:, None] * chi2.values[:, g.mul[g.inv[h1]]]
    return DGClassFunction(g, out)


def _extended_traces(g: GroupTable, a: int) -> tuple[np.ndarray, int]:
    """Rows of Z(a)'s character table spread over all of G, zero off Z(a)."""
    zc = centralizer(g, a)
    tab = character_table(zc.as_group)
    local = conjugacy_data(zc.as_group).class_of
    ext = np.zeros((tab.n_rows, g.order), dtype=np.complex128)
    ext[:, zc.members] = tab.table[:, local]
    return ext, zc.order


def s_matrix(g: GroupTable) -> np.ndarray:
    """Modular S: S_XY = (1/(|Z(a)||Z(b)|)) sum_h tr_pi(h b^-1 h^-1) tr_pi'(h^-1 a^-1 h).

    The zero-extended centralizer traces enforce the h b h^-1 in Z(a)
    constraint, so each class pair reduces to one small matrix product."""
    if "smatrix" in g._cache:
        return g._cache["smatrix"]
    data = conjugacy_data(g)
    inv, conj = g.inv, g.conj_table()
    ext = [_extended_traces(g, int(a)) for a in data.reps]
    offsets = np.cumsum([0] + [e.shape[0] for e, _ in ext])
    m = offsets[-1]
    s = np.empty((m, m), dtype=np.complex128)
    for ci, a in enumerate(data.reps):
        for cj, b in enumerate(data.reps):
            left = ext[ci][0][:, conj[:, inv[b]]]
            right = ext[cj][0][:, conj[inv, inv[a]]]
            block = left @ right.T / (ext[ci][1] * ext[cj][1])
            s[offsets[ci] : offsets[ci + 1], offsets[cj] : offsets[cj + 1]] = block
    g._cache["smatrix"] = s
    return s


def t_vector(g: GroupTable) -> np.ndarray:
    """Twists T_X = tr_pi(a) / dim pi, one unit-modulus value per anyon."""
    out = np.empty(len(anyons(g)), dtype=np.complex128)
    for i, x in enumerate(anyons(g)):
        zc = centralizer(g, x.class_rep)
        tab = character_table(zc.as_group)
        local = conjugacy_data(zc.as_group).class_of
        pos = zc.position[x.class_rep]
        out[i] = tab.table[x.pi, local[pos]] / tab.dims[x.pi]
    assert float(np.max(np.abs(np.abs(out) - 1.0))) < 1e-9, "twists must be unit modulus"
    return out


def fusion_verlinde(g: GroupTable) -> np.ndarray:
    """Fusion tensor N[x, y, z] from the S matrix via the Verlinde sum."""
    if "fusion" in g._cache:
        return g._cache["fusion"]
    s = s_matrix(g)
    raw = np.einsum("xu,yu,zu->xyz", s, s, np.conj(s) / s[0])
    n = np.rint(raw.real)
    err = float(np.max(np.abs(raw - n)))
    if err > FUSION_TOL:
        raise NegativeOrNonInteger(f"fusion entries off integers by {err:.3e}")
    if n.min() < 0:
        raise NegativeOrNonInteger("negative fusion multiplicity")
    out = n.astype(np.int64)
    g._cache["fusion"] = out
    return out


def anyon_dual(g: GroupTable, x: Anyon) -> Anyon:
    """Dual object: inverse class, conjugated irrep transported to its centralizer."""
    data = conjugacy_data(g)
    a_inv = int(g.inv[x.class_rep])
    b = int(data.reps[data.class_of[a_inv]])
    k = int(data.transversal[a_inv])  # k b k^-1 = a^-1, so k Z(b) k^-1 = Z(a)
    za = centralizer(g, x.class_rep)
    zb = centralizer(g, b)
    taba = character_table(za.as_group)
    tabb = character_table(zb.as_group)
    la = conjugacy_data(za.as_group).class_of
    reps_b = zb.members[conjugacy_data(zb.as_group).reps]
    moved = g.mul[g.mul[k, reps_b], g.inv[k]]
    vals = np.conj(taba.table[x.pi, la[za.position[moved]]])
    return anyon_by(g, b, tabb.match_row(vals))


def anyon_op(g: GroupTable, x: Anyon) -> Anyon:
    """Image in the opposite theory: same class, conjugated irrep."""
    tab = character_table(centralizer(g, x.class_rep).as_group)
    return anyon_by(g, x.class_rep, tab.match_row(np.conj(tab.table[x.pi])))


def kind(x: Anyon) -> str:
    """vacuum / chargeon (trivial flux) / fluxion (trivial charge) / mixed."""
    electric = x.class_rep == 0
    magnetic = x.pi == 0
    if electric and magnetic:
        return "vacuum"
    if electric:
        return "chargeon"
    if magnetic:
        return "fluxion"
    return "mixed"


def product_anyon(g: GroupTable, x: Anyon, y: Anyon) -> Anyon:
    """Anyon of a direct product built from factor anyons; character is the kron."""
    if "product_of" not in g.meta:
        raise GroupMismatch("not a direct product group")
    ga, gb = g.meta["product_of"]
    if x.group is not ga or y.group is not gb:
        raise GroupMismatch("factor anyons do not match the product factors")
    from .characters import product_row_of_pair

    rep = x.class_rep * gb.order + y.class_rep
    z = centralizer(g, rep)
    return anyon_by(g, rep, product_row_of_pair(z.as_group, x.pi, y.pi))
