"""2-cocycles on subgroups: validation, gauge normalization, commuting-pair phases.

Includes the two constructions the theorems run on: bicharacters of abelian
subgroups, and the wall cocycle on U inside Aff(F_q) x Aff(F_q) whose
condensation swaps the distinguished chargeon and fluxion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CocycleIdentityFailure,
    NotAbelian,
    NotAField,
    NotBimultiplicative,
    SizeMismatch,
)
from .groups import (
    GroupTable,
    NearFieldSpec,
    Subgroup,
    _factor_prime_power,
    affine_group,
    direct_product,
    is_right_distributive,
    subgroup,
)

IDENT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TwoCocycle:
    """Unitary 2-cochain phi on a subgroup, indexed by its local element order."""

    subgroup: Subgroup
    table: np.ndarray

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def value(self, k: int, l: int) -> complex:
        return complex(self.table[k, l])


@dataclass(frozen=True, eq=False)
class CommutingPairPhase:
    """phi(k|l) = phi(k,l) phi(k l k^-1, k)^-1; only commuting pairs are meaningful."""

    subgroup: Subgroup
    values: np.ndarray

    def commuting_mask(self) -> np.ndarray:
        mul = self.subgroup.as_group.mul
        return mul == mul.T


def _identity_residual(mul: np.ndarray, table: np.ndarray) -> tuple[float, tuple[int, int, int]]:
    """Worst violation of phi(kl,m) phi(k,l) = phi(k,lm) phi(l,m) and its triple."""
    worst, where = 0.0, (0, 0, 0)
    for k in range(table.shape[0]):
        lhs = table[mul[k], :] * table[k, :][:, None]
        rhs = table[k, mul] * table
        diff = np.abs(lhs - rhs)
        l, m = np.unravel_index(np.argmax(diff), diff.shape)
        if diff[l, m] > worst:
            worst, where = float(diff[l, m]), (k, int(l), int(m))
    return worst, where


def validate(table: np.ndarray, k: Subgroup) -> TwoCocycle:
    """Check the cocycle identity on every triple of K."""
    table = np.asarray(table, dtype=np.complex128)
    n = k.as_group.order
    if table.shape != (n, n):
        raise SizeMismatch(f"table shape {table.shape} does not match |K| = {n}")
    residual, (a, b, c) = _identity_residual(k.as_group.mul, table)
    if residual > IDENT_TOL:
        raise CocycleIdentityFailure(a, b, c, f"residual {residual:.3e}")
    return TwoCocycle(k, table)


def trivial_cocycle(k: Subgroup) -> TwoCocycle:
    return TwoCocycle(k, np.ones((k.as_group.order, k.as_group.order), dtype=np.complex128))


def normalize(phi: TwoCocycle) -> tuple[TwoCocycle, np.ndarray]:
    """Gauge-equivalent cocycle with phi(e,.) = phi(.,e) = 1, phi(k,k^-1) = 1,
    unit modulus, and phi(k^-1,l^-1) = phi(l,k)^-1; returns (cocycle, alpha).

    The witness satisfies out.table = phi.table * alpha(k) alpha(l) / alpha(kl).
    Idempotent: a normalized input comes back unchanged with alpha = 1."""
    g = phi.subgroup.as_group
    mul, inv = g.mul, g.inv
    n = g.order
    table = phi.table.astype(np.complex128)

    # |phi| is a real 2-cocycle, hence the coboundary of its row mean; divide it out.
    tau = np.log(np.abs(table)).mean(axis=1)
    alpha = np.exp(-tau).astype(np.complex128)
    table = table * alpha[:, None] * alpha[None, :] / alpha[mul]
    table = table / np.abs(table)

    # A constant alpha = c rescales the whole table by c; pin phi(e,e) = 1.
    c = 1.0 / table[0, 0]
    alpha = alpha * c
    table = table * c

    # Per inverse pair {k, k^-1} adjust one endpoint so phi(k, k^-1) = 1;
    # involutions take the principal square root of phi(k,k)^-1.
    step = np.ones(n, dtype=np.complex128)
    for k in range(1, n):
        ki = int(inv[k])
        if k < ki:
            step[ki] = 1.0 / table[k, ki]
        elif k == ki:
            step[k] = np.exp(-0.5j * np.angle(table[k, k]))
    alpha = alpha * step
    table = table * step[:, None] * step[None, :] / step[mul]

    residual, _ = _identity_residual(mul, table)
    assert residual < 1e-8, "normalization must preserve the cocycle identity"
    assert np.abs(table[0, :] - 1).max() < 1e-9, "phi(e, .) must be 1"
    assert np.abs(table[:, 0] - 1).max() < 1e-9, "phi(., e) must be 1"
    assert np.abs(table[np.arange(n), inv] - 1).max() < 1e-9, "phi(k, k^-1) must be 1"
    assert np.abs(np.abs(table) - 1).max() < 1e-9, "values must be unit modulus"
    assert (
        np.abs(table[inv[:, None], inv[None, :]] * table.T - 1).max() < 1e-9
    ), "phi(k^-1, l^-1) phi(l, k) must be 1"
    mask = mul == mul.T
    out = TwoCocycle(phi.subgroup, table)
    drift = np.abs(phase(out).values - phase(phi).values)[mask].max()
    assert drift < 1e-9, "phi(.|.) must be gauge invariant on commuting pairs"
    return out, alpha


def phase(phi: TwoCocycle) -> CommutingPairPhase:
    """Gauge-invariant combination entering the condensation character."""
    g = phi.subgroup.as_group
    conj = g.conj_table()
    values = phi.table / phi.table[conj, np.arange(g.order)[:, None]]
    return CommutingPairPhase(phi.subgroup, values)


def bicharacter_cocycle(k: Subgroup, b: np.ndarray) -> TwoCocycle:
    """A bicharacter of an abelian subgroup is automatically a cocycle."""
    g = k.as_group
    if not g.is_abelian():
        raise NotAbelian("bicharacter cocycles require an abelian subgroup")
    b = np.asarray(b, dtype=np.complex128)
    left = np.abs(b[g.mul, :] - b[:, None, :] * b[None, :, :]).max()
    right = np.abs(b[:, g.mul] - b[:, :, None] * b[:, None, :]).max()
    if max(left, right) > IDENT_TOL:
        raise NotBimultiplicative(f"slot residuals {left:.3e}, {right:.3e}")
    return validate(b, k)


def _pow_table(mul: np.ndarray, x: int, e: int, one: int = 1) -> int:
    acc, base = one, x
    while e:
        if e & 1:
            acc = int(mul[acc, base])
        base = int(mul[base, base])
        e >>= 1
    return acc


def absolute_trace(h: NearFieldSpec) -> np.ndarray:
    """tr: F_q -> F_p, x -> x + x^p + ... + x^(p^(d-1)), as residues 0..p-1."""
    if not is_right_distributive(h):
        raise NotAField("the trace form needs honest field arithmetic")
    p, d = _factor_prime_power(h.q)
    out = np.zeros(h.q, dtype=np.int64)
    for x in range(h.q):
        term, total = x, 0
        for _ in range(d):
            total = int(h.add[total, term])
            term = _pow_table(h.mul, term, p)
        assert total < p, "trace must land in the prime subfield"
        out[x] = total
    return out


def wall_subgroup(h: NearFieldSpec) -> Subgroup:
    """U = {((a1, alpha), (a2, alpha^-1))} inside Aff(F_q) x Aff(F_q)."""
    if not is_right_distributive(h):
        # closure of U under the product needs a commutative multiplicative group
        raise NotAField("the wall subgroup is only defined over a field")
    g1 = affine_group(h)
    gg = direct_product(g1, g1)
    q = h.q
    n1 = g1.order
    al_inv = np.argmax(h.mul[1:q, 1:q] == 1, axis=1) + 1
    members = []
    for al in range(1, q):
        for a1 in range(q):
            for a2 in range(q):
                u = a1 * (q - 1) + (al - 1)
                v = a2 * (q - 1) + (int(al_inv[al - 1]) - 1)
                members.append(u * n1 + v)
    return subgroup(gg, members, label=f"U({h.label})")


def wall_cocycle(h: NearFieldSpec) -> TwoCocycle:
    """phi(g, h) = omega^tr(alpha a2 b1) on U, with omega a primitive p-th root.

    g supplies alpha and a2, h supplies b1; validated on all |U|^3 triples."""
    u = wall_subgroup(h)
    q = h.q
    n1 = q * (q - 1)
    p, _ = _factor_prime_power(q)
    tr = absolute_trace(h)
    first = u.members // n1
    second = u.members % n1
    a2 = second // (q - 1)
    alpha = first % (q - 1) + 1
    b1 = first // (q - 1)
    omega = -1.0 + 0.0j if p == 2 else np.exp(2j * np.pi / p)
    exponents = tr[h.mul[h.mul[alpha, a2][:, None], b1[None, :]]]
    return validate(omega**exponents, u)
