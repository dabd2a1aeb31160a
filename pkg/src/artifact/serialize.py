"""JSON and CSV emitters plus file readers for the package's data objects.

Writers are deterministic: key order is fixed in code, numbers keep their
shortest round-trip repr, CSV uses "\n" line endings, and every document
ends with a newline, so repeated runs produce byte-identical output.
Readers accept exactly what the writers emit.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import numpy as np

from .characters import CharacterTable, snap_value
from .cocycles import TwoCocycle, validate
from .condensation import CFSymmetryReport, CondensationReport, EquivalenceReport, TunnelingMatrix
from .errors import SizeMismatch
from .groups import GroupTable, Subgroup, conjugacy_data, from_cayley, subgroup
from .modular import InvariantVerdict, TheoremB1Report, TranspositionHit
from .quantum_double import DGClassFunction, anyons, centralizer, kind

# Largest omega_order the cocycle writer will infer when factoring a table
# into integer powers of one primitive root.
MAX_ROOT_ORDER = 10_000

# Degrees tried when snapping a value that is a sum of unknown length.
SNAP_DEGREE_CAP = 12


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_grid(values: np.ndarray) -> list:
    arr = np.asarray(values)
    if arr.ndim == 1:
        return [complex_pair(z) for z in arr]
    return [complex_grid(row) for row in arr]


def _pair_grid_to_array(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim < 2 or arr.shape[-1] != 2:
        raise SizeMismatch("expected nested [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def format_complex(z) -> str:
    """Compact text form for CSV cells; exact repr of both float parts."""
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}j"


def group_exponent(g: GroupTable) -> int:
    orders = [g.element_order(x) for x in range(g.order)]
    return int(np.lcm.reduce(np.asarray(orders, dtype=np.int64)))


# --- groups, subgroups, cocycles ---------------------------------------------------

def group_to_obj(g: GroupTable) -> dict:
    return {
        "order": int(g.order),
        "mul": [[int(v) for v in row] for row in g.mul],
        "label": g.label,
    }


def group_from_obj(obj) -> GroupTable:
    mul = np.asarray(obj["mul"], dtype=np.int64)
    if mul.shape != (int(obj["order"]),) * 2:
        raise SizeMismatch("mul table shape disagrees with order")
    return from_cayley(mul, label=str(obj.get("label", "custom")))


def subgroup_from_obj(g: GroupTable, obj) -> Subgroup:
    return subgroup(g, np.asarray(obj["members"], dtype=np.int64))


def subgroup_to_obj(k: Subgroup) -> dict:
    return {"members": [int(m) for m in k.members]}


def cocycle_to_obj(phi: TwoCocycle) -> dict:
    """Factor the table as omega**exponents for one primitive root omega.

    Entries must be roots of unity (all library constructions are); the
    integer exponents make the file format round-trip bit-exactly.
    """
    turns = np.angle(phi.table) / (2.0 * np.pi)
    fracs = [Fraction(float(t)).limit_denominator(MAX_ROOT_ORDER) for t in turns.ravel()]
    p = int(np.lcm.reduce(np.asarray([f.denominator for f in fracs], dtype=np.int64)))
    exps = np.asarray([int(f * p) % p for f in fracs], dtype=np.int64).reshape(turns.shape)
    rebuilt = np.exp(2j * np.pi * exps / p)
    if not np.allclose(rebuilt, phi.table, atol=1e-9):
        raise SizeMismatch("cocycle entries are not roots of unity of a common order")
    return {
        "subgroup": [int(m) for m in phi.subgroup.members],
        "omega_order": p,
        "exponents": [[int(v) for v in row] for row in exps],
    }


def cocycle_from_obj(g: GroupTable, obj) -> TwoCocycle:
    k = subgroup(g, np.asarray(obj["subgroup"], dtype=np.int64))
    p = int(obj["omega_order"])
    exps = np.asarray(obj["exponents"], dtype=np.int64)
    if exps.shape != (k.order, k.order):
        raise SizeMismatch("exponent table shape disagrees with subgroup order")
    table = np.exp(2j * np.pi * (exps % p) / p)
    if p in (1, 2, 4):
        table = np.round(table.real) + 1j * np.round(table.imag)
    return validate(table, k)


# --- character tables and anyon lists ----------------------------------------------

def _snapped_cell(value: complex, root_order: int, degree: int):
    hit = snap_value(value, root_order, degree)
    return hit[0] if hit is not None else complex_pair(value)


def chartable_obj(ct: CharacterTable, snap: bool = True) -> dict:
    g = ct.group
    reps = [int(r) for r in conjugacy_data(g).reps]
    root = group_exponent(g)
    rows = []
    for i in range(ct.n_rows):
        deg = int(ct.dims[i])
        if snap:
            rows.append([_snapped_cell(complex(v), root, deg) for v in ct.table[i]])
        else:
            rows.append([complex_pair(v) for v in ct.table[i]])
    return {
        "group": g.label,
        "classes": reps,
        "dims": [int(d) for d in ct.dims],
        "rows": rows,
    }


def anyons_obj(g: GroupTable) -> dict:
    rows = [
        {
            "label": x.label,
            "class_rep": int(x.class_rep),
            "pi": int(x.pi),
            "dim": int(x.dim),
            "kind": kind(x),
        }
        for x in anyons(g)
    ]
    return {"group": g.label, "anyons": rows}


def anyons_csv(g: GroupTable) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["label", "class_rep", "pi", "dim", "kind"])
    for x in anyons(g):
        w.writerow([x.label, int(x.class_rep), int(x.pi), int(x.dim), kind(x)])
    return out.getvalue()


# --- modular matrices ---------------------------------------------------------------

def _snap_sum(value: complex, root_order: int, scale: int):
    """Render scale*value as the shortest sum of root_order-th roots, if any."""
    target = complex(value) * scale
    for degree in range(1, SNAP_DEGREE_CAP + 1):
        hit = snap_value(target, root_order, degree)
        if hit is not None:
            return f"({hit[0]})/{scale}" if scale != 1 else hit[0]
    return None


def s_matrix_obj(g: GroupTable, s: np.ndarray, snap: bool = False) -> dict:
    objs = anyons(g)
    labels = [x.label for x in objs]
    if not snap:
        return {"group": g.label, "objects": labels, "s": complex_grid(s)}
    root = group_exponent(g)
    zord = [centralizer(g, x.class_rep).order for x in objs]
    rows = []
    for i in range(len(objs)):
        row = []
        for j in range(len(objs)):
            rendered = _snap_sum(s[i, j], root, zord[i] * zord[j])
            row.append(rendered if rendered is not None else complex_pair(s[i, j]))
        rows.append(row)
    return {"group": g.label, "objects": labels, "s": rows}


def t_vector_obj(g: GroupTable, t: np.ndarray, snap: bool = False) -> dict:
    objs = anyons(g)
    labels = [x.label for x in objs]
    if not snap:
        return {"group": g.label, "objects": labels, "t": complex_grid(t)}
    root = group_exponent(g)
    cells = []
    for j, x in enumerate(objs):
        rendered = _snap_sum(t[j], root, 1)
        cells.append(rendered if rendered is not None else complex_pair(t[j]))
    return {"group": g.label, "objects": labels, "t": cells}


def fusion_obj(g: GroupTable, n: np.ndarray) -> dict:
    labels = [x.label for x in anyons(g)]
    table = [[[int(v) for v in row] for row in plane] for plane in n]
    return {"group": g.label, "objects": labels, "n": table}


def matrix_csv(labels, m: np.ndarray, corner: str = "") -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow([corner, *labels])
    arr = np.asarray(m)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
        row_labels = [corner or "value"]
    else:
        row_labels = labels
    for name, row in zip(row_labels, arr):
        if np.iscomplexobj(row):
            w.writerow([name, *[format_complex(z) for z in row]])
        else:
            w.writerow([name, *[repr(float(v)) if isinstance(v, float) else int(v) for v in row]])
    return out.getvalue()


def fusion_csv(g: GroupTable, n: np.ndarray) -> str:
    labels = [x.label for x in anyons(g)]
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["left", "right", "result", "multiplicity"])
    for i, row_i in enumerate(n):
        for j, row_ij in enumerate(row_i):
            for k, v in enumerate(row_ij):
                if v:
                    w.writerow([labels[i], labels[j], labels[k], int(v)])
    return out.getvalue()


# --- class functions on the double --------------------------------------------------

def class_function_obj(chi: DGClassFunction) -> dict:
    return {
        "group": chi.group.label,
        "order": int(chi.group.order),
        "values": complex_grid(chi.values),
    }


def class_function_from_obj(g: GroupTable, obj) -> DGClassFunction:
    values = _pair_grid_to_array(obj["values"])
    if values.shape != (g.order, g.order):
        raise SizeMismatch("class function grid shape disagrees with group order")
    return DGClassFunction(g, values)


# --- condensation and tunneling reports ---------------------------------------------

def condensation_obj(rep: CondensationReport) -> dict:
    objs = anyons(rep.group)
    mult = {x.label: int(m) for x, m in zip(objs, rep.multiplicities) if m}
    return {
        "group": rep.group.label,
        "boundary": [int(m) for m in rep.boundary.members],
        "multiplicities": mult,
        "condensed": [x.label for x in rep.condensed],
        "verdict": "consistent",
    }


def tunneling_obj(tm: TunnelingMatrix, verdict: str) -> dict:
    pairs = {}
    for i, x in enumerate(anyons(tm.left)):
        for j, y in enumerate(anyons(tm.right)):
            v = int(tm.n[i, j])
            if v:
                pairs[f"{x.label} (x) {y.label}"] = v
    return {
        "multiplicities": pairs,
        "condensed": list(pairs),
        "verdict": verdict,
    }


def equivalence_obj(rep: EquivalenceReport) -> dict:
    out = tunneling_obj(rep.tunneling, rep.verdict)
    out["is_permutation"] = rep.is_permutation
    out["projections_surjective"] = list(rep.projections_surjective)
    out["pairing_nondegenerate"] = rep.pairing_nondegenerate
    if rep.targets is not None:
        left = anyons(rep.tunneling.left)
        right = anyons(rep.tunneling.right)
        out["targets"] = {left[i].label: right[j].label for i, j in enumerate(rep.targets)}
    else:
        out["targets"] = None
    return out


def cf_report_obj(rep: CFSymmetryReport) -> dict:
    return {
        "flavor": rep.flavor,
        "ok": rep.ok,
        "chargeon": rep.chargeon.label,
        "fluxion": rep.fluxion.label,
        "detail": rep.detail,
        "equivalence": equivalence_obj(rep.equivalence) if rep.equivalence else None,
    }


def b1_report_obj(rep: TheoremB1Report) -> dict:
    return {
        "group": rep.group.label,
        "q": int(rep.q),
        "chargeon": rep.chargeon.label,
        "fluxion": rep.fluxion.label,
        "steps": {k: bool(v) for k, v in rep.steps.items()},
        "invariant": invariant_obj(rep.invariant),
        "ok": rep.ok,
    }


# --- modular invariants --------------------------------------------------------------

def invariant_obj(v: InvariantVerdict) -> dict:
    return {
        "ok": v.ok,
        "s_residual": float(v.s_residual),
        "t_residual": float(v.t_residual),
        "reasons": list(v.reasons),
    }


def hits_obj(g: GroupTable, hits: list[TranspositionHit], residuals) -> dict:
    pairs = []
    for hit, verdict in zip(hits, residuals):
        pairs.append(
            {
                "x": hit.x.label,
                "y": hit.y.label,
                "kinds": list(hit.kinds),
                "s_residual": float(verdict.s_residual),
                "t_residual": float(verdict.t_residual),
            }
        )
    return {"group": g.label, "count": len(pairs), "pairs": pairs}


def square_matrix_from_obj(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=np.float64)
    if arr.ndim == 3 and arr.shape[-1] == 2:
        arr = arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise SizeMismatch("expected a square matrix")
    return arr


# --- lattice reports -----------------------------------------------------------------

def relation_report_obj(label: str, checks, tol: float) -> dict:
    rows = [
        {"name": name, "residual": float(res), "ok": bool(res < tol)}
        for name, res in checks
    ]
    return {
        "patch": label,
        "tol": float(tol),
        "checks": rows,
        "ok": all(r["ok"] for r in rows),
    }
