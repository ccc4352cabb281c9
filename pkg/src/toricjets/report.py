"""Analysis reports and their two renderings.

The records format is one JSON object per line with sorted keys.  Exact
rationals are written as strings (``"7/3"``, ``"2"``), integers as numbers,
and every object carries ``format_version``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .cayley import CayleyDecomposition, StrictMode, detect_cayley, detect_cayley_general, min_edge_length
from .jets import JetReport, jet_report
from .polytope import LatticePolytope, is_smooth
from .seshadri import (
    DEFAULT_S1_BOUND,
    DEFAULT_WIDTH_BOUND,
    CONDITIONS,
    EquivalenceVerdict,
    GenericEpsilon,
    epsilon_generic,
    verify_corollary,
)

FORMAT_VERSION = 1


@dataclass
class AnalysisReport:
    source: str
    polytope: LatticePolytope
    smooth: bool
    jets: JetReport | None = None
    cayley: dict[int, CayleyDecomposition | None] = field(default_factory=dict)
    generic: GenericEpsilon | None = None
    verdicts: list[EquivalenceVerdict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def violation(self) -> bool:
        return any(v.violation for v in self.verdicts)


def default_orders(p: LatticePolytope, jets: JetReport | None) -> list[int]:
    """1 .. max(longest edge, generic jet order)."""
    top = max(e.lattice_length for e in p.edges)
    if jets is not None:
        top = max(top, jets.generic)
    return list(range(1, top + 1))


def analyze(
    p: LatticePolytope,
    source: str = "-",
    orders: Sequence[int] | None = None,
    max_k: int | None = None,
    width_bound: int = DEFAULT_WIDTH_BOUND,
    s1_bound: int = DEFAULT_S1_BOUND,
    strict_mode: StrictMode = "equal-dim",
    length: int = 2,
    jets: bool = True,
    cayley: bool = True,
    seshadri: bool = True,
    verify: bool = False,
) -> AnalysisReport:
    smooth = is_smooth(p)
    rep = AnalysisReport(source, p, smooth)
    if not smooth:
        rep.notes.append("not smooth: jet orders, fixpoint data and the equivalence check are skipped")
    if smooth and (jets or verify):
        rep.jets = jet_report(p, max_k)
    ks = list(orders) if orders else default_orders(p, rep.jets)
    if cayley:
        for k in ks:
            if length == 2:
                rep.cayley[k] = detect_cayley(p, k, strict_mode)
            else:
                rep.cayley[k] = detect_cayley_general(p, k, length - 1, strict_mode)
    if seshadri or (verify and smooth):
        rep.generic = epsilon_generic(p, width_bound, s1_bound)
    if verify and smooth:
        rep.verdicts = [
            verify_corollary(p, k, width_bound, s1_bound, jets=rep.jets, generic=rep.generic) for k in ks
        ]
    return rep


# -- plain data -------------------------------------------------------------


def plain(value: Any) -> Any:
    """Convert to JSON-compatible data with exact rationals as strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [plain(v) for v in items]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _decomposition_data(d: CayleyDecomposition | None):
    if d is None:
        return None
    return {
        "order": d.order,
        "length": d.length,
        "projection": d.projection,
        "offset": d.offset,
        "slices": d.slices,
        "slice_dims": d.slice_dims,
        "strict": d.strict,
    }


def _verdict_data(v: EquivalenceVerdict):
    return {
        "k": v.k,
        "conditions": v.conditions,
        "consistent": v.consistent,
        "notes": v.notes,
        "witnesses": {k: w for k, w in v.witnesses.items() if k != "jet_orders"},
    }


def to_data(rep: AnalysisReport) -> dict:
    p = rep.polytope
    data: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "source": rep.source,
        "dim": p.dim,
        "vertices": p.vertices,
        "n_vertices": len(p.vertices),
        "n_facets": len(p.facets),
        "n_lattice_points": len(p.lattice_points),
        "smooth": rep.smooth,
        "min_edge_length": min_edge_length(p),
        "notes": rep.notes,
    }
    if rep.jets is not None:
        data["jets"] = {
            "fixpoint_orders": [rep.jets.per_fixpoint[i] for i in range(len(p.vertices))],
            "generic": rep.jets.generic,
            "generic_capped": rep.jets.generic_capped,
            "constant_k": rep.jets.constant_k,
        }
    if rep.cayley:
        data["cayley"] = {str(k): _decomposition_data(d) for k, d in sorted(rep.cayley.items())}
    if rep.generic is not None:
        g = rep.generic
        data["seshadri"] = {
            "s2": g.s2.width,
            "s2_direction": g.s2.direction,
            "s2_bound": g.s2.bound,
            "s2_certified": g.s2.certified,
            "s1_lower": g.s1.value,
            "s1_direction": g.s1.witness.functional if g.s1.witness else None,
            "s1_bound": g.s1.bound,
            "generic_lower": g.lower,
            "generic_upper": g.upper,
            "generic_exact": g.exact,
        }
        if rep.jets is not None:
            data["seshadri"]["fixpoint_epsilon"] = data["jets"]["fixpoint_orders"]
    if rep.verdicts:
        data["verdicts"] = [_verdict_data(v) for v in rep.verdicts]
        data["violation"] = rep.violation
    return plain(data)


def render_record(rep: AnalysisReport) -> str:
    return json.dumps(to_data(rep), sort_keys=True, separators=(",", ":"))


# -- human table -----------------------------------------------------------


def _yn(value: bool | None) -> str:
    return {True: "yes", False: "no", None: "?"}[value]


def _vec(v: Sequence) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def render_text(rep: AnalysisReport) -> str:
    p = rep.polytope
    lines = [
        f"polytope {rep.source}",
        f"  dim {p.dim}  vertices {len(p.vertices)}  facets {len(p.facets)}"
        f"  lattice points {len(p.lattice_points)}  smooth {_yn(rep.smooth)}  min edge {min_edge_length(p)}",
    ]
    if rep.jets is not None:
        j = rep.jets
        orders = " ".join(str(j.per_fixpoint[i]) for i in range(len(p.vertices)))
        capped = " (capped)" if j.generic_capped else ""
        const = "-" if j.constant_k is None else str(j.constant_k)
        lines.append(f"  jets: fixpoint orders [{orders}]  generic {j.generic}{capped}  constant k {const}")
    for k, d in sorted(rep.cayley.items()):
        if d is None:
            lines.append(f"  cayley order {k}: none")
        else:
            proj = " ".join(_vec(r) for r in d.projection)
            dims = ",".join(str(x) for x in d.slice_dims)
            lines.append(
                f"  cayley order {k}: length {d.length}  projection {proj}  slice dims {dims}  strict {_yn(d.strict)}"
            )
    if rep.generic is not None:
        g = rep.generic
        cert = "certified" if g.s2.certified else f"bound {g.s2.bound}, not certified"
        exact = "-" if g.exact is None else str(g.exact)
        lines.append(
            f"  seshadri: s2 {g.s2.width} along {_vec(g.s2.direction)} ({cert})  s1 >= {g.s1.value}"
            f"  generic in [{g.lower}, {g.upper}]  exact {exact}"
        )
    for v in rep.verdicts:
        conds = " ".join(f"{c}={_yn(v.conditions[c])}" for c in CONDITIONS)
        status = "VIOLATION" if v.violation else ("inconclusive" if v.inconclusive else "consistent")
        lines.append(f"  k={v.k}: {conds}  {status}")
        for note in v.notes:
            if not note.startswith("VIOLATION"):
                lines.append(f"    note: {note}")
    for note in rep.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def render(rep: AnalysisReport, fmt: str) -> str:
    return render_record(rep) if fmt == "records" else render_text(rep)
