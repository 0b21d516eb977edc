"""Tables reproduced by running the engine: classification summary, bielliptic groups,
Enriques examples and the ℙ(E) grid.  Output is deterministic: fixed row order, no timestamps.
"""

from __future__ import annotations

import csv
import io
from math import gcd
from typing import Callable, Sequence

from .bundles import SlopeProfile, fujita_number_PE
from .catalog import (
    ENRIQUES_TABLE_ROWS,
    AbelianData,
    BiellipticType,
    EllFibData,
    EnriquesData,
    K3Data,
    SurfaceModel,
    make_abelian,
    make_bielliptic,
    make_elliptic_kod1,
    make_enriques,
    make_godeaux,
    make_hirzebruch,
    make_hypersurface,
    make_isotrivial_example,
    make_k3,
    make_product_of_curves,
    make_projective_plane,
    make_ruled_surface,
)
from .engine import classify, enriques_fn
from .verdict import FujitaVerdict

Table = tuple[list[str], list[list[str]]]


def verdict_cell(v: FujitaVerdict) -> str:
    if v.exact:
        return str(v.lower)
    return f"[{v.lower},{v.upper}]"


def _value_set(models: Sequence[SurfaceModel]) -> str:
    verdicts = [classify(m) for m in models]
    values = sorted({v.value for v in verdicts if v.exact})
    return "{" + ", ".join(str(x) for x in values) + "}"


def _ruled_models() -> list[SurfaceModel]:
    out = []
    for g in (2, 3):
        for d in range(-3, 4):
            out.append(make_ruled_surface(SlopeProfile.semistable(2, d, stable=True, genus=g)))
            if d % 2 == 0:
                out.append(make_ruled_surface(SlopeProfile.semistable(2, d, stable=False, genus=g)))
        out.append(make_ruled_surface(SlopeProfile.from_blocks([(1, 1), (0, 1)], genus=g)))
    return out


def _theorem_rows() -> list[tuple[str, str, Callable[[], list[SurfaceModel]]]]:
    return [
        ("-inf", "projective plane", lambda: [make_projective_plane()]),
        ("-inf", "Hirzebruch surfaces F_n, n = 0..6", lambda: [make_hirzebruch(n) for n in range(7)]),
        ("-inf", "ruled surfaces P(E) over curves of genus 2, 3", _ruled_models),
        ("0", "abelian surfaces", lambda: [make_abelian(AbelianData(m)) for m in (2, 4, 6, 8)]
         + [make_abelian(AbelianData(isogeny_from_ppav_order=3))]),
        ("0", "bielliptic surfaces", lambda: [make_bielliptic(g) for g in BiellipticType]),
        ("0", "K3 surfaces", lambda: [make_k3(K3Data(True)), make_k3(K3Data(False))]),
        ("0", "Enriques surfaces", lambda: [make_enriques(EnriquesData.unnodal())]
         + [make_enriques(EnriquesData.from_rows(r)) for _, r in sorted(ENRIQUES_TABLE_ROWS.items())]),
        ("1", "elliptic surfaces", lambda: [
            make_elliptic_kod1(EllFibData(True, True, True, chi_O=2, base_genus=2)),
            make_isotrivial_example(),
        ]),
        ("2", "surfaces of general type", lambda: [
            make_hypersurface(5), make_product_of_curves(2, 2), make_product_of_curves(2, 3), make_godeaux(),
        ]),
    ]


def theorem_table() -> Table:
    header = ["kodaira_dim", "surfaces", "models", "conFN values"]
    rows = []
    for kod, label, build in _theorem_rows():
        models = build()
        rows.append([kod, label, str(len(models)), _value_set(models)])
    return header, rows


def bielliptic_table() -> Table:
    header = ["G", "#G", "G0", "#G0", "L^2", "conFN", "note"]
    rows = []
    for g in BiellipticType:
        note = f"descent yields L^2={g.descent_L_sq}" if g.descent_L_sq is not None else ""
        rows.append([g.label, str(g.order), g.stabilizer, str(g.stabilizer_order), str(g.L_sq),
                     verdict_cell(classify(make_bielliptic(g))), note])
    return header, rows


def enriques_table() -> Table:
    header = ["No.", "fibrations", "component counts", "max components", "conFN"]
    rows = []
    for number, fib_rows in sorted(ENRIQUES_TABLE_ROWS.items()):
        data = EnriquesData.from_rows(fib_rows)
        counts = ["(" + ",".join(str(c) for c in f.component_counts()) + ")" for f in data.fibrations]
        rows.append([
            str(number),
            "; ".join(f.describe() for f in data.fibrations),
            " ".join(counts),
            str(max(f.max_components for f in data.fibrations)),
            verdict_cell(enriques_fn(data)),
        ])
    return header, rows


def _unstable_profile(n: int, d: int) -> SlopeProfile:
    # a line subbundle of slope above d/n, the rest semistable
    top = d // n + 1
    return SlopeProfile.from_blocks([(top, 1), (f"{d - top}/{n - 1}", n - 1)])


def pe_grid_table(ranks: range = range(2, 6), degrees: range = range(-6, 7)) -> Table:
    header = ["n", "d", "gcd", "stable", "stable, Sym stable", "semistable not stable", "not semistable"]
    rows = []
    for n in ranks:
        for d in degrees:
            g = gcd(n, d)
            stable = fujita_number_PE(SlopeProfile.semistable(n, d, stable=True))
            sym = fujita_number_PE(SlopeProfile.semistable(n, d, stable=True, sym_powers_stable=True))
            if g > 1:
                semi = verdict_cell(fujita_number_PE(SlopeProfile.semistable(n, d, stable=False)))
            else:
                semi = "n/a"
            rows.append([str(n), str(d), str(g), verdict_cell(stable), verdict_cell(sym), semi,
                         verdict_cell(fujita_number_PE(_unstable_profile(n, d)))])
    return header, rows


TABLES: dict[str, Callable[[], Table]] = {
    "theoremA": theorem_table,
    "bielliptic": bielliptic_table,
    "enriques_examples": enriques_table,
    "pe_grid": pe_grid_table,
}


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|")


def render_markdown(table: Table) -> str:
    header, rows = table
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(_md_cell(c) for c in r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def render_csv(table: Table) -> str:
    header, rows = table
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render(name: str, fmt: str = "md") -> str:
    if name not in TABLES:
        raise KeyError(f"unknown table {name!r}; choose from {', '.join(TABLES)}")
    table = TABLES[name]()
    return render_csv(table) if fmt == "csv" else render_markdown(table)
