"""Batch drivers: screening plus constructions over parameter grids, with TSV and PNG output."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import certs  # noqa: E402
from .catalog import FamilySpec  # noqa: E402
from .decomposition import (  # noqa: E402
    certify_example1,
    certify_example2,
    certify_jvf_split,
    jvf_splits,
    screen,
)

REPORT_IDS = ("T2.1", "T3.1", "T4.5", "T5.1", "T5.2", "T5.3")
STATUSES = ("match", "edge", "mismatch")


class UnknownReport(ValueError):
    pass


@dataclass
class Cell:
    key: str
    target: str
    expected: str
    computed: str
    certificates: str
    status: str
    note: str = ""
    row: int = 0
    col: int = 0
    documents: list = field(default_factory=list, repr=False)


def _fmt_pairs(pairs) -> str:
    return "; ".join(" + ".join(p) for p in sorted(pairs)) or "none"


def _screen_cell(spec: FamilySpec, docs: list):
    rep = screen(spec)
    docs.append((f"screen_{spec}", certs.screening_document(rep)))
    return rep


# --- full matrix targets ------------------------------------------------------------------


def expected_matrix_families(n: int, m: int) -> tuple[set, bool]:
    """Oriented survivor keys with positive blocks, and whether a named family needs an M(0,k) part."""
    out, edge = set(), False
    if m % 2 == 0:
        if n >= 2:
            out.add((f"osp({n},{m // 2})@even", f"M({n - 1},{m})"))
        else:
            edge = True
    if n % 2 == 0:
        if m >= 2:
            out.add((f"osp({m},{n // 2})@odd", f"M({n},{m - 1})"))
        else:
            edge = True
    return out, edge


def report_T21(grid: int = 3, seed: int = 0) -> list[Cell]:
    cells = []
    for n in range(1, grid + 1):
        for m in range(1, grid + 1):
            docs: list = []
            spec = FamilySpec("M", (n, m))
            rep = _screen_cell(spec, docs)
            clean = rep.survivor_keys(annotated=False)
            noted = [p for p in rep.survivors if p.note]
            expected, edge = expected_matrix_families(n, m)
            verdicts = []
            for ok, fn, tag in ((m % 2 == 0 and n >= 2, certify_example1, "ex1"),
                                (n % 2 == 0 and m >= 2, certify_example2, "ex2")):
                if ok:
                    cert = fn(n, m, seed=seed)
                    docs.append((f"{tag}_M({n},{m})", certs.certificate_document(cert)))
                    verdicts.append(f"{tag}:{'accepted' if cert.accepted else cert.reason}")
            certs_ok = all(v.endswith("accepted") for v in verdicts)
            if clean == expected and certs_ok:
                status = "edge" if edge else "match"
            else:
                status = "mismatch"
            note = "; ".join(f"{p.a} + {p.b}: {p.note}" for p in noted)
            if edge:
                note = ("family with an M(0,k) part; " + note).rstrip("; ")
            cells.append(Cell(f"M({n},{m})", str(spec), _fmt_pairs(expected), _fmt_pairs(clean),
                              ", ".join(verdicts) or "-", status, note, n, m, docs))
    return cells


# --- targets with no decomposition --------------------------------------------------------


def _empty_cells(specs, row_of=lambda i, s: 0, col_of=lambda i, s: 0) -> list[Cell]:
    cells = []
    for i, spec in enumerate(specs):
        docs: list = []
        rep = _screen_cell(spec, docs)
        keys = rep.survivor_keys()
        status = "match" if not keys else "mismatch"
        cells.append(Cell(str(spec), str(spec), "none", _fmt_pairs(keys), "-", status, "",
                          row_of(i, spec), col_of(i, spec), docs))
    return cells


def report_T31(grid: int = 2, seed: int = 0) -> list[Cell]:
    specs = [FamilySpec("osp", (n, m)) for n in range(1, grid + 2) for m in range(1, grid + 1)]
    return _empty_cells(specs, lambda i, s: s.params[0], lambda i, s: s.params[1])


def report_T45(grid: int = 3, seed: int = 0) -> list[Cell]:
    specs = [FamilySpec(f, (n,)) for f in ("P", "Q") for n in range(2, grid + 1)]
    return _empty_cells(specs, lambda i, s: int(s.family == "Q"), lambda i, s: s.params[0])


def report_T52(grid: int = 1, seed: int = 0) -> list[Cell]:
    return _empty_cells([FamilySpec("K3")])


DT_GRID = (Fraction(1, 2), Fraction(2), Fraction(-2), Fraction(1, 3), Fraction(1))


def report_T53(grid: int = len(DT_GRID), seed: int = 0) -> list[Cell]:
    specs = [FamilySpec("Dt", (t,)) for t in DT_GRID[:grid]]
    return _empty_cells(specs, col_of=lambda i, s: i)


# --- spin factors -------------------------------------------------------------------------

JVF_GRID = ((2, 1), (3, 0), (1, 2), (4, 2), (3, 3))


def report_T51(grid: int = 3, seed: int = 0) -> list[Cell]:
    cells = []
    for i, (m0, n1) in enumerate(JVF_GRID[:grid]):
        docs: list = []
        spec = FamilySpec("JVf", (m0, n1))
        rep = _screen_cell(spec, docs)
        foreign = [p for p in rep.survivors if p.a.family != "JVf" or p.b.family != "JVf"]
        bad = []
        splits = jvf_splits(m0, n1)
        for a, b in splits:
            cert = certify_jvf_split(m0, n1, a, b, seed=seed)
            docs.append((f"split_{spec}_{a}_{b}", certs.certificate_document(cert)))
            if not cert.accepted or cert.intersection_dim != 1:
                bad.append(f"({a},{b}):{cert.reason},overlap {cert.intersection_dim}")
        status = "match" if not foreign and not bad and rep.survivors else "mismatch"
        cells.append(Cell(str(spec), str(spec), "JVf + JVf only; splits accepted",
                          _fmt_pairs(rep.survivor_keys()), f"{len(splits) - len(bad)}/{len(splits)} splits",
                          status, "; ".join(bad), 0, i, docs))
    return cells


DRIVERS = {
    "T2.1": report_T21,
    "T3.1": report_T31,
    "T4.5": report_T45,
    "T5.1": report_T51,
    "T5.2": report_T52,
    "T5.3": report_T53,
}


def run_report(report_id: str, grid: int | None = None, seed: int = 0) -> list[Cell]:
    if report_id not in DRIVERS:
        raise UnknownReport(f"unknown report id {report_id!r}; choose from {', '.join(REPORT_IDS)}")
    fn = DRIVERS[report_id]
    return fn(seed=seed) if grid is None else fn(grid=grid, seed=seed)


# --- output -------------------------------------------------------------------------------

COLUMNS = ("cell", "target", "expected", "computed", "certificates", "status", "note")


def write_tsv(cells: list[Cell], path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(COLUMNS)
        for c in cells:
            w.writerow((c.key, c.target, c.expected, c.computed, c.certificates, c.status, c.note))
    return path


_COLORS = {"match": "#4c9f70", "edge": "#e0b84a", "mismatch": "#c8553d"}


def plot_cells(cells: list[Cell], report_id: str, path: Path) -> Path:
    rows = sorted({c.row for c in cells})
    cols = sorted({c.col for c in cells})
    fig, ax = plt.subplots(figsize=(1.3 * len(cols) + 1.5, 1.0 * len(rows) + 1.2))
    for c in cells:
        x, y = cols.index(c.col), rows.index(c.row)
        ax.add_patch(plt.Rectangle((x, y), 0.95, 0.95, color=_COLORS[c.status]))
        ax.text(x + 0.475, y + 0.55, c.key, ha="center", va="center", fontsize=7)
        ax.text(x + 0.475, y + 0.3, c.status, ha="center", va="center", fontsize=6)
    ax.set_xlim(0, len(cols))
    ax.set_ylim(len(rows), 0)
    ax.set_xticks([i + 0.475 for i in range(len(cols))], [str(c) for c in cols])
    ax.set_yticks([i + 0.475 for i in range(len(rows))], [str(r) for r in rows])
    ax.set_title(f"{report_id}: computed vs expected")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(report_id: str, out_dir, grid: int | None = None, seed: int = 0):
    """Run a report and write <id>.tsv, <id>.png and per-cell documents under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells = run_report(report_id, grid, seed)
    tsv = write_tsv(cells, out / f"{report_id}.tsv")
    png = plot_cells(cells, report_id, out / f"{report_id}.png")
    doc_paths = []
    for c in cells:
        for name, doc in c.documents:
            safe = name.replace("(", "_").replace(")", "").replace(",", "-").replace("/", "_")
            doc_paths.append(certs.write(doc, out / "documents" / f"{safe}.json"))
    return cells, tsv, png, doc_paths
