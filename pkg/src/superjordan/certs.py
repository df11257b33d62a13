"""JSON certificate documents: dumps, loads and re-validation.

A document is a JSON object with sorted keys::

    {"format_version": ..., "kind": ..., "payload": {...},
     "provenance": {"generator": ..., "rule_set_version": ..., "seed": ...}}

Rationals are "p/q" strings and matrices are nested arrays of such strings,
so a document round-trips without loss and diffs cleanly.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .catalog import FamilySpec, build, parse_spec
from .decomposition.certificate import DecompositionCertificate, PartRecord, verify_sum
from .decomposition.screening import RULE_SET_VERSION, ScreeningReport, screen
from .exact_linalg import Mat, parse_rational, rational_str
from .superalgebra import (
    AxiomReport,
    GradedMatrixRealization,
    SimplicityVerdict,
    SuperAlgebra,
    check_axioms,
)

FORMAT_VERSION = "1"
KINDS = ("algebra", "axioms", "decomposition", "screening")


class DocumentError(ValueError):
    """Malformed or unknown document."""


# --- envelope -----------------------------------------------------------------------------


def document(kind: str, payload: dict, seed: int | None = None) -> dict:
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    return {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "payload": payload,
        "provenance": {
            "generator": f"superjordan {__version__}",
            "rule_set_version": RULE_SET_VERSION,
            "seed": seed,
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def write(doc: dict, path: str | os.PathLike) -> Path:
    """Write atomically: temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(dumps(doc))
    os.replace(tmp, path)
    return path


def read(path: str | os.PathLike) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS or "payload" not in doc:
        raise DocumentError(f"{path}: not a certificate document")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"{path}: format version {doc.get('format_version')!r} unsupported")
    return doc


# --- small values -------------------------------------------------------------------------


def mat_out(M: Mat | None):
    return None if M is None else M.to_nested()


def mat_in(data, cols: int | None = None) -> Mat | None:
    if data is None:
        return None
    return Mat.from_nested(data, cols=cols)


def _spec_str(spec: FamilySpec | None) -> str | None:
    return None if spec is None else str(spec)


def _dims(d) -> list | None:
    return None if d is None else [int(d[0]), int(d[1])]


# --- algebras -----------------------------------------------------------------------------


def algebra_payload(alg: SuperAlgebra) -> dict:
    real = alg.realization
    return {
        "name": alg.name,
        "dim": alg.dim,
        "parity_dims": _dims(alg.parity_dims),
        "parity": [str(int(p)) for p in alg.parity],
        "structure_constants": [[i, j, k, rational_str(c)] for i, j, k, c in alg.quadruples()],
        "realization": None if real is None else {
            "block_even": real.block_even,
            "block_odd": real.block_odd,
            "matrices": [M.to_nested() for M in real.basis_mats],
        },
    }


def algebra_from_payload(p: dict) -> SuperAlgebra:
    try:
        real = None
        if p.get("realization") is not None:
            r = p["realization"]
            mats = tuple(Mat.from_nested(M) for M in r["matrices"])
            real = GradedMatrixRealization(int(r["block_even"]), int(r["block_odd"]), mats)
        quads = [(int(i), int(j), int(k), parse_rational(c)) for i, j, k, c in p["structure_constants"]]
        parity = [int(x) for x in p["parity"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad algebra payload: {exc}") from exc
    if any(x not in (0, 1) for x in parity):
        raise DocumentError("parities must be '0' or '1'")
    n = len(parity)
    if any(not (0 <= i < n and 0 <= j < n and 0 <= k < n) for i, j, k, _ in quads):
        raise DocumentError("structure constant index out of range")
    return SuperAlgebra.from_quadruples(parity, quads, real, p.get("name", ""))


# --- axiom reports ------------------------------------------------------------------------


def axioms_payload(alg: SuperAlgebra, rep: AxiomReport) -> dict:
    return {
        "algebra": algebra_payload(alg),
        "ok": rep.ok,
        "grading_violations": [list(t) for t in rep.grading],
        "supercommutativity_violations": [list(t) for t in rep.supercommutativity],
        "jordan_violations_listed": [list(t) for t in rep.jordan_identity],
        "jordan_violation_count": rep.jordan_violation_count,
        "triples_checked": rep.triples_checked,
    }


# --- decomposition certificates -----------------------------------------------------------


def _verdict_out(v: SimplicityVerdict | None):
    if v is None:
        return None
    return {
        "kind": v.kind,
        "witness": mat_out(v.witness),
        "burnside_dim": v.burnside_dim,
        "reason": v.reason,
        "seed": v.seed,
        "prime": v.prime,
    }


def _part_out(r: PartRecord) -> dict:
    return {
        "claim": _spec_str(r.claim),
        "basis": mat_out(r.basis),
        "dim": r.dim,
        "parity_dims": _dims(r.parity_dims),
        "claimed_dims": _dims(r.claimed_dims),
        "closed": r.closed,
        "proper": r.proper,
        "simplicity": _verdict_out(r.simplicity),
        "contains_identity": r.contains_identity,
    }


def certificate_payload(cert: DecompositionCertificate) -> dict:
    return {
        "target": cert.target,
        "target_dims": _dims(cert.target_dims),
        "part_a": _part_out(cert.part_a),
        "part_b": _part_out(cert.part_b),
        "span_rank": cert.span_rank,
        "span_rank_even": cert.span_rank_even,
        "span_rank_odd": cert.span_rank_odd,
        "intersection_even": cert.intersection_even,
        "intersection_odd": cert.intersection_odd,
        "accepted": cert.accepted,
        "reason": cert.reason,
        "failures": list(cert.failures),
        "notes": list(cert.notes),
        "seed": cert.seed,
    }


def certificate_document(cert: DecompositionCertificate) -> dict:
    return document("decomposition", certificate_payload(cert), cert.seed)


# --- screening reports --------------------------------------------------------------------


def screening_payload(rep: ScreeningReport, max_dim: int | None = None) -> dict:
    return {
        "target": str(rep.target),
        "max_dim": max_dim,
        "candidate_count": len(rep.candidates),
        "survivors": [
            {"a": str(p.a), "b": str(p.b), "trace": "survives", "note": p.note} for p in rep.survivors
        ],
        "excluded": [
            {
                "a": str(p.a),
                "b": str(p.b),
                "trace": [{
                    "rule": p.exclusion.rule,
                    "anchor": p.exclusion.anchor,
                    "detail": p.exclusion.detail,
                    "heuristic": p.exclusion.heuristic,
                }],
            }
            for p in rep.excluded
        ],
        "rule_counts": rep.rule_counts(),
        "rule_set_version": rep.rule_set_version,
    }


def screening_document(rep: ScreeningReport, max_dim: int | None = None) -> dict:
    return document("screening", screening_payload(rep, max_dim))


# --- re-validation ------------------------------------------------------------------------


def _target_algebra(name: str) -> SuperAlgebra:
    return build(parse_spec(name), strict=False)


def _claim(s):
    return None if s is None else parse_spec(s)


def recompute(doc: dict) -> dict:
    """Recompute the payload of a document from its stored inputs."""
    kind, p = doc["kind"], doc["payload"]
    seed = (doc.get("provenance") or {}).get("seed")
    if kind == "algebra":
        return algebra_payload(algebra_from_payload(p))
    if kind == "axioms":
        alg = algebra_from_payload(p["algebra"])
        return axioms_payload(alg, check_axioms(alg))
    if kind == "decomposition":
        T = _target_algebra(p["target"])
        a, b = p["part_a"], p["part_b"]
        cert = verify_sum(T, mat_in(a["basis"], T.dim), mat_in(b["basis"], T.dim),
                          _claim(a["claim"]), _claim(b["claim"]), seed=p.get("seed") or 0,
                          target_name=p["target"])
        cert.notes += [n for n in p.get("notes", []) if n.startswith("outside hypotheses")]
        return certificate_payload(cert)
    if kind == "screening":
        return screening_payload(screen(parse_spec(p["target"]), p.get("max_dim")), p.get("max_dim"))
    raise DocumentError(f"unknown kind {kind!r}")


def verdict_of(doc: dict) -> bool:
    kind, p = doc["kind"], doc["payload"]
    if kind == "decomposition":
        return bool(p["accepted"])
    if kind == "axioms":
        return bool(p["ok"])
    return True


def check(doc: dict) -> tuple[bool, list[str]]:
    """(reproduced, differences): recompute and compare field by field."""
    again = recompute(doc)
    stored = doc["payload"]
    diffs = []
    for key in sorted(set(stored) | set(again)):
        if stored.get(key) != again.get(key):
            diffs.append(key)
    return not diffs, diffs
