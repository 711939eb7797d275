"""Assembling analysis results into one deterministic report.

The report is a plain dict of JSON types with a fixed key order, so
serializing it twice for the same input gives identical bytes.  Floats
are emitted in Python's shortest lossless form (at most 17 significant
digits), which round-trips exactly.
"""

from __future__ import annotations

import json

import numpy as np

from . import __version__
from .bounds import hwh_bound, mean_bound, schur_upper_bound, walk_bound, weighted_bound
from .classify import (
    certify_theorem2,
    certify_theorem2_1,
    certify_theorem3,
    certify_theorem4,
    classify,
    hwh_equality_certificate,
)
from .core import DenseMatrix, detect_scalar, max_modulus
from .errors import PreconditionError
from .spectral import largest_singular
from .structure import decompose

SCHEMA_VERSION = 1

_WALK_GRID = ((3, 1), (5, 1), (7, 1), (9, 1), (5, 3), (7, 3), (9, 3))
_WEIGHTED_GRID = (1, 2, 3)


def _num(x):
    if x is None:
        return None
    if isinstance(x, (bool, int, str)):
        return x
    return float(x)


def _complex_dict(z) -> dict | None:
    if z is None:
        return None
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def _bound_dict(report) -> dict:
    return {
        "method": report.method,
        "params": {k: _num(v) for k, v in sorted(report.params.items())},
        "value": float(report.value),
        "sigma": float(report.sigma),
        "gap": float(report.gap),
        "tight": bool(report.tight),
        "certificate": report.certificate,
    }


def _certificate_dict(cert) -> dict:
    return {
        "theorem": cert.theorem,
        "holds": bool(cert.holds),
        "gap": float(cert.gap),
        "implied_class_verified": cert.implied_class_verified,
        "details": {k: _num(v) for k, v in sorted(cert.details.items())},
    }


def _hwh_applicable(a: DenseMatrix) -> bool:
    data = a.data
    if data.shape[0] != data.shape[1] or not a.is_real():
        return False
    scale = max(max_modulus(a), 1e-300)
    if float(np.abs(data - data.T).max()) > 1e-12 * scale:
        return False
    if data.real.min() < 0.0:
        return False
    return bool(data.real.sum(axis=1).min() > 0.0)


def full_analysis(a: DenseMatrix, *, tol: float = 1e-8, max_iter: int = 10_000,
                  literal_t3: bool = False) -> dict:
    """Run the whole pipeline on one matrix and return the report body."""
    notes: list[str] = []
    spectral = largest_singular(a, max_iter=max_iter)
    sigma = spectral.sigma
    sc = detect_scalar(a, tol)
    zero = max_modulus(a) == 0.0

    bound_reports = []
    if sc.is_scalar:
        for p, r in _WALK_GRID:
            bound_reports.append(walk_bound(a, p, r, tol=tol, sigma=sigma))
    else:
        notes.append("walk ratio bounds skipped: matrix is not scalar")
    for r in _WEIGHTED_GRID:
        bound_reports.append(weighted_bound(a, r, tol=tol, sigma=sigma))
    bound_reports.append(mean_bound(a, tol=tol, sigma=sigma))
    if _hwh_applicable(a):
        bound_reports.append(hwh_bound(a, tol=tol, sigma=sigma))
    if a.is_nonneg():
        bound_reports.append(schur_upper_bound(a, tol=tol, sigma=sigma))

    try:
        report = classify(a, tol)
        classification = {
            "is_scalar": True,
            "phase": _complex_dict(report.scalarity.phase),
            "is_regular": report.is_regular,
            "is_pseudo_regular": report.is_pseudo_regular,
            "pseudo_lambda": _num(report.pseudo_lambda),
            "is_almost_regular": report.is_almost_regular,
            "per_component": [
                {"regular": s.regular, "sigma": float(s.sigma)}
                for s in report.per_component
            ],
            "error": None,
        }
    except PreconditionError as exc:
        classification = {
            "is_scalar": sc.is_scalar,
            "phase": _complex_dict(sc.phase),
            "is_regular": None,
            "is_pseudo_regular": None,
            "pseudo_lambda": None,
            "is_almost_regular": None,
            "per_component": [],
            "error": str(exc),
        }

    certificates = []
    if zero:
        notes.append("certificates skipped: zero matrix")
    else:
        certificates.append(_certificate_dict(certify_theorem2(a, s=1, r=0, tol=tol)))
        certificates.append(_certificate_dict(certify_theorem2_1(a, r=1, s=1, tol=tol)))
        certificates.append(_certificate_dict(
            certify_theorem3(a, r=2, tol=tol, include_literal=literal_t3)
        ))
        certificates.append(_certificate_dict(certify_theorem4(a, tol=tol)))
        if _hwh_applicable(a):
            certificates.append(_certificate_dict(hwh_equality_certificate(a, tol=tol)))

    dec = decompose(a)
    components = {
        "count": len(dec.components),
        "isolated_rows": list(dec.isolated_rows),
        "isolated_cols": list(dec.isolated_cols),
        "row_perm": list(dec.row_perm),
        "col_perm": list(dec.col_perm),
        "components": [
            {
                "rows": list(comp.row_indices),
                "cols": list(comp.col_indices),
                "shape": [len(comp.row_indices), len(comp.col_indices)],
                "sigma": largest_singular(comp.submatrix).sigma,
            }
            for comp in dec.components
        ],
    }

    return {
        "schema": SCHEMA_VERSION,
        "sigma": {
            "value": float(sigma),
            "method": "power_iteration",
            "residual": float(spectral.residual),
            "iterations": int(spectral.iterations),
        },
        "bounds": [_bound_dict(b) for b in bound_reports],
        "classification": classification,
        "certificates": certificates,
        "components": components,
        "notes": notes,
        "tool_version": __version__,
        "tolerances": {"tol": float(tol), "max_iter": int(max_iter)},
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False)


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def render_text(report: dict) -> str:
    lines = []
    if "input" in report:
        meta = report["input"]
        lines.append(
            f"input: {meta.get('path', '?')} "
            f"({meta.get('shape', ['?', '?'])[0]}x{meta.get('shape', ['?', '?'])[1]}, "
            f"{meta.get('format', '?')})"
        )
    sig = report["sigma"]
    lines.append(
        f"sigma: {_fmt(sig['value'])}  "
        f"(power iteration, {sig['iterations']} iterations, "
        f"residual {sig['residual']:.3g})"
    )
    lines.append("bounds:")
    lines.append("  method    params        value            gap              tight")
    for b in report["bounds"]:
        params = " ".join(f"{k}={v}" for k, v in b["params"].items()) or "-"
        lines.append(
            f"  {b['method']:<9} {params:<13} {b['value']:<16.10g} "
            f"{b['gap']:<16.3g} {_fmt(b['tight'])}"
        )
    cls = report["classification"]
    if cls["error"]:
        lines.append(f"classification: unavailable ({cls['error']})")
    else:
        lam = f" (lambda {_fmt(cls['pseudo_lambda'])})" if cls["pseudo_lambda"] is not None else ""
        lines.append(
            "classification: "
            f"scalar {_fmt(cls['is_scalar'])}; regular {_fmt(cls['is_regular'])}; "
            f"pseudo-regular {_fmt(cls['is_pseudo_regular'])}{lam}; "
            f"almost-regular {_fmt(cls['is_almost_regular'])}"
        )
    comp = report["components"]
    lines.append(
        f"components: {comp['count']}  "
        f"isolated rows {comp['isolated_rows'] or 'none'}  "
        f"isolated cols {comp['isolated_cols'] or 'none'}"
    )
    if report["certificates"]:
        lines.append("certificates:")
        for c in report["certificates"]:
            implied = _fmt(c["implied_class_verified"])
            lines.append(
                f"  {c['theorem']:<5} holds {_fmt(c['holds']):<4} "
                f"gap {c['gap']:<12.3g} implied-class {implied}"
            )
    for note in report.get("notes", ()):
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"
