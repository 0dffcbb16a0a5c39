"""Machine-readable analysis reports and their text summaries."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .exactmath import SeriesWindow
from .hilbert import VanishingReport, Verdict
from .vanishing import VerificationResult, verify_verdict

REPORT_SCHEMA = "extvanish.report/1"


@dataclass
class ReportDocument:
    """Everything a run produced.  ``to_json`` is deterministic (sorted keys)."""

    input: dict
    ext_dims: SeriesWindow
    analysis_window: SeriesWindow
    holdout: SeriesWindow | None
    acting_degrees: list
    even_degrees: list
    generating_function: dict | None
    reduced: dict | None
    quasi_polynomial: dict | None
    report: VanishingReport
    witness: dict | None
    verification: VerificationResult | None
    timing: dict | None = dc_field(default=None)

    def to_dict(self) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "input": self.input,
            "ext_dims": self.ext_dims.to_json(),
            "analysis_window": self.analysis_window.to_json(),
            "holdout": self.holdout.to_json() if self.holdout is not None else None,
            "acting_degrees": list(self.acting_degrees),
            "even_degrees": list(self.even_degrees),
            "generating_function": self.generating_function,
            "reduced": self.reduced,
            "quasi_polynomial": self.quasi_polynomial,
            "report": self.report.to_dict(),
            "witness": self.witness,
            "verification": self.verification.to_dict() if self.verification is not None else None,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        if data.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"not a report document (schema {data.get('schema')!r})")
        hold = data.get("holdout")
        ver = data.get("verification")
        return cls(
            input=data["input"],
            ext_dims=SeriesWindow.from_json(data["ext_dims"]),
            analysis_window=SeriesWindow.from_json(data["analysis_window"]),
            holdout=SeriesWindow.from_json(hold) if hold else None,
            acting_degrees=data["acting_degrees"],
            even_degrees=data["even_degrees"],
            generating_function=data["generating_function"],
            reduced=data["reduced"],
            quasi_polynomial=data["quasi_polynomial"],
            report=VanishingReport.from_dict(data["report"]),
            witness=data["witness"],
            verification=VerificationResult.from_dict(ver) if ver else None,
            timing=data.get("timing"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def reverify(self) -> VerificationResult | None:
        """Re-run the holdout check from the stored verdict."""
        if self.holdout is None:
            return None
        return verify_verdict(self.report, self.holdout)


def _residue_set(rs) -> str:
    return "{" + ", ".join(str(r) for r in rs) + "}"


def pattern_sentence(report: VanishingReport) -> str:
    """One sentence describing where the pieces vanish from ``m0`` on."""
    m0 = report.m0
    if report.verdict is Verdict.EVENTUALLY_ZERO:
        return f"Ext^n(M, N) = 0 for all n >= {m0}."
    d = report.period
    rs = report.nonvanishing_residues
    if d == 1 or len(rs) == d:
        tail = " (both parity classes: all even and all odd n)" if d == 2 else ""
        return f"Ext^n(M, N) != 0 for all n >= {m0}{tail}."
    if d == 2:
        on, off = ("even", "odd") if rs == (0,) else ("odd", "even")
        return (f"Ext^n(M, N) != 0 for all {on} n >= {m0} and = 0 for all {off} n >= {m0} "
                f"(all even or all odd: here all {on}).")
    return f"Ext^n(M, N) != 0 exactly for n >= {m0} with n mod {d} in {_residue_set(rs)}."


def summary_text(doc: ReportDocument) -> str:
    r = doc.report
    lines = [
        f"verdict: {r.verdict.value}",
        f"period d = {r.period} (lcm of even-part degrees {doc.even_degrees})",
        f"nonvanishing residues mod {r.period}: {_residue_set(r.nonvanishing_residues)}",
        f"m0 = {r.m0}",
        f"provenance: {r.provenance}",
        pattern_sentence(r),
    ]
    if r.minimal_period is not None and r.minimal_period != r.period:
        lines.append(f"minimal period of the quasi-polynomial: {r.minimal_period}")
    if doc.witness is not None:
        a, b = doc.witness["certified_range"]
        lines.append(f"regular element of degree {doc.witness['degree']} injective on [{a}, {b}]")
    v = doc.verification
    if v is not None:
        if v.passed:
            lines.append(f"holdout check: pass ({v.checked} degrees from {doc.holdout.start} to {doc.holdout.stop - 1})")
        else:
            lines.append(f"holdout check: FAIL at n = {v.position} (expected "
                         f"{'nonzero' if v.expected_nonzero else 'zero'}, got {v.actual})")
    return "\n".join(lines) + "\n"
