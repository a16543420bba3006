"""Report types and their canonical serializations.

Reports are plain dataclasses; JSON output is byte-deterministic (sorted keys,
fixed indentation, trailing newline) so identical configurations produce
identical files regardless of worker count or scheduling.  Wall-clock timing
is recorded only on request, since it would break that guarantee; the
runtime_ms field is otherwise null.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .params import Params

TOOL_VERSION = "0.1.0"

FamilyEncoding = tuple[tuple[int, ...], ...]


def params_dict(p: Params) -> dict:
    return {
        "n": p.n,
        "k": p.k,
        "m": p.m_text,
        "m_effective": p.m_eff,
        "q": p.q,
        "w": p.w,
    }


def encode_family(members: FamilyEncoding) -> list[list[int]]:
    return [list(member) for member in members]


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of the bound-and-uniqueness verification for one (n, k, m)."""

    params: Params
    bound: int
    families_total: int
    families_checked: int
    iso_classes_checked: int
    achievers: tuple[FamilyEncoding, ...]
    achiever_class_sizes: tuple[int, ...]
    uniqueness_verdict: str  # unique-iso | multiple-iso | not-applicable
    lemma_violations: tuple[dict, ...]
    runtime_ms: int | None = None

    @property
    def passed(self) -> bool:
        return not self.lemma_violations

    def to_json_dict(self) -> dict:
        return {
            "kind": "theorem",
            "tool_version": TOOL_VERSION,
            "params": params_dict(self.params),
            "bound": self.bound,
            "families_total": self.families_total,
            "families_checked": self.families_checked,
            "iso_classes_checked": self.iso_classes_checked,
            "achievers": [encode_family(a) for a in self.achievers],
            "achiever_class_sizes": list(self.achiever_class_sizes),
            "uniqueness_verdict": self.uniqueness_verdict,
            "lemma_violations": list(self.lemma_violations),
            "runtime_ms": self.runtime_ms,
        }


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of one structural check over all qualifying maximal families."""

    check: str
    params: Params
    families_total: int
    families_checked: int
    candidates: int
    violations: tuple[dict, ...]
    notices: tuple[str, ...] = ()
    runtime_ms: int | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "kind": "lemma",
            "tool_version": TOOL_VERSION,
            "check": self.check,
            "params": params_dict(self.params),
            "families_total": self.families_total,
            "families_checked": self.families_checked,
            "candidates": self.candidates,
            "violations": list(self.violations),
            "notices": list(self.notices),
            "passed": self.passed,
            "runtime_ms": self.runtime_ms,
        }


def to_canonical_json(obj) -> str:
    if hasattr(obj, "to_json_dict"):
        obj = obj.to_json_dict()
    elif isinstance(obj, (list, tuple)):
        obj = [o.to_json_dict() if hasattr(o, "to_json_dict") else o for o in obj]
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


THEOREM_CSV_FIELDS = (
    "n", "k", "m", "bound", "families_checked", "iso_classes_checked",
    "achiever_classes", "uniqueness_verdict", "violations",
)


def theorem_reports_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=THEOREM_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow({
            "n": r.params.n,
            "k": r.params.k,
            "m": r.params.m_text,
            "bound": r.bound,
            "families_checked": r.families_checked,
            "iso_classes_checked": r.iso_classes_checked,
            "achiever_classes": len(r.achievers),
            "uniqueness_verdict": r.uniqueness_verdict,
            "violations": len(r.lemma_violations),
        })
    return buf.getvalue()


def theorem_report_text(r: TheoremReport) -> str:
    lines = [
        f"bound check {r.params.label()}",
        f"  tool version      {TOOL_VERSION}",
        f"  bound             {r.bound}",
        f"  families total    {r.families_total}",
        f"  families checked  {r.families_checked}",
        f"  iso classes       {r.iso_classes_checked}",
        f"  achiever classes  {len(r.achievers)} (sizes {list(r.achiever_class_sizes)})",
        f"  uniqueness        {r.uniqueness_verdict}",
        f"  violations        {len(r.lemma_violations)}",
        f"  result            {'pass' if r.passed else 'FAIL'}",
    ]
    return "\n".join(lines) + "\n"


def lemma_report_text(r: LemmaReport) -> str:
    lines = [
        f"{r.check} check {r.params.label()}",
        f"  families total    {r.families_total}",
        f"  families checked  {r.families_checked}",
        f"  candidates        {r.candidates}",
        f"  violations        {len(r.violations)}",
    ]
    for note in r.notices:
        lines.append(f"  note: {note}")
    lines.append(f"  result            {'pass' if r.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
