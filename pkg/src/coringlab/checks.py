"""Verification reports shared by the algebraic checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

WITNESS_LIMIT = 8


@dataclass
class CheckReport:
    """Named pass/fail results with the failing basis tuples of each check.

    Truthy iff every check passed.
    """
    title: str
    results: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def add(self, name, failures):
        failures = list(failures)
        self.results[name] = not failures
        if failures:
            self.witnesses[name] = failures[:WITNESS_LIMIT]
        return not failures

    def merge(self, other: "CheckReport", prefix=None):
        prefix = prefix or other.title
        for k, v in other.results.items():
            self.results["%s.%s" % (prefix, k)] = v
        for k, v in other.witnesses.items():
            self.witnesses["%s.%s" % (prefix, k)] = v
        return self

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def __bool__(self):
        return self.ok

    def failed(self):
        return [k for k, v in self.results.items() if not v]

    def as_dict(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "results": {k: ("pass" if v else "fail") for k, v in self.results.items()},
            "witnesses": {k: [list(w) if isinstance(w, tuple) else w for w in ws]
                          for k, ws in self.witnesses.items()},
        }

    def __str__(self):
        lines = ["%s: %s" % (self.title, "pass" if self.ok else "FAIL")]
        for k, v in self.results.items():
            line = "  %-28s %s" % (k, "pass" if v else "FAIL")
            if k in self.witnesses:
                line += "  witnesses=%s" % (self.witnesses[k],)
            lines.append(line)
        return "\n".join(lines)


def nonzero_columns(field, defect):
    """Indices of columns of ``defect`` that are not identically zero."""
    import numpy as np
    defect = np.asarray(defect)
    if defect.size == 0:
        return []
    return [int(j) for j in np.flatnonzero(np.any(defect != 0, axis=0))]
