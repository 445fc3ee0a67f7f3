"""Anomaly registry.

Empirically-validated procedures (the canonical probe set, the heuristic
order strategies) are required to log any observed counterexample rather
than patch around it.  Tests assert that this registry stays empty.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

log = logging.getLogger("ordarena.findings")


@dataclass
class Finding:
    source: str
    detail: str
    context: dict = field(default_factory=dict)


_FINDINGS: list[Finding] = []


def record(source: str, detail: str, **context) -> Finding:
    f = Finding(source, detail, dict(context))
    _FINDINGS.append(f)
    log.warning("finding[%s]: %s %s", source, detail, context)
    return f


def all_findings() -> list[Finding]:
    return list(_FINDINGS)


def drain() -> list[Finding]:
    out = list(_FINDINGS)
    _FINDINGS.clear()
    return out
