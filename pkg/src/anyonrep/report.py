"""Relation reports and the identity-checking primitive.

Every verified identity produces one :class:`RelationReport`.  ``passed`` is
always ``residual <= tol``; sensitivity controls that are *expected* to fail
carry ``expect_fail=True`` and count as satisfied when they do fail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, asdict

import scipy.sparse as sp

from .fock import residual_norm


@dataclass
class RelationReport:
    relation_id: str
    equation: str
    params: dict = field(default_factory=dict)
    projector: str = "identity"
    residual: float = 0.0
    tol: float = 1e-10
    passed: bool = True
    applicable: bool = True
    expect_fail: bool = False
    informational: bool = False
    wall_time: float = 0.0

    @property
    def satisfied(self) -> bool:
        """Whether this report counts as OK for the run outcome."""
        if not self.applicable or self.informational:
            return True
        return (not self.passed) if self.expect_fail else self.passed

    def to_dict(self) -> dict:
        return asdict(self)

    def summary_line(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        if not self.applicable:
            mark = "n/a"
        elif self.informational:
            mark = "info"
        elif self.expect_fail:
            mark = "fails-as-expected" if not self.passed else "UNEXPECTED-PASS"
        return (f"{self.relation_id:<34} {self.equation:<12} "
                f"residual={self.residual:.3e}  [{self.projector}]  {mark}")


def check_identity(relation_id: str, equation: str, lhs: sp.spmatrix,
                   rhs: sp.spmatrix, projector: sp.spmatrix | None = None, *,
                   tol: float, params: dict | None = None,
                   projector_desc: str | None = None,
                   projector_side: str = "both",
                   expect_fail: bool = False,
                   informational: bool = False) -> RelationReport:
    """Residual of lhs - rhs, sandwiched (or right-multiplied) by a projector.

    ``projector_side`` is "both" for P (lhs - rhs) P or "right" for
    (lhs - rhs) P, the latter used for identities that annihilate a protected
    subspace outright.
    """
    t0 = time.perf_counter()
    if lhs.shape != rhs.shape:
        raise ValueError(f"operator dimensions differ: {lhs.shape} vs {rhs.shape}")
    diff = (lhs - rhs).tocsr()
    if projector is None:
        desc = "identity"
    else:
        if projector.shape != diff.shape:
            raise ValueError("projector dimension mismatch")
        if projector_side == "both":
            diff = projector @ diff @ projector
            desc = projector_desc or "projected"
        elif projector_side == "right":
            diff = diff @ projector
            desc = (projector_desc or "projected") + ",right"
        else:
            raise ValueError(f"unknown projector_side {projector_side!r}")
    res = residual_norm(diff)
    return RelationReport(
        relation_id=relation_id,
        equation=equation,
        params=dict(params or {}),
        projector=desc,
        residual=res,
        tol=tol,
        passed=res <= tol,
        expect_fail=expect_fail,
        informational=informational,
        wall_time=time.perf_counter() - t0,
    )


def not_applicable(relation_id: str, equation: str, reason: str,
                   params: dict | None = None) -> RelationReport:
    p = dict(params or {})
    p["reason"] = reason
    return RelationReport(relation_id=relation_id, equation=equation, params=p,
                          projector="-", residual=0.0, tol=0.0, passed=True,
                          applicable=False)


def reports_ok(reports) -> bool:
    return all(r.satisfied for r in reports)
