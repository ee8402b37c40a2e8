"""Number operators, normal-ordering prescriptions, and q-deformed bosons.

Two normal orderings are supported per line.  The "sea" scheme subtracts the
filled-Dirac-sea reference: fermionic :n:(r) = n(r) - 1 and bosonic
:n':(r) = n'(r) + 1 at negative sites.  The "empty" scheme keeps bare
occupation numbers everywhere.  q-bosons are built from ordinary truncated
bosons by rescaling matrix elements, b|n> = sqrt([n]_q) |n-1>.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .fock import (
    BOSON,
    FERMION,
    SEA,
    FockBasis,
    LatticeConfig,
    ModeId,
    NO_CORRUPTION,
    Corruption,
    build_basis,
    bulk_projector,
    boson_annihilate,
    diag_operator,
    fermion_annihilate,
    identity_op,
    op_adjoint,
    q_number,
    q_power,
)
from .report import RelationReport, check_identity


def number_diag(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> np.ndarray:
    """Occupation of ``mode`` on every basis state, as a real vector."""
    if mode.kind == FERMION:
        occ = basis.f_occ[:, basis.fermion_slot(mode)].astype(float)
        return np.repeat(occ, basis.NB)
    occ = basis.b_occ[:, basis.boson_slot(mode)].astype(float)
    return np.tile(occ, basis.NF)


def number_op(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    """n = c^dag c (fermion) or n' = d^dag d (boson); diagonal."""
    return diag_operator(number_diag(cfg, basis, mode))


def normal_order_shift(cfg: LatticeConfig, mode: ModeId, scheme: str | None = None) -> int:
    """Constant added to the bare number by the normal ordering."""
    sch = scheme or cfg.line_ordering(mode.line)
    if sch == SEA and mode.site < 0:
        return -1 if mode.kind == FERMION else +1
    return 0


def normal_number_diag(cfg: LatticeConfig, basis: FockBasis, mode: ModeId,
                       scheme: str | None = None) -> np.ndarray:
    return number_diag(cfg, basis, mode) + normal_order_shift(cfg, mode, scheme)


def normal_ordered_number(cfg: LatticeConfig, basis: FockBasis, mode: ModeId,
                          scheme: str | None = None) -> sp.csr_matrix:
    """:n:(r); differs from the bare number operator by a multiple of Id."""
    return diag_operator(normal_number_diag(cfg, basis, mode, scheme))


def q_boson_annihilate(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    """b with b|n> = sqrt([n]_q) |n-1>.

    Resolves the 0/0 of the operator rescaling d * sqrt([n']/n') at n' = 0 by
    the matrix-element definition; config validation guarantees [n]_q > 0 up
    to the cutoff so the positive square root is real.
    """
    if mode.kind != BOSON:
        raise ValueError(f"{mode} is not bosonic")
    q = cfg.q
    j = basis.boson_slot(mode)
    stride = (cfg.n_max + 1) ** j
    occ = basis.b_occ[:, j]
    src = np.nonzero(occ)[0]
    dst = src - stride
    amps = np.sqrt(np.array([q_number(int(n), q).real for n in occ[src]]))
    nb = basis.NB
    fblock = np.arange(basis.NF, dtype=np.int64) * nb
    rows = (fblock[:, None] + dst).ravel()
    cols = (fblock[:, None] + src).ravel()
    data = np.tile(amps.astype(complex), basis.NF)
    return sp.csr_matrix((data, (rows, cols)), shape=(basis.dim, basis.dim))


def q_boson_create(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    return op_adjoint(q_boson_annihilate(cfg, basis, mode))


# ---------------------------------------------------------------------------
# relation suite
# ---------------------------------------------------------------------------

def _mode_pairs(modes, cap: int = 6):
    """Deterministic pair sample: exhaustive for small mode sets."""
    sel = list(modes) if len(modes) <= cap else list(modes[:cap - 2]) + list(modes[-2:])
    return [(m1, m2) for m1 in sel for m2 in sel]


def suite_oscillators(cfg: LatticeConfig,
                      corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """Canonical (anti)commutators, mixed commutativity, and the q-boson
    relations; relations that raise boson number run under a headroom-1
    projector instead of pretending the cutoff away."""
    basis = build_basis(cfg)
    q = cfg.q
    tol = cfg.tol
    one = identity_op(basis)
    head1 = bulk_projector(cfg, basis, 0, 1)
    reports: list[RelationReport] = []

    cs = {m: fermion_annihilate(cfg, basis, m) for m in basis.fermion_modes}
    ds = {m: boson_annihilate(cfg, basis, m) for m in basis.boson_modes}
    bs = {m: q_boson_annihilate(cfg, basis, m) for m in basis.boson_modes}

    for m1, m2 in _mode_pairs(basis.fermion_modes):
        c1, c2 = cs[m1], cs[m2]
        delta = one if m1 == m2 else None
        rhs = one if m1 == m2 else 0 * one
        reports.append(check_identity(
            f"eq20[{m1},{m2}+]", "Eq. (20)",
            c1 @ op_adjoint(c2) + op_adjoint(c2) @ c1, rhs,
            tol=tol, params={"modes": [str(m1), str(m2)]}))
        reports.append(check_identity(
            f"eq20[{m1},{m2}]", "Eq. (20)",
            c1 @ c2 + c2 @ c1, 0 * one,
            tol=tol, params={"modes": [str(m1), str(m2)]}))

    for m1, m2 in _mode_pairs(basis.boson_modes):
        d1, d2 = ds[m1], ds[m2]
        rhs = one if m1 == m2 else 0 * one
        reports.append(check_identity(
            f"eq21[{m1},{m2}+]", "Eq. (21)",
            d1 @ op_adjoint(d2) - op_adjoint(d2) @ d1, rhs,
            head1, projector_desc="margin=0,headroom=1",
            tol=tol, params={"modes": [str(m1), str(m2)]}))
        reports.append(check_identity(
            f"eq21[{m1},{m2}]", "Eq. (21)",
            d1 @ d2 - d2 @ d1, 0 * one,
            tol=tol, params={"modes": [str(m1), str(m2)]}))

    for mf in basis.fermion_modes[:4]:
        for mb in basis.boson_modes[:4]:
            c, d = cs[mf], ds[mb]
            reports.append(check_identity(
                f"eq30[{mf},{mb}]", "Eq. (30)",
                c @ d - d @ c, 0 * one, tol=tol,
                params={"modes": [str(mf), str(mb)]}))
            reports.append(check_identity(
                f"eq30[{mf},{mb}+]", "Eq. (30)",
                c @ op_adjoint(d) - op_adjoint(d) @ c, 0 * one, tol=tol,
                params={"modes": [str(mf), str(mb)]}))

    # q-boson algebra
    for m in basis.boson_modes:
        b = bs[m]
        bd = op_adjoint(b)
        nvec = number_diag(cfg, basis, m)
        q_minus_n = diag_operator(q_power(q, -nvec))
        q_plus_n = diag_operator(q_power(q, nvec))
        reports.append(check_identity(
            f"eq49a[{m}]", "Eq. (49a)", b @ bd - q * (bd @ b), q_minus_n,
            head1, projector_desc="margin=0,headroom=1",
            tol=tol, params={"mode": str(m)}))
        reports.append(check_identity(
            f"eq49b[{m}]", "Eq. (49b)", b @ bd - (bd @ b) / q, q_plus_n,
            head1, projector_desc="margin=0,headroom=1",
            tol=tol, params={"mode": str(m)}))
        nop = number_op(cfg, basis, m)
        reports.append(check_identity(
            f"eq49d[{m}]", "Eq. (49d)", nop @ b - b @ nop, -1 * b,
            tol=tol, params={"mode": str(m)}))
        reports.append(check_identity(
            f"eq49e[{m}]", "Eq. (49e)", nop @ bd - bd @ nop, bd,
            tol=tol, params={"mode": str(m)}))
        bracket = diag_operator(np.array([q_number(n, q) for n in nvec]))
        bracket1 = diag_operator(np.array([q_number(n + 1, q) for n in nvec]))
        reports.append(check_identity(
            f"eq50a[{m}]", "Eq. (50)", bd @ b, bracket,
            tol=tol, params={"mode": str(m)}))
        reports.append(check_identity(
            f"eq50b[{m}]", "Eq. (50)", b @ bd, bracket1,
            head1, projector_desc="margin=0,headroom=1",
            tol=tol, params={"mode": str(m)}))

    for m1, m2 in _mode_pairs(basis.boson_modes):
        if m1 == m2:
            continue
        b1, b2 = bs[m1], bs[m2]
        reports.append(check_identity(
            f"eq49c[{m1},{m2}]", "Eq. (49c)", b1 @ b2 - b2 @ b1, 0 * one,
            tol=tol, params={"modes": [str(m1), str(m2)]}))
        reports.append(check_identity(
            f"eq49a0[{m1},{m2}]", "Eq. (49a)",
            b1 @ op_adjoint(b2) - op_adjoint(b2) @ b1, 0 * one,
            tol=tol, params={"modes": [str(m1), str(m2)]}))
        reports.append(check_identity(
            f"eq49d0[{m1},{m2}]", "Eq. (49d)",
            number_op(cfg, basis, m1) @ b2 - b2 @ number_op(cfg, basis, m1),
            0 * one, tol=tol, params={"modes": [str(m1), str(m2)]}))

    return reports
