"""Relation suites certifying the oscillator and anyonic realizations.

Projector policy: relations built only from single-site nodes are exact on the
truncated lattice (up to the boson cutoff) and run unprojected or with a
headroom projector; anything touching the affine node, whose local pieces
straddle two sites, runs sandwiched between bulk projectors (margin 1, or 2
when the affine node appears on both sides / in Serre compositions).  Where a
relation is exact away from the cutoff we additionally check that the operator
annihilates the headroom-protected subspace outright (right projection),
which is a strictly stronger statement than the sandwich.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import scipy.sparse as sp

from . import anyons, oscillators
from .algebra import (
    EPS,
    DELTA,
    GeneratorSet,
    RootLabel,
    admissible_sites,
    cached_generators,
    cartan_weyl_generators,
    cartan_weyl_h,
    central_charge_operator,
    compose_roots,
    eq57_tail,
    local_q_generator,
    root_weight,
    string_tail_exponent,
)
from .fock import (
    BOSON,
    FERMION,
    SEA,
    Corruption,
    LatticeConfig,
    ModeId,
    NO_CORRUPTION,
    bulk_projector,
    diag_exp,
    diag_operator,
    identity_op,
    op_adjoint,
    q_bracket_diag,
    q_commutator,
    q_power,
    residual_norm,
    supercommutator,
    zero_op,
)
from .oscillators import number_diag
from .report import RelationReport, check_identity, not_applicable


# ---------------------------------------------------------------------------
# quantum adjoint action
# ---------------------------------------------------------------------------

def ad_q(genset: GeneratorSet, alpha: int, Y: sp.spmatrix, weight_of_Y,
         grade_of_Y: int, sign: str = "+") -> sp.csr_matrix:
    """Closed form of the quantum adjoint of the rescaled generator:

        (ad_q E_alpha^s) Y = E Y - (-1)^{deg alpha * deg Y} q_alpha^{-w} Y E

    valid when Y is h_alpha-weight homogeneous with weight w.  Derived once
    from the coproduct E (x) 1 + q^{-h} (x) E and the antipode
    S(E^s) = -q^{+-a_aa} E^s q^{h}; validated against :func:`ad_q_hopf`.
    """
    X = genset.script_e(alpha, sign)
    qa = genset.q_alpha(alpha)
    sgn = -1.0 if (genset.grade(alpha) * grade_of_Y) % 2 else 1.0
    return (X @ Y - sgn * q_power(qa, -weight_of_Y) * (Y @ X)).tocsr()


def ad_q_hopf(genset: GeneratorSet, alpha: int, Y: sp.spmatrix,
              grade_of_Y: int, sign: str = "+") -> sp.csr_matrix:
    """Term-by-term adjoint action through coproduct and antipode, used as an
    independent oracle for :func:`ad_q` (no weight bookkeeping)."""
    X = genset.script_e(alpha, sign)
    qa = genset.q_alpha(alpha)
    aa = genset.cartan.a[alpha][alpha]
    exponent = aa if sign == "+" else -aa
    SX = -q_power(qa, exponent) * (X @ diag_exp(genset.H[alpha], qa))
    sgn = -1.0 if (genset.grade(alpha) * grade_of_Y) % 2 else 1.0
    term2 = diag_exp(-1 * genset.H[alpha], qa) @ Y @ SX
    return (X @ Y + sgn * term2).tocsr()


def _sig(sign: str) -> int:
    return 1 if sign == "+" else -1


# ---------------------------------------------------------------------------
# quantum Serre-Chevalley suite
# ---------------------------------------------------------------------------

def suite_quantum(cfg: LatticeConfig,
                  corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """Defining relations of the deformed superalgebra on the simple nodes."""
    gs = cached_generators(cfg, True, corruption)
    basis, ct = gs.basis, gs.cartan
    a = ct.a
    R = cfg.R
    tol = cfg.tol
    P10 = bulk_projector(cfg, basis, 1, 0)
    P11 = bulk_projector(cfg, basis, 1, 1)
    P21 = bulk_projector(cfg, basis, 2, 1)
    reports = []

    for al in range(R + 1):
        for be in range(al, R + 1):
            reports.append(check_identity(
                f"eq7a[{al},{be}]", "Eq. (7a)",
                gs.H[al] @ gs.H[be], gs.H[be] @ gs.H[al],
                tol=tol, params={"alpha": al, "beta": be}))

    for al in range(R + 1):
        for be in range(R + 1):
            for s in ("+", "-"):
                E = gs.E[(be, s)]
                lhs = gs.H[al] @ E - E @ gs.H[al]
                rhs = _sig(s) * a[al][be] * E
                proj = P10 if 0 in (al, be) else None
                desc = "margin=1" if proj is not None else None
                reports.append(check_identity(
                    f"eq7b[{al},{be},{s}]", "Eq. (7b)", lhs, rhs, proj,
                    projector_desc=desc, tol=tol,
                    params={"alpha": al, "beta": be, "sign": s}))

    for al in range(R + 1):
        for be in range(R + 1):
            lhs = supercommutator(gs.E[(al, "+")], gs.E[(be, "-")],
                                  ct.parity[al], ct.parity[be])
            if al == be:
                rhs = q_bracket_diag(gs.H[al], gs.q_alpha(al))
            else:
                rhs = zero_op(basis)
            proj, desc = (P21, "margin=2,headroom=1") if al == be == 0 \
                else (P11, "margin=1,headroom=1")
            reports.append(check_identity(
                f"eq7c[{al},{be}]", "Eq. (7c)", lhs, rhs, proj,
                projector_desc=desc, tol=tol,
                params={"alpha": al, "beta": be}))

    for al in (0, cfg.M):
        for s in ("+", "-"):
            E = gs.E[(al, s)]
            reports.append(check_identity(
                f"eq7d[{al},{s}]", "Eq. (7d)",
                supercommutator(E, E, 1, 1), zero_op(basis),
                tol=tol, params={"alpha": al, "sign": s}))

    # E^- versus the matrix adjoint of E^+ is observed, never asserted: the
    # minus generators use the tilded anyons and differ by string tails
    if cfg.nu is not None:
        for al in range(R + 1):
            dev = residual_norm(gs.E[(al, "-")] - op_adjoint(gs.E[(al, "+")]))
            reports.append(RelationReport(
                relation_id=f"adjointness-observation[{al}]", equation="-",
                params={"alpha": al, "deviation": dev}, projector="identity",
                residual=dev, tol=tol, passed=dev <= tol, informational=True))
    return reports


# ---------------------------------------------------------------------------
# Serre and supplementary relations
# ---------------------------------------------------------------------------

def _quartic_applicable(ct, prev: int, nxt: int) -> bool:
    return ct.parity[prev] == 0 and ct.parity[nxt] == 0 and prev != nxt


def suite_serre(cfg: LatticeConfig,
                corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """Expanded Serre relations, the quartic supplementary relations at the
    isotropic nodes, and the adjoint-action oracle cross-checks."""
    gs = cached_generators(cfg, True, corruption)
    basis, ct = gs.basis, gs.cartan
    a, at = ct.a, ct.a_tilde
    R = cfg.R
    tol = cfg.tol
    head = min(2, cfg.n_max)
    P = bulk_projector(cfg, basis, 2, head)
    Ph = bulk_projector(cfg, basis, 0, head)
    P1 = bulk_projector(cfg, basis, 1, head)
    zero = zero_op(basis)
    reports = []

    # closed-form adjoint vs Hopf oracle; the affine action needs the bulk
    # because H_0 weight bookkeeping is truncated at the boundary
    for al in range(R + 1):
        for be in range(R + 1):
            if al == be:
                continue
            for s in ("+", "-"):
                Y = gs.script_e(be, s)
                w = _sig(s) * a[al][be]
                closed = ad_q(gs, al, Y, w, ct.parity[be], s)
                hopf = ad_q_hopf(gs, al, Y, ct.parity[be], s)
                proj = P1 if al == 0 else None
                desc = "margin=1,headroom=%d" % head if al == 0 else None
                reports.append(check_identity(
                    f"eq12-oracle[{al},{be},{s}]", "Eq. (12)",
                    closed, hopf, proj, projector_desc=desc, tol=tol,
                    params={"alpha": al, "beta": be, "sign": s}))

    for al in range(R + 1):
        for be in range(R + 1):
            if al == be:
                continue
            for s in ("+", "-"):
                EA = gs.script_e(al, s)
                EB = gs.script_e(be, s)
                qa = gs.q_alpha(al)
                if at[al][be] == 0:
                    X = supercommutator(EA, EB, ct.parity[al], ct.parity[be])
                    form = "supercommutator"
                elif a[al][al] == 2:
                    X = (EA @ EA @ EB - (qa + 1 / qa) * (EA @ EB @ EA)
                         + EB @ EA @ EA)
                    form = "q-binomial cubic"
                else:
                    # odd alpha: (ad_q)^2 collapses onto the E^2 terms; the
                    # remaining content is Eq. (7d) plus the quartic
                    w = _sig(s) * a[al][be]
                    X = EA @ EA @ EB - q_power(qa, -2 * w) * (EB @ EA @ EA)
                    form = "odd-square"
                ps = {"alpha": al, "beta": be, "sign": s, "form": form}
                reports.append(check_identity(
                    f"eq8[{al},{be},{s}]", "Eq. (8)", X, zero, P,
                    projector_desc="margin=2,headroom=%d" % head, tol=tol,
                    params=ps))
                if 0 not in (al, be):
                    reports.append(check_identity(
                        f"eq8-img[{al},{be},{s}]", "Eq. (8)", X, zero, Ph,
                        projector_desc="headroom=%d" % head,
                        projector_side="right", tol=tol, params=ps))

    # quartic at alpha = M (bare generators, plain q-commutators; the minus
    # form mirrors the bracket orders, as dictated by the adjoint action)
    M = cfg.M
    q = cfg.q
    if M >= 2 and cfg.N >= 2:
        for s in ("+", "-"):
            E1, E2, E3 = gs.E[(M - 1, s)], gs.E[(M, s)], gs.E[(M + 1, s)]
            if s == "+":
                X1, X2 = q_commutator(E1, E2, q), q_commutator(E2, E3, q)
            else:
                X1, X2 = q_commutator(E2, E1, q), q_commutator(E3, E2, q)
            X = supercommutator(X1, X2, 1, 1)
            ps = {"alpha": M, "sign": s}
            reports.append(check_identity(
                f"eq9-alphaM[{s}]", "Eq. (9)", X, zero, P,
                projector_desc="margin=2,headroom=%d" % head, tol=tol, params=ps))
            reports.append(check_identity(
                f"eq9-alphaM-img[{s}]", "Eq. (9)", X, zero, Ph,
                projector_desc="headroom=%d" % head, projector_side="right",
                tol=tol, params=ps))
            Y1 = ad_q(gs, M - 1, gs.script_e(M, s), _sig(s) * a[M - 1][M], 1, s)
            Y2 = ad_q(gs, M + 1, gs.script_e(M, s), _sig(s) * a[M + 1][M], 1, s)
            reports.append(check_identity(
                f"eq10-alphaM[{s}]", "Eq. (10)",
                supercommutator(Y1, Y2, 1, 1), zero, P,
                projector_desc="margin=2,headroom=%d" % head, tol=tol, params=ps))
    else:
        reports.append(not_applicable("eq9-alphaM", "Eq. (9)",
                                      "needs M >= 2 and N >= 2"))

    # quartic at the affine node: "alpha -+ 1" admits two readings there;
    # both are reported, neither is decreed
    for name, (prev, nxt) in {"cyclic": (R, 1), "skip": (1, R)}.items():
        rid = f"eq9-alpha0-{name}"
        if not _quartic_applicable(ct, prev, nxt):
            reports.append(not_applicable(rid, "Eq. (9)",
                                          "affine neighbours are not even nodes"))
            continue
        for s in ("+", "-"):
            Y1 = ad_q(gs, prev, gs.script_e(0, s), _sig(s) * a[prev][0], 1, s)
            Y2 = ad_q(gs, nxt, gs.script_e(0, s), _sig(s) * a[nxt][0], 1, s)
            X = supercommutator(Y1, Y2, 1, 1)
            reports.append(check_identity(
                f"{rid}[{s}]", "Eq. (9)", X, zero, P,
                projector_desc="margin=2,headroom=%d" % head, tol=tol,
                params={"alpha": 0, "neighbours": [prev, nxt], "sign": s}))
    return reports


# ---------------------------------------------------------------------------
# undeformed suite
# ---------------------------------------------------------------------------

def suite_undeformed(cfg: LatticeConfig,
                     corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """Classical Serre-Chevalley relations for the plain oscillator set."""
    gs = cached_generators(cfg, False, corruption)
    basis, ct = gs.basis, gs.cartan
    a, at = ct.a, ct.a_tilde
    R = cfg.R
    tol = cfg.tol
    P10 = bulk_projector(cfg, basis, 1, 0)
    P11 = bulk_projector(cfg, basis, 1, 1)
    P21 = bulk_projector(cfg, basis, 2, 1)
    P2 = bulk_projector(cfg, basis, 2, min(2, cfg.n_max))
    zero = zero_op(basis)
    reports = []

    for al in range(R + 1):
        for be in range(al, R + 1):
            reports.append(check_identity(
                f"eq2a[{al},{be}]", "Eq. (2a)",
                gs.H[al] @ gs.H[be], gs.H[be] @ gs.H[al], tol=tol,
                params={"alpha": al, "beta": be}))
    for al in range(R + 1):
        for be in range(R + 1):
            for s in ("+", "-"):
                E = gs.E[(be, s)]
                proj = P10 if 0 in (al, be) else None
                reports.append(check_identity(
                    f"eq2b[{al},{be},{s}]", "Eq. (2b)",
                    gs.H[al] @ E - E @ gs.H[al], _sig(s) * a[al][be] * E,
                    proj,
                    projector_desc="margin=1" if proj is not None else None,
                    tol=tol, params={"alpha": al, "beta": be, "sign": s}))
            lhs = supercommutator(gs.E[(al, "+")], gs.E[(be, "-")],
                                  ct.parity[al], ct.parity[be])
            rhs = gs.H[al] if al == be else zero
            proj, desc = (P21, "margin=2,headroom=1") if al == be == 0 \
                else (P11, "margin=1,headroom=1")
            reports.append(check_identity(
                f"eq2c[{al},{be}]", "Eq. (2c)", lhs, rhs, proj,
                projector_desc=desc, tol=tol,
                params={"alpha": al, "beta": be}))

    for al in (0, cfg.M):
        for s in ("+", "-"):
            E = gs.E[(al, s)]
            reports.append(check_identity(
                f"eq2d[{al},{s}]", "Eq. (2d)", supercommutator(E, E, 1, 1),
                zero, tol=tol, params={"alpha": al, "sign": s}))

    for al in range(R + 1):
        for be in range(R + 1):
            if al == be:
                continue
            for s in ("+", "-"):
                EA, EB = gs.E[(al, s)], gs.E[(be, s)]
                if at[al][be] == 0:
                    X = supercommutator(EA, EB, ct.parity[al], ct.parity[be])
                elif a[al][al] == 2:
                    X = EA @ EA @ EB - 2 * (EA @ EB @ EA) + EB @ EA @ EA
                else:
                    X = EA @ EA @ EB - EB @ EA @ EA
                reports.append(check_identity(
                    f"eq3[{al},{be},{s}]", "Eq. (3)", X, zero, P2,
                    projector_desc="margin=2,headroom=2", tol=tol,
                    params={"alpha": al, "beta": be, "sign": s}))

    M = cfg.M
    if M >= 2 and cfg.N >= 2:
        for s in ("+", "-"):
            E1, E2, E3 = gs.E[(M - 1, s)], gs.E[(M, s)], gs.E[(M + 1, s)]
            X = supercommutator(E1 @ E2 - E2 @ E1, E2 @ E3 - E3 @ E2, 1, 1)
            reports.append(check_identity(
                f"eq4-alphaM[{s}]", "Eq. (4)", X, zero, P2,
                projector_desc="margin=2,headroom=2", tol=tol,
                params={"alpha": M, "sign": s}))
    else:
        reports.append(not_applicable("eq4-alphaM", "Eq. (4)",
                                      "needs M >= 2 and N >= 2"))
    for name, (prev, nxt) in {"cyclic": (R, 1), "skip": (1, R)}.items():
        rid = f"eq4-alpha0-{name}"
        if not _quartic_applicable(ct, prev, nxt):
            reports.append(not_applicable(rid, "Eq. (4)",
                                          "affine neighbours are not even nodes"))
            continue
        for s in ("+", "-"):
            Ep, E0, En = gs.E[(prev, s)], gs.E[(0, s)], gs.E[(nxt, s)]
            X = supercommutator(Ep @ E0 - E0 @ Ep, En @ E0 - E0 @ En, 1, 1)
            reports.append(check_identity(
                f"{rid}[{s}]", "Eq. (4)", X, zero, P2,
                projector_desc="margin=2,headroom=2", tol=tol,
                params={"alpha": 0, "neighbours": [prev, nxt], "sign": s}))
    return reports


# ---------------------------------------------------------------------------
# coproduct suite
# ---------------------------------------------------------------------------

def suite_coproduct(cfg: LatticeConfig,
                    corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """String-tail factorization of every local piece, and the two-half split
    of the global generators with the coproduct weights between the halves."""
    gs = cached_generators(cfg, True, corruption)
    basis, ct = gs.basis, gs.cartan
    tol = cfg.tol
    reports = []

    for alpha in range(cfg.R + 1):
        worst = 0.0
        for s in ("+", "-"):
            for line in cfg.lines:
                for r in admissible_sites(cfg, alpha):
                    E = gs.E_local[(alpha, s, line, r)]
                    ehat = local_q_generator(cfg, basis, alpha, s, line, r)
                    tail = eq57_tail(cfg, basis, ct, alpha, line, r, corruption)
                    worst = max(worst, residual_norm(E - ehat @ tail))
        reports.append(RelationReport(
            relation_id=f"eq57[{alpha}]", equation="Eq. (57)",
            params={"alpha": alpha,
                    "form": "two-site tail" if alpha == 0 else "standard"},
            projector="identity", residual=worst, tol=tol, passed=worst <= tol))

    # flipping q_alpha in the tail must break the factorization: the opposite
    # base sign of the bosonic strings is load-bearing
    flips = list(range(cfg.M + 1, cfg.R + 1))
    if flips:
        al = flips[0]
        worst = 0.0
        for s in ("+", "-"):
            for line in cfg.lines:
                for r in admissible_sites(cfg, al):
                    E = gs.E_local[(al, s, line, r)]
                    ehat = local_q_generator(cfg, basis, al, s, line, r)
                    tail = eq57_tail(cfg, basis, ct, al, line, r, corruption,
                                     flip=True)
                    worst = max(worst, residual_norm(E - ehat @ tail))
        reports.append(RelationReport(
            relation_id=f"eq57-tailflip-control[{al}]", equation="Eq. (57)",
            params={"alpha": al, "note": "sensitivity control, must fail"},
            projector="identity", residual=worst, tol=1e-3,
            passed=worst <= 1e-3, expect_fail=True))
    else:
        reports.append(not_applicable("eq57-tailflip-control", "Eq. (57)",
                                      "no q^-1 node (N = 1)"))

    # two-half split along a cut compatible with the lattice order (an
    # order ideal: earlier lines plus the left half of the cut line); the
    # affine pieces straddle the cut and are excluded
    cut = (cfg.K + 1) // 2

    def left(ln, r):
        return ln < cut or (ln == cut and r < 0)

    for alpha in range(1, cfg.R + 1):
        qa = gs.q_alpha(alpha)
        HL = sum((gs.H_local[(alpha, ln, r)] for ln in cfg.lines
                  for r in cfg.sites if left(ln, r)), zero_op(basis))
        HR = sum((gs.H_local[(alpha, ln, r)] for ln in cfg.lines
                  for r in cfg.sites if not left(ln, r)), zero_op(basis))
        for s in ("+", "-"):
            def half_sum(pred):
                tot = zero_op(basis)
                for ln in cfg.lines:
                    for r in cfg.sites:
                        if not pred(ln, r):
                            continue
                        ehat = local_q_generator(cfg, basis, alpha, s, ln, r)
                        expo = 0.5 * string_tail_exponent(
                            cfg, basis, alpha, ln, r, site_filter=pred)
                        tot = tot + ehat @ diag_operator(q_power(qa, expo))
                return tot
            EL = half_sum(left)
            ER = half_sum(lambda ln, r: not left(ln, r))
            rhs = EL @ diag_exp(0.5 * HR, qa) + diag_exp(-0.5 * HL, qa) @ ER
            reports.append(check_identity(
                f"eq11a-split[{alpha},{s}]", "Eq. (11a)",
                gs.E[(alpha, s)], rhs.tocsr(), tol=tol,
                params={"alpha": alpha, "sign": s}))
    return reports


# ---------------------------------------------------------------------------
# classical limit
# ---------------------------------------------------------------------------

def _genset_distance(g1: GeneratorSet, g2: GeneratorSet) -> float:
    worst = 0.0
    for al in g1.H:
        worst = max(worst, residual_norm(g1.H[al] - g2.H[al]))
    for key in g1.E:
        worst = max(worst, residual_norm(g1.E[key] - g2.E[key]))
    return worst


def suite_classical_limit(cfg: LatticeConfig,
                          corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """q = 1 collapse onto the plain oscillator realization, and first-order
    scaling of the deviation in (q - 1)."""
    reports = []
    cfg1 = dataclasses.replace(cfg, nu=None, q_real=1.0)
    dist = _genset_distance(cached_generators(cfg1, True, corruption),
                            cached_generators(cfg1, False, corruption))
    reports.append(RelationReport(
        relation_id="limit-q1", equation="q=1 limit",
        params={}, projector="identity", residual=dist, tol=1e-12,
        passed=dist <= 1e-12))

    gs1 = cached_generators(cfg1, True, corruption)
    worst = max(residual_norm(q_bracket_diag(gs1.H[al], 1.0) - gs1.H[al])
                for al in gs1.H)
    reports.append(RelationReport(
        relation_id="limit-qbracket", equation="Eq. (7c)",
        params={"note": "[H]_q -> H at q=1"}, projector="identity",
        residual=worst, tol=1e-12, passed=worst <= 1e-12))

    eps = 1e-6
    undef = cached_generators(cfg1, False, corruption)
    r1 = _genset_distance(
        cached_generators(dataclasses.replace(cfg, nu=None, q_real=1 + eps),
                          True, corruption), undef)
    r2 = _genset_distance(
        cached_generators(dataclasses.replace(cfg, nu=None, q_real=1 + 2 * eps),
                          True, corruption), undef)
    ratio = r2 / r1 if r1 else float("inf")
    reports.append(RelationReport(
        relation_id="limit-slope", equation="q->1 slope",
        params={"r_eps": r1, "r_2eps": r2, "ratio": ratio},
        projector="identity", residual=abs(ratio - 2.0), tol=0.2,
        passed=abs(ratio - 2.0) <= 0.2))
    return reports


# ---------------------------------------------------------------------------
# central charge
# ---------------------------------------------------------------------------

def suite_central_charge(cfg: LatticeConfig,
                         corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """Bulk eigenvalue of the central element: one unit per sea-ordered line.

    Also checks the exact finite-lattice identity Gamma = sum over lines of
    n_1(r_min) + n'_N(r_max), which is what the truncated telescoping leaves
    behind, and pins down the off-bulk discrepancy.
    """
    gs = cached_generators(cfg, True, corruption)
    basis = gs.basis
    gamma = central_charge_operator(gs)
    gamma_expected = sum(1 for o in cfg.ordering if o == SEA)
    P = bulk_projector(cfg, basis, 1, 0)
    reports = [check_identity(
        "eq29-gamma", "Eq. (29)/(31)", gamma,
        gamma_expected * identity_op(basis), P, projector_desc="margin=1",
        tol=1e-12,
        params={"expected": gamma_expected, "ordering": list(cfg.ordering),
                "lines": cfg.K})]

    if not corruption.drop_h0_delta:
        vec = np.zeros(basis.dim)
        r_min, r_max = cfg.sites[0], cfg.sites[-1]
        for line in cfg.lines:
            vec = vec + number_diag(cfg, basis, ModeId(FERMION, 1, line, r_min))
            vec = vec + number_diag(cfg, basis, ModeId(BOSON, cfg.N, line, r_max))
        reports.append(check_identity(
            "gamma-boundary", "Eq. (29)", gamma, diag_operator(vec),
            tol=1e-12,
            params={"identity": "Gamma = sum_l n_1(l,r_min) + n'_N(l,r_max)"}))
    return reports


# ---------------------------------------------------------------------------
# Cartan-Weyl spot checks
# ---------------------------------------------------------------------------

def suite_cartan_weyl(cfg: LatticeConfig,
                      corruption: Corruption = NO_CORRUPTION) -> list[RelationReport]:
    """Mode-shifted generators: correspondence with the simple set, weight
    relations, the central anomaly scalar and its linearity in the mode
    number, and the observed two-cocycle signs."""
    gs = cached_generators(cfg, False, corruption)
    basis, ct = gs.basis, gs.cartan
    R = cfg.R
    tol = cfg.tol
    reports = []

    for alpha in range(R + 1):
        lab = ct.simple_root_label(alpha)
        reports.append(check_identity(
            f"eq6-cw[{alpha}]", "Eq. (6)",
            cartan_weyl_generators(cfg, basis, lab), gs.E[(alpha, "+")],
            tol=tol, params={"alpha": alpha, "root": str(lab)}))
    for a_ in range(1, R + 1):
        reports.append(check_identity(
            f"eq26-h[{a_}]", "Eq. (26)",
            cartan_weyl_h(cfg, basis, a_, 0), gs.H[a_],
            tol=tol, params={"a": a_}))

    roots = [ct.simple_root_label(al) for al in range(1, R + 1)]
    if cfg.M >= 2:
        roots.append(RootLabel((EPS, 1), (DELTA, 1)))
    elif cfg.N >= 2:
        roots.append(RootLabel((EPS, 1), (DELTA, 2)))
    for base in roots:
        for m in (-1, 0, 1):
            lab = dataclasses.replace(base, m=m)
            e = cartan_weyl_generators(cfg, basis, lab)
            proj = bulk_projector(cfg, basis, abs(m), 0) if m else None
            for a_ in range(1, R + 1):
                h = cartan_weyl_h(cfg, basis, a_, 0)
                w = root_weight(cfg.M, cfg.N, a_, lab)
                reports.append(check_identity(
                    f"eq1b[{lab},a={a_}]", "Eq. (1b)",
                    h @ e - e @ h, w * e, proj,
                    projector_desc=f"margin={abs(m)}" if proj is not None else None,
                    tol=tol, params={"root": str(lab), "a": a_, "weight": w}))

    # anomaly scalar of [h^m, h^-m] on the bulk
    lambdas = {}
    gamma_expected = sum(1 for o in cfg.ordering if o == SEA)
    for m in (1, 2):
        if m >= cfg.S:
            reports.append(not_applicable(
                f"eq1a-scalar[m={m}]", "Eq. (1a)", "lattice too short"))
            continue
        hm = cartan_weyl_h(cfg, basis, 1, m)
        hmm = cartan_weyl_h(cfg, basis, 1, -m)
        P = bulk_projector(cfg, basis, 2, 0)
        X = (P @ (hm @ hmm - hmm @ hm) @ P).tocsr()
        mask = np.real(P.diagonal()) > 0.5
        lam = complex(X.diagonal()[mask].mean())
        lambdas[m] = lam
        res = residual_norm(X - lam * P)
        K_obs = (lam / gamma_expected / m).real if gamma_expected else None
        reports.append(RelationReport(
            relation_id=f"eq1a-scalar[m={m}]", equation="Eq. (1a)",
            params={"a": 1, "m": m, "lambda": [lam.real, lam.imag],
                    "K(h1,h1)-observed": K_obs},
            projector="margin=2", residual=res, tol=tol, passed=res <= tol))
    if 1 in lambdas and 2 in lambdas:
        dev = abs(lambdas[2] - 2 * lambdas[1])
        reports.append(RelationReport(
            relation_id="eq1a-linearity", equation="Eq. (1a)",
            params={"lambda_1": lambdas[1].real, "lambda_2": lambdas[2].real},
            projector="margin=2", residual=dev, tol=1e-8, passed=dev <= 1e-8))
    elif 1 in lambdas:
        reports.append(not_applicable("eq1a-linearity", "Eq. (1a)",
                                      "m=2 needs S >= 4"))

    # supercommutator onto a composite root: the structure constant is read
    # off and only its unit modulus is asserted
    chains = [(ct.simple_root_label(a_), ct.simple_root_label(a_ + 1))
              for a_ in range(1, R)]
    affine = (ct.simple_root_label(R), ct.simple_root_label(0))
    if compose_roots(*affine) is not None:
        chains.append(affine)
    for r1, r2 in chains[:3]:
        rsum = compose_roots(r1, r2)
        if rsum is None:
            continue
        e1 = cartan_weyl_generators(cfg, basis, r1)
        e2 = cartan_weyl_generators(cfg, basis, r2)
        es = cartan_weyl_generators(cfg, basis, rsum)
        margin = max(1, abs(r1.m) + abs(r2.m))
        # compositions of odd roots raise a boson in one ordering
        headroom = 1 if (r1.parity or r2.parity) else 0
        P = bulk_projector(cfg, basis, margin, headroom)
        X = (P @ supercommutator(e1, e2, r1.parity, r2.parity) @ P).tocsr()
        Z = (P @ es @ P).tocsr()
        if Z.nnz == 0 or residual_norm(Z) < 1e-12:
            reports.append(not_applicable(
                f"eq1c-cocycle[{r1},{r2}]", "Eq. (1c)",
                "target vanishes on the bulk"))
            continue
        dense = np.abs(Z.toarray())
        i, j = np.unravel_index(np.argmax(dense), dense.shape)
        lam = complex(X[i, j] / Z[i, j])
        res = max(residual_norm(X - lam * Z), abs(abs(lam) - 1.0))
        reports.append(RelationReport(
            relation_id=f"eq1c-cocycle[{r1},{r2}]", equation="Eq. (1c)",
            params={"roots": [str(r1), str(r2)],
                    "scalar": [lam.real, lam.imag]},
            projector=f"margin={margin}", residual=res, tol=tol,
            passed=res <= tol))
    return reports


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES = {
    "oscillators": oscillators.suite_oscillators,
    "braiding": anyons.suite_braiding,
    "quantum": suite_quantum,
    "serre": suite_serre,
    "undeformed": suite_undeformed,
    "coproduct": suite_coproduct,
    "classical": suite_classical_limit,
    "central": suite_central_charge,
    "cartanweyl": suite_cartan_weyl,
}

CATALOG = [
    ("oscillators", "eq20", "Eq. (20)", "fermionic anticommutators, all mode pairs"),
    ("oscillators", "eq21", "Eq. (21)", "bosonic commutators (headroom 1)"),
    ("oscillators", "eq30", "Eq. (30)", "fermion/boson mixed commutativity"),
    ("oscillators", "eq49a", "Eq. (49a)", "q-boson q-commutator, rhs q^-n'"),
    ("oscillators", "eq49b", "Eq. (49b)", "q-boson 1/q-commutator, rhs q^+n'"),
    ("oscillators", "eq49c", "Eq. (49c)", "q-bosons commute across modes"),
    ("oscillators", "eq49d", "Eq. (49d)", "[n', b] = -b on the same mode"),
    ("oscillators", "eq49e", "Eq. (49e)", "[n', b^dag] = +b^dag"),
    ("oscillators", "eq50a", "Eq. (50)", "b^dag b = [n']_q, full space"),
    ("oscillators", "eq50b", "Eq. (50)", "b b^dag = [n'+1]_q (headroom 1)"),
    ("braiding", "eq42", "Eq. (42)", "fermionic anyon braiding, x after y"),
    ("braiding", "eq43", "Eq. (43)", "on-site anticommutators and nilpotency"),
    ("braiding", "eq44", "Eq. (44)", "plain/tilde mixed anticommutators"),
    ("braiding", "eq45", "Eq. (45)", "mixed daggered pairs at distinct sites"),
    ("braiding", "eq46", "Eq. (46)", "on-site mixed pair equals the string diagonal"),
    ("braiding", "eq47", "Eq. (47)", "a^dag a = n exactly"),
    ("braiding", "eq53", "Eq. (53)", "bosonic anyon braiding, x after y"),
    ("braiding", "eq54", "Eq. (54)", "on-site q-boson relations of the dressed pair"),
    ("braiding", "eq50A", "Eq. (50)+(51)", "A^dag A = [n']_q"),
    ("quantum", "eq7a", "Eq. (7a)", "Cartan operators commute"),
    ("quantum", "eq7b", "Eq. (7b)", "weights of the simple generators"),
    ("quantum", "eq7c", "Eq. (7c)", "pairing onto [H]_q"),
    ("quantum", "eq7d", "Eq. (7d)", "odd generators square to zero"),
    ("serre", "eq12-oracle", "Eq. (12)", "closed-form adjoint vs Hopf oracle"),
    ("serre", "eq8", "Eq. (8)", "expanded quantum Serre relations"),
    ("serre", "eq9-alphaM", "Eq. (9)", "quartic supplementary relation at node M"),
    ("serre", "eq10-alphaM", "Eq. (10)", "quartic in adjoint-action form"),
    ("serre", "eq9-alpha0-cyclic", "Eq. (9)", "affine quartic, neighbours (R, 1)"),
    ("serre", "eq9-alpha0-skip", "Eq. (9)", "affine quartic, neighbours (1, R)"),
    ("undeformed", "eq2a", "Eq. (2a)", "Cartan operators commute"),
    ("undeformed", "eq2b", "Eq. (2b)", "classical weights"),
    ("undeformed", "eq2c", "Eq. (2c)", "pairing onto h"),
    ("undeformed", "eq2d", "Eq. (2d)", "odd generators square to zero"),
    ("undeformed", "eq3", "Eq. (3)", "classical Serre relations"),
    ("undeformed", "eq4-alphaM", "Eq. (4)", "classical quartic at node M"),
    ("undeformed", "eq4-alpha0-cyclic", "Eq. (4)", "affine quartic, neighbours (R, 1)"),
    ("undeformed", "eq4-alpha0-skip", "Eq. (4)", "affine quartic, neighbours (1, R)"),
    ("coproduct", "eq57", "Eq. (57)", "local string-tail factorization"),
    ("coproduct", "eq57-tailflip-control", "Eq. (57)", "tail sign control, must fail"),
    ("coproduct", "eq11a-split", "Eq. (11a)", "two-half coproduct split"),
    ("classical", "limit-q1", "q=1 limit", "deformed set collapses entrywise"),
    ("classical", "limit-qbracket", "Eq. (7c)", "[H]_q -> H at q=1"),
    ("classical", "limit-slope", "q->1 slope", "deviation linear in q-1"),
    ("central", "eq29-gamma", "Eq. (29)/(31)", "bulk eigenvalue of the central element"),
    ("central", "gamma-boundary", "Eq. (29)", "exact boundary-occupation identity"),
    ("cartanweyl", "eq6-cw", "Eq. (6)", "simple generators from the root basis"),
    ("cartanweyl", "eq26-h", "Eq. (26)", "Cartan operators from bilinears"),
    ("cartanweyl", "eq1b", "Eq. (1b)", "root weights for shifted modes"),
    ("cartanweyl", "eq1a-scalar", "Eq. (1a)", "central anomaly acts as a scalar"),
    ("cartanweyl", "eq1a-linearity", "Eq. (1a)", "anomaly linear in the mode number"),
    ("cartanweyl", "eq1c-cocycle", "Eq. (1c)", "structure constants read off, modulus 1"),
]


def run_suites(cfg: LatticeConfig, names=None,
               corruption: Corruption = NO_CORRUPTION) -> dict:
    """Run the selected suites in registry order; deterministic."""
    if names is None:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {unknown}")
    return {name: SUITES[name](cfg, corruption) for name in SUITES if name in names}
