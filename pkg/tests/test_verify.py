import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anyonrep.algebra import cached_generators
from anyonrep.fock import (
    Corruption,
    LatticeConfig,
    bulk_projector,
    identity_op,
    q_bracket_diag,
    residual_norm,
    supercommutator,
)
from anyonrep.report import check_identity, not_applicable, reports_ok
from anyonrep.verify import (
    CATALOG,
    SUITES,
    ad_q,
    ad_q_hopf,
    run_suites,
    suite_cartan_weyl,
    suite_central_charge,
    suite_classical_limit,
    suite_coproduct,
    suite_quantum,
    suite_serre,
    suite_undeformed,
)


# ---------------------------------------------------------------------------
# check_identity
# ---------------------------------------------------------------------------

def test_check_identity_trivial(cfg21):
    gs = cached_generators(cfg21, True)
    rep = check_identity("x", "-", gs.H[1], gs.H[1], tol=1e-10)
    assert rep.residual == 0.0 and rep.passed
    rep = check_identity("x", "-", gs.H[1] @ gs.H[2], gs.H[2] @ gs.H[1], tol=1e-10)
    assert rep.residual == 0.0


def test_check_identity_shape_guard(cfg21):
    import scipy.sparse as sp
    gs = cached_generators(cfg21, True)
    with pytest.raises(ValueError):
        check_identity("x", "-", gs.H[1], sp.identity(3, dtype=complex), tol=1e-10)


def test_eq7c_against_dense_oracle(cfg21):
    """Recompute the alpha = beta = 1 pairing with plain dense numpy."""
    gs = cached_generators(cfg21, True)
    basis = gs.basis
    Ep = gs.E[(1, "+")].toarray()
    Em = gs.E[(1, "-")].toarray()
    H = gs.H[1].toarray()
    q = cfg21.q
    lhs = Ep @ Em - Em @ Ep  # both grades even
    rhs = np.diag([(q ** h - q ** -h) / (q - 1 / q) for h in np.diag(H).real])
    P = bulk_projector(cfg21, basis, 1, 1).toarray()
    dense_res = np.abs(P @ (lhs - rhs) @ P).max()
    assert dense_res <= 1e-10
    rep = check_identity(
        "eq7c[1,1]", "Eq. (7c)",
        supercommutator(gs.E[(1, "+")], gs.E[(1, "-")], 0, 0),
        q_bracket_diag(gs.H[1], gs.q_alpha(1)),
        bulk_projector(cfg21, basis, 1, 1), tol=cfg21.tol)
    assert rep.passed
    assert abs(rep.residual - dense_res) <= 1e-12


def test_not_applicable_reports_are_satisfied():
    rep = not_applicable("x", "-", "too small")
    assert rep.satisfied and not rep.applicable


# ---------------------------------------------------------------------------
# quantum adjoint action
# ---------------------------------------------------------------------------

def test_ad_q_matches_hopf_oracle(cfg22):
    gs = cached_generators(cfg22, True)
    ct = gs.cartan
    P1 = bulk_projector(cfg22, gs.basis, 1, 1)
    for al in range(cfg22.R + 1):
        for be in range(cfg22.R + 1):
            if al == be:
                continue
            for s, sgn in (("+", 1), ("-", -1)):
                Y = gs.script_e(be, s)
                closed = ad_q(gs, al, Y, sgn * ct.a[al][be], ct.parity[be], s)
                oracle = ad_q_hopf(gs, al, Y, ct.parity[be], s)
                diff = closed - oracle
                if al == 0:
                    diff = P1 @ diff @ P1
                assert residual_norm(diff) <= 1e-10, (al, be, s)


def test_ad_q_on_itself_at_isotropic_nodes(cfg22):
    """At an isotropic node the adjoint of a generator on itself is the plain
    anticommutator (the weight factor is q^0), and the oracle agrees."""
    gs = cached_generators(cfg22, True)
    P1 = bulk_projector(cfg22, gs.basis, 1, 1)
    for al in (0, cfg22.M):
        Y = gs.script_e(al, "+")
        out = ad_q(gs, al, Y, gs.cartan.a[al][al], 1)
        anti = supercommutator(Y, Y, 1, 1)
        assert residual_norm(out - anti) <= 1e-13
        diff = out - ad_q_hopf(gs, al, Y, 1)
        if al == 0:
            diff = P1 @ diff @ P1
        assert residual_norm(diff) <= 1e-10


def test_ad_q_classical_reduction():
    cfg = LatticeConfig(M=2, N=1, S=2, n_max=2, q_real=1.0)
    gs = cached_generators(cfg, True)
    ct = gs.cartan
    for al, be in [(1, 2), (2, 1)]:
        Y = gs.script_e(be, "+")
        out = ad_q(gs, al, Y, ct.a[al][be], ct.parity[be])
        classical = supercommutator(gs.script_e(al, "+"), Y,
                                    ct.parity[al], ct.parity[be])
        assert residual_norm(out - classical) <= 1e-12


def test_ad_q_annihilates_identity(cfg21):
    gs = cached_generators(cfg21, True)
    one = identity_op(gs.basis)
    out = ad_q(gs, 1, one, 0, 0)
    assert residual_norm(out) <= 1e-13


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("MN", [(2, 1), (2, 2)])
def test_suite_quantum(MN):
    cfg = LatticeConfig(M=MN[0], N=MN[1], S=2, n_max=2, nu=0.3)
    reports = suite_quantum(cfg)
    assert reports_ok(reports)
    assert all(r.residual <= 1e-10 for r in reports
               if r.applicable and not r.informational)


def test_suite_serre_both_cutoffs():
    for n_max in (2, 3):
        cfg = LatticeConfig(M=2, N=2, S=2, n_max=n_max, nu=0.3)
        reports = suite_serre(cfg)
        assert reports_ok(reports)
        ids = {r.relation_id for r in reports}
        assert any(i.startswith("eq9-alpha0-cyclic") for i in ids)
        assert any(i.startswith("eq9-alpha0-skip") for i in ids)
        assert any(i.startswith("eq9-alphaM") for i in ids)


def test_suite_serre_quartic_not_applicable_for_n1(cfg21):
    reports = suite_serre(cfg21)
    assert reports_ok(reports)
    na = {r.relation_id for r in reports if not r.applicable}
    assert "eq9-alphaM" in na


@pytest.mark.parametrize("MN", [(2, 1), (2, 2)])
def test_suite_undeformed(MN):
    cfg = LatticeConfig(M=MN[0], N=MN[1], S=2, n_max=2, nu=0.3)
    assert reports_ok(suite_undeformed(cfg))


@pytest.mark.parametrize("MN", [(1, 2), (3, 2), (2, 3)])
def test_all_suites_other_flavor_contents(MN):
    """M=1 has adjacent odd nodes; rank 4 widens the Serre pair sets."""
    cfg = LatticeConfig(M=MN[0], N=MN[1], S=2, n_max=2, nu=0.3)
    for name, reps in run_suites(cfg).items():
        assert reports_ok(reps), (name, [r.relation_id for r in reps
                                         if not r.satisfied])


@pytest.mark.parametrize("ordering", [("sea", "sea"), ("sea", "empty")])
def test_defining_relations_on_line_stacks(ordering):
    cfg = LatticeConfig(M=2, N=1, S=2, K=2, n_max=1, nu=0.3, ordering=ordering)
    out = run_suites(cfg, ["quantum", "serre", "undeformed"])
    for name, reps in out.items():
        assert reports_ok(reps), name


def test_suite_coproduct(cfg22):
    reports = suite_coproduct(cfg22)
    assert reports_ok(reports)
    control = [r for r in reports if "tailflip" in r.relation_id]
    assert len(control) == 1 and control[0].expect_fail
    assert control[0].residual > 1e-3  # the wrong tail is visibly wrong


@pytest.mark.parametrize("ordering", [("sea", "sea"), ("sea", "empty")])
def test_coproduct_split_on_line_stacks(ordering):
    cfg = LatticeConfig(M=2, N=1, S=2, K=2, n_max=2, nu=0.3, ordering=ordering)
    reports = suite_coproduct(cfg)
    assert reports_ok(reports)
    splits = [r for r in reports if r.relation_id.startswith("eq11a-split")]
    assert splits and all(r.residual <= 1e-12 for r in splits)


def test_coproduct_control_not_applicable_without_inverse_nodes(cfg21):
    reports = suite_coproduct(cfg21)
    control = [r for r in reports if "tailflip" in r.relation_id]
    assert len(control) == 1 and not control[0].applicable


def test_split_degenerates_to_additivity_at_q_one():
    cfg = LatticeConfig(M=2, N=1, S=2, n_max=2, q_real=1.0)
    gs = cached_generators(cfg, True)
    for alpha in range(1, cfg.R + 1):
        for s in ("+", "-"):
            total = sum((gs.E_local[(alpha, s, 1, r)] for r in cfg.sites),
                        0 * gs.H[0])
            assert residual_norm(gs.E[(alpha, s)] - total) <= 1e-13


def test_suite_classical(cfg21):
    reports = suite_classical_limit(cfg21)
    assert reports_ok(reports)
    slope = [r for r in reports if r.relation_id == "limit-slope"][0]
    assert abs(slope.params["ratio"] - 2) <= 0.2


@pytest.mark.parametrize("ordering,expected", [
    ("sea", 1), ("empty", 0), (("sea", "sea"), 2), (("sea", "empty"), 1),
])
def test_suite_central(ordering, expected):
    K = len(ordering) if isinstance(ordering, tuple) else 1
    cfg = LatticeConfig(M=2, N=1, S=2, K=K, n_max=2, nu=0.3, ordering=ordering)
    reports = suite_central_charge(cfg)
    assert reports_ok(reports)
    g = [r for r in reports if r.relation_id == "eq29-gamma"][0]
    assert g.params["expected"] == expected
    assert g.residual <= 1e-12


def test_suite_cartan_weyl():
    cfg = LatticeConfig(M=2, N=1, S=4, n_max=1, nu=0.3)
    reports = suite_cartan_weyl(cfg)
    assert reports_ok(reports)
    lam1 = [r for r in reports if r.relation_id == "eq1a-scalar[m=1]"][0]
    lam2 = [r for r in reports if r.relation_id == "eq1a-scalar[m=2]"][0]
    assert lam1.params["lambda"][0] == pytest.approx(2.0, abs=1e-10)
    assert lam2.params["lambda"][0] == pytest.approx(4.0, abs=1e-10)
    lin = [r for r in reports if r.relation_id == "eq1a-linearity"][0]
    assert lin.residual <= 1e-8
    cocycle = [r for r in reports if r.relation_id.startswith("eq1c")]
    assert cocycle and all(r.satisfied for r in cocycle)


def test_truncation_robustness_larger_lattice():
    """Going from S=2 to S=4 must not push bulk residuals above tol.

    One documented exception: the affine-affine pairing eq7c[0,0] under the
    sea ordering.  Its string tails inherit the +1 normal-ordering constant
    of the negative-site bosons, leaving a per-bond scalar that cutoff Fock
    bosons cannot absorb; the deep-bulk matrix element is q^{-1} instead of
    [H_0]_q.  Under the empty ordering the tails are coherent and the
    relation holds at any size.
    """
    cfg = LatticeConfig(M=2, N=1, S=4, n_max=2, nu=0.3)
    for suite in ("coproduct", "central"):
        reports = run_suites(cfg, [suite])[suite]
        assert reports_ok(reports), suite
    quantum = run_suites(cfg, ["quantum"])["quantum"]
    bad = [r for r in quantum if not r.satisfied]
    assert [r.relation_id for r in bad] == ["eq7c[0,0]"]
    assert bad[0].residual == pytest.approx(abs(1 - 1 / cfg.q), abs=1e-12)
    cfg_e = LatticeConfig(M=2, N=1, S=4, n_max=2, nu=0.3, ordering="empty")
    for suite in ("quantum", "coproduct", "central"):
        reports = run_suites(cfg_e, [suite])[suite]
        assert reports_ok(reports), suite


# ---------------------------------------------------------------------------
# sensitivity and determinism
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("corruption,expect_in", [
    (Corruption(flip_q_alpha=True), "coproduct"),
    (Corruption(drop_h0_delta=True), "central"),
    (Corruption(flip_boson_disorder=True), "braiding"),
])
def test_negative_controls_trip_suites(cfg21, corruption, expect_in):
    out = run_suites(cfg21, None, corruption)
    failing = {name for name, reps in out.items() if not reports_ok(reps)}
    assert expect_in in failing


def test_run_suites_deterministic(cfg21):
    r1 = run_suites(cfg21, ["quantum", "braiding"])
    r2 = run_suites(cfg21, ["quantum", "braiding"])
    for name in r1:
        assert [(a.relation_id, a.residual) for a in r1[name]] == \
               [(a.relation_id, a.residual) for a in r2[name]]


def test_run_suites_rejects_unknown(cfg21):
    with pytest.raises(KeyError):
        run_suites(cfg21, ["nope"])


@settings(max_examples=8, deadline=None)
@given(st.floats(0.0, 2.0))
def test_pass_status_invariant_under_unit_rescaling(theta):
    """Rescaling E^+- by u^{+-1} with |u| = 1 leaves every relation's
    pass/fail status unchanged."""
    cfg = LatticeConfig(M=2, N=1, S=2, n_max=2, nu=0.3)
    gs = cached_generators(cfg, True)
    ct = gs.cartan
    u = np.exp(1j * np.pi * theta)
    basis = gs.basis
    P = bulk_projector(cfg, basis, 1, 1)
    for al in range(cfg.R + 1):
        Ep = u * gs.E[(al, "+")]
        Em = gs.E[(al, "-")] / u
        lhs = supercommutator(Ep, Em, ct.parity[al], ct.parity[al])
        rhs = q_bracket_diag(gs.H[al], gs.q_alpha(al))
        assert residual_norm(P @ (lhs - rhs) @ P) <= cfg.tol
        comm = gs.H[al] @ Ep - Ep @ gs.H[al] - ct.a[al][al] * Ep
        proj = P if al == 0 else None
        r = residual_norm(P @ comm @ P if proj is not None else comm)
        assert r <= cfg.tol


def test_catalog_covers_required_ids():
    ids = {rid for _, rid, _, _ in CATALOG}
    assert {"eq7c", "eq9-alpha0-cyclic", "eq9-alpha0-skip"} <= ids
    tags = {rid: tag for _, rid, tag, _ in CATALOG}
    assert tags["eq7c"] == "Eq. (7c)"
    assert set(SUITES) == {s for s, _, _, _ in CATALOG}


def test_reports_are_json_serializable(cfg21):
    import json
    for reps in run_suites(cfg21, ["central", "classical"]).values():
        json.dumps([r.to_dict() for r in reps], default=repr)
