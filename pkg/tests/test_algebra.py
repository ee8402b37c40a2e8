import numpy as np
import pytest

from anyonrep import algebra as alg
from anyonrep.algebra import (
    DELTA,
    EPS,
    RootLabel,
    cartan_data,
    cartan_weyl_generators,
    cartan_weyl_h,
    central_charge_operator,
    chevalley_generators,
    compose_roots,
    eq57_tail,
    local_q_generator,
    root_weight,
)
from anyonrep.anyons import anyon
from anyonrep.fock import (
    ConfigError,
    Corruption,
    LatticeConfig,
    boson_mode,
    build_basis,
    bulk_projector,
    diag_operator,
    fermion_mode,
    q_bracket_diag,
    residual_norm,
    supercommutator,
)
from anyonrep.oscillators import normal_number_diag


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

def test_cartan_matrix_2_2():
    ct = cartan_data(2, 2)
    assert ct.a.tolist() == [[0, 1, 0, -1],
                             [-1, 2, -1, 0],
                             [0, -1, 0, 1],
                             [-1, 0, -1, 2]]
    assert ct.a_tilde.tolist() == [[0, -1, 0, -1],
                                   [-1, 2, -1, 0],
                                   [0, -1, 0, -1],
                                   [-1, 0, -1, 2]]


def test_cartan_matrix_2_1_cyclic_wrap():
    ct = cartan_data(2, 1)
    assert ct.a.tolist() == [[0, 1, -1],
                             [-1, 2, -1],
                             [1, -1, 0]]


def test_cartan_tilde_keeps_diagonal_and_negatives():
    for M, N in [(2, 2), (3, 2), (2, 3), (1, 2)]:
        ct = cartan_data(M, N)
        a, at = ct.a, ct.a_tilde
        assert np.array_equal(np.diag(a), np.diag(at))
        off = ~np.eye(len(a), dtype=bool)
        assert (at[off] <= 0).all()
        assert np.array_equal(at[off & (a <= 0)], a[off & (a <= 0)])


@pytest.mark.parametrize("MN", [(2, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
def test_symmetrizers(MN):
    ct = cartan_data(*MN)
    a, d = ct.a, np.array(ct.d)
    for al in range(1, ct.R + 1):
        for be in range(1, ct.R + 1):
            assert d[al] * a[al][be] == d[be] * a[be][al]
    assert ct.d[0] == 1


def test_grading_and_q_alpha():
    ct = cartan_data(2, 2)
    assert ct.parity == (1, 0, 1, 0)
    q = np.exp(0.3j * np.pi)
    qa = ct.q_alpha(q)
    assert all(abs(qa[al] - q) < 1e-14 for al in (0, 1, 2))
    assert abs(qa[3] - 1 / q) < 1e-14
    flipped = ct.q_alpha(q, Corruption(flip_q_alpha=True))
    assert abs(flipped[0] - 1 / q) < 1e-14
    assert abs(flipped[3] - q) < 1e-14


def test_rank_one_rejected():
    with pytest.raises(ConfigError):
        cartan_data(1, 1)


def test_root_labels():
    ct = cartan_data(2, 2)
    assert ct.simple_root_label(1) == RootLabel((EPS, 1), (EPS, 2))
    assert ct.simple_root_label(2) == RootLabel((EPS, 2), (DELTA, 1))
    assert ct.simple_root_label(3) == RootLabel((DELTA, 1), (DELTA, 2))
    assert ct.simple_root_label(0) == RootLabel((DELTA, 2), (EPS, 1), m=1)
    assert ct.simple_root_label(0).parity == 1
    assert ct.simple_root_label(1).parity == 0


def test_root_weight_pairs_with_cartan_row():
    # <alpha_beta, h_a> = a_{a beta} for the horizontal nodes
    for M, N in [(2, 1), (2, 2)]:
        ct = cartan_data(M, N)
        for a_ in range(1, ct.R + 1):
            for be in range(1, ct.R + 1):
                w = root_weight(M, N, a_, ct.simple_root_label(be))
                assert w == ct.a[a_][be]


def test_compose_roots():
    r1 = RootLabel((EPS, 1), (EPS, 2))
    r2 = RootLabel((EPS, 2), (DELTA, 1))
    assert compose_roots(r1, r2) == RootLabel((EPS, 1), (DELTA, 1))
    assert compose_roots(r2, r1) is None


# ---------------------------------------------------------------------------
# generator sets
# ---------------------------------------------------------------------------

def test_cartan_spectra_are_integers(cfg21):
    gs = chevalley_generators(cfg21, deformed=True)
    for al, H in gs.H.items():
        vals = H.diagonal()
        assert np.allclose(vals.imag, 0)
        assert np.allclose(vals.real, np.round(vals.real), atol=1e-12)


def test_h_matches_number_combination(cfg21, basis21):
    gs = chevalley_generators(cfg21, basis21, deformed=False)
    expected = np.zeros(basis21.dim)
    for r in cfg21.sites:
        expected += normal_number_diag(cfg21, basis21, fermion_mode(1, r))
        expected -= normal_number_diag(cfg21, basis21, fermion_mode(2, r))
    assert residual_norm(gs.H[1] - diag_operator(expected)) == 0.0


def test_deformed_equals_undeformed_at_q_one():
    cfg = LatticeConfig(M=2, N=2, S=2, n_max=2, q_real=1.0)
    g_def = chevalley_generators(cfg, deformed=True)
    g_und = chevalley_generators(cfg, deformed=False)
    for al in g_def.H:
        assert residual_norm(g_def.H[al] - g_und.H[al]) <= 1e-12
    for key in g_def.E:
        assert residual_norm(g_def.E[key] - g_und.E[key]) <= 1e-12


def test_local_piece_matches_anyon_product(cfg21, basis21):
    # the mixed node: a_M^dag(r) A_1(r)
    gs = chevalley_generators(cfg21, basis21, deformed=True)
    r = 0.5
    lhs = gs.E_local[(cfg21.M, "+", 1, r)]
    rhs = anyon(cfg21, basis21, fermion_mode(cfg21.M, r), "a", dagger=True) \
        @ anyon(cfg21, basis21, boson_mode(1, r), "A")
    assert residual_norm(lhs - rhs) == 0.0


def test_affine_pieces_need_next_site(cfg21, basis21):
    gs = chevalley_generators(cfg21, basis21, deformed=True)
    assert (0, "+", 1, -0.5) in gs.E_local
    assert (0, "+", 1, 0.5) not in gs.E_local
    assert alg.admissible_sites(cfg21, 0) == (-0.5,)
    assert alg.admissible_sites(cfg21, 1) == (-0.5, 0.5)


def test_string_tail_factorization(cfg21, basis21):
    gs = chevalley_generators(cfg21, basis21, deformed=True)
    for alpha in range(cfg21.R + 1):
        for s in ("+", "-"):
            for r in alg.admissible_sites(cfg21, alpha):
                E = gs.E_local[(alpha, s, 1, r)]
                ehat = local_q_generator(cfg21, basis21, alpha, s, 1, r)
                tail = eq57_tail(cfg21, basis21, gs.cartan, alpha, 1, r)
                assert residual_norm(E - ehat @ tail) <= cfg21.tol


def test_local_q_generator_collapses_at_q_one():
    cfg = LatticeConfig(M=2, N=2, S=2, n_max=2, q_real=1.0)
    basis = build_basis(cfg)
    gs = chevalley_generators(cfg, basis, deformed=False)
    for alpha in range(cfg.R + 1):
        for s in ("+", "-"):
            for r in alg.admissible_sites(cfg, alpha):
                ehat = local_q_generator(cfg, basis, alpha, s, 1, r)
                assert residual_norm(ehat - gs.E_local[(alpha, s, 1, r)]) <= 1e-13


def test_tail_flip_breaks_factorization(cfg22, basis22):
    # only nodes above M carry q^{-1}; flipping must be visible
    gs = chevalley_generators(cfg22, basis22, deformed=True)
    alpha = cfg22.M + 1
    worst = 0.0
    for r in cfg22.sites:
        E = gs.E_local[(alpha, "+", 1, r)]
        ehat = local_q_generator(cfg22, basis22, alpha, "+", 1, r)
        tail = eq57_tail(cfg22, basis22, gs.cartan, alpha, 1, r, flip=True)
        worst = max(worst, residual_norm(E - ehat @ tail))
    assert worst > 1e-3


def test_local_fixed_site_representation(cfg22, basis22):
    """At a single site the hatted generators and the local Cartan pieces
    close into the finite-rank deformed algebra (headroom 1 for the cutoff)."""
    gs = chevalley_generators(cfg22, basis22, deformed=True)
    ct = gs.cartan
    head = bulk_projector(cfg22, basis22, 0, 1)
    r = -0.5
    for al in range(1, cfg22.R + 1):
        h_al = gs.H_local[(al, 1, r)]
        for be in range(1, cfg22.R + 1):
            h_be = gs.H_local[(be, 1, r)]
            assert residual_norm(h_al @ h_be - h_be @ h_al) == 0.0
            for s, sgn in (("+", 1), ("-", -1)):
                e = local_q_generator(cfg22, basis22, be, s, 1, r)
                comm = h_al @ e - e @ h_al - sgn * ct.a[al][be] * e
                assert residual_norm(comm) <= 1e-12
            ep = local_q_generator(cfg22, basis22, be, "+", 1, r)
            em = local_q_generator(cfg22, basis22, be, "-", 1, r)
            lhs = supercommutator(ep, em, ct.parity[be], ct.parity[be]) \
                if al == be else supercommutator(
                    local_q_generator(cfg22, basis22, al, "+", 1, r), em,
                    ct.parity[al], ct.parity[be])
            if al == be:
                rhs = q_bracket_diag(h_al, ct.q_alpha(cfg22.q)[al])
            else:
                rhs = 0 * lhs
            assert residual_norm(head @ (lhs - rhs) @ head) <= 1e-10


# ---------------------------------------------------------------------------
# central element
# ---------------------------------------------------------------------------

def test_gamma_boundary_identity(cfg21, basis21):
    from anyonrep.oscillators import number_diag
    gs = chevalley_generators(cfg21, basis21, deformed=True)
    gamma = central_charge_operator(gs)
    vec = (number_diag(cfg21, basis21, fermion_mode(1, cfg21.sites[0]))
           + number_diag(cfg21, basis21, boson_mode(cfg21.N, cfg21.sites[-1])))
    assert residual_norm(gamma - diag_operator(vec)) <= 1e-12


@pytest.mark.parametrize("ordering,expected", [("sea", 1), ("empty", 0)])
def test_gamma_bulk_eigenvalue(ordering, expected):
    cfg = LatticeConfig(M=2, N=1, S=2, n_max=2, nu=0.3, ordering=ordering)
    basis = build_basis(cfg)
    gs = chevalley_generators(cfg, basis, deformed=True)
    P = bulk_projector(cfg, basis, 1, 0)
    gamma = central_charge_operator(gs)
    assert residual_norm(gamma @ P - expected * P) <= 1e-12


def test_dropping_affine_constant_shifts_gamma(cfg21, basis21):
    gs = chevalley_generators(cfg21, basis21, deformed=True,
                              corruption=Corruption(drop_h0_delta=True))
    P = bulk_projector(cfg21, basis21, 1, 0)
    gamma = central_charge_operator(gs)
    assert residual_norm(gamma @ P - P) > 0.5  # no longer 1 on the bulk


# ---------------------------------------------------------------------------
# Cartan-Weyl operators
# ---------------------------------------------------------------------------

def test_cw_matches_simple_generators(cfg21, basis21):
    gs = chevalley_generators(cfg21, basis21, deformed=False)
    for alpha in range(cfg21.R + 1):
        lab = gs.cartan.simple_root_label(alpha)
        cw = cartan_weyl_generators(cfg21, basis21, lab)
        assert residual_norm(cw - gs.E[(alpha, "+")]) == 0.0
    for a_ in range(1, cfg21.R + 1):
        assert residual_norm(cartan_weyl_h(cfg21, basis21, a_, 0) - gs.H[a_]) == 0.0


def test_cw_empty_sum_warns(cfg21, basis21):
    lab = RootLabel((EPS, 1), (EPS, 2), m=cfg21.S)
    with pytest.warns(UserWarning, match="empty truncated sum"):
        op = cartan_weyl_generators(cfg21, basis21, lab)
    assert op.nnz == 0


def test_cw_label_validation(cfg21, basis21):
    with pytest.raises(ValueError):
        RootLabel((EPS, 1), (EPS, 1))
    with pytest.raises(ValueError):
        cartan_weyl_generators(cfg21, basis21, RootLabel((EPS, 3), (EPS, 1)))
