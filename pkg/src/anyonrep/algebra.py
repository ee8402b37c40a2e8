"""Cartan data and the oscillator/anyonic realizations of the simple
generators, plus mode-shifted Cartan-Weyl operators and the central element.

Node 0 is the affine node; the odd (isotropic) nodes are 0 and M.  The affine
Cartan matrix follows the cyclic rule: even nodes get diagonal 2 with -1
couplings to both neighbours, odd nodes get diagonal 0 with -1 to the
predecessor and +1 to the successor (indices mod R+1, degenerate overlaps
summed).

Simple generators are sums of local one- or two-site pieces.  The deformed set
replaces oscillators by anyons; every deformed local piece factorizes into the
q-boson local generator times a diagonal string tail, which is what the
coproduct suite checks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .fock import (
    BOSON,
    FERMION,
    SEA,
    ConfigError,
    Corruption,
    FockBasis,
    LatticeConfig,
    ModeId,
    NO_CORRUPTION,
    annihilate,
    build_basis,
    create,
    diag_operator,
    diag_exp,
    q_power,
    site_order_sign,
    zero_op,
)
from .anyons import anyon, string_exponent
from .oscillators import (
    normal_number_diag,
    normal_ordered_number,
    q_boson_annihilate,
    q_boson_create,
)

EPS = "eps"
DELTA = "delta"


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootLabel:
    """A root w_pos - w_neg in the eps/delta weight basis, with mode number m."""

    pos: tuple[str, int]
    neg: tuple[str, int]
    m: int = 0

    def __post_init__(self):
        for kind, _ in (self.pos, self.neg):
            if kind not in (EPS, DELTA):
                raise ValueError(f"weight kind must be eps or delta, got {kind!r}")
        if self.pos == self.neg:
            raise ValueError("pos and neg weights must differ")

    @property
    def parity(self) -> int:
        return 1 if self.pos[0] != self.neg[0] else 0

    def __str__(self):
        return (f"{self.pos[0]}{self.pos[1]}-{self.neg[0]}{self.neg[1]}"
                f":m={self.m}")


@dataclass(frozen=True)
class CartanData:
    """Affine Cartan matrix, its all-minus variant, symmetrizers and grading."""

    M: int
    N: int
    a_rows: tuple
    a_tilde_rows: tuple
    d: tuple
    parity: tuple

    @property
    def R(self) -> int:
        return self.M + self.N - 1

    @property
    def a(self) -> np.ndarray:
        return np.array(self.a_rows, dtype=int)

    @property
    def a_tilde(self) -> np.ndarray:
        return np.array(self.a_tilde_rows, dtype=int)

    def q_alpha(self, q: complex, corruption: Corruption = NO_CORRUPTION) -> tuple:
        """q_alpha = q for alpha = 0..M and q^{-1} above M (inverted under the
        flip_q_alpha control)."""
        out = []
        for alpha in range(self.R + 1):
            e = 1 if alpha <= self.M else -1
            if corruption.flip_q_alpha:
                e = -e
            out.append(q_power(q, e))
        return tuple(out)

    def simple_root_label(self, alpha: int) -> RootLabel:
        """Root/mode correspondence of e_alpha^+."""
        M, N = self.M, self.N
        if 1 <= alpha <= M - 1:
            return RootLabel((EPS, alpha), (EPS, alpha + 1))
        if alpha == M:
            return RootLabel((EPS, M), (DELTA, 1))
        if M < alpha <= self.R:
            k = alpha - M
            return RootLabel((DELTA, k), (DELTA, k + 1))
        if alpha == 0:
            return RootLabel((DELTA, N), (EPS, 1), m=1)
        raise ValueError(f"no node {alpha}")


@lru_cache(maxsize=None)
def cartan_data(M: int, N: int) -> CartanData:
    R = M + N - 1
    if M < 1 or N < 1 or R < 2:
        raise ConfigError("need M, N >= 1 with M + N - 1 >= 2")
    n = R + 1
    odd = {0, M}
    a = np.zeros((n, n), dtype=int)
    for al in range(n):
        nxt, prv = (al + 1) % n, (al - 1) % n
        if al in odd:
            a[al, prv] += -1
            a[al, nxt] += +1
        else:
            a[al, al] = 2
            a[al, prv] += -1
            a[al, nxt] += -1
    at = a.copy()
    at[(at > 0) & ~np.eye(n, dtype=bool)] = -1
    d = tuple(1 if al <= M else -1 for al in range(n))
    parity = tuple(1 if al in odd else 0 for al in range(n))
    return CartanData(M, N,
                      tuple(map(tuple, a.tolist())),
                      tuple(map(tuple, at.tolist())),
                      d, parity)


def h_coefficients(M: int, N: int, a: int) -> dict:
    """Per-flavor coefficients of h_a as a number-operator combination."""
    if 1 <= a <= M - 1:
        return {(FERMION, a): 1, (FERMION, a + 1): -1}
    if a == M:
        return {(FERMION, M): 1, (BOSON, 1): 1}
    if M < a <= M + N - 1:
        k = a - M
        return {(BOSON, k): 1, (BOSON, k + 1): -1}
    raise ValueError(f"h_{a} is not a horizontal Cartan generator")


def root_weight(M: int, N: int, a: int, root: RootLabel) -> int:
    """Pairing <root, h_a>: the eigenvalue shift e_root causes in h_a."""
    coeff = h_coefficients(M, N, a)

    def weight_coeff(w):
        kind = FERMION if w[0] == EPS else BOSON
        return coeff.get((kind, w[1]), 0)

    return weight_coeff(root.pos) - weight_coeff(root.neg)


# ---------------------------------------------------------------------------
# simple generators
# ---------------------------------------------------------------------------

def _h_local_diag(cfg: LatticeConfig, basis: FockBasis, alpha: int, line: int,
                  r: float, corruption: Corruption) -> np.ndarray:
    M, N = cfg.M, cfg.N

    def nf(flavor, site):
        return normal_number_diag(cfg, basis, ModeId(FERMION, flavor, line, site))

    def nb(flavor, site):
        return normal_number_diag(cfg, basis, ModeId(BOSON, flavor, line, site))

    if 1 <= alpha <= M - 1:
        return nf(alpha, r) - nf(alpha + 1, r)
    if alpha == M:
        return nf(M, r) + nb(1, r)
    if M < alpha <= cfg.R:
        k = alpha - M
        return nb(k, r) - nb(k + 1, r)
    if alpha == 0:
        v = nb(N, r) + nf(1, r + 1)
        if (cfg.line_ordering(line) == SEA and r == -0.5
                and not corruption.drop_h0_delta):
            v = v - 1.0
        return v
    raise ValueError(f"no node {alpha}")


def admissible_sites(cfg: LatticeConfig, alpha: int) -> tuple[float, ...]:
    """Sites carrying a local piece; the affine node needs r+1 on the line."""
    return cfg.sites[:-1] if alpha == 0 else cfg.sites


def _local_e(cfg: LatticeConfig, basis: FockBasis, alpha: int, sign: str,
             line: int, r: float, deformed: bool,
             corruption: Corruption) -> sp.csr_matrix:
    M, N = cfg.M, cfg.N

    def f(flavor, site):
        return ModeId(FERMION, flavor, line, site)

    def b(flavor, site):
        return ModeId(BOSON, flavor, line, site)

    if deformed:
        def low(mode, family):
            return anyon(cfg, basis, mode, family, corruption=corruption)

        def dag(mode, family):
            return anyon(cfg, basis, mode, family, dagger=True,
                         corruption=corruption)
    else:
        def low(mode, family):
            return annihilate(cfg, basis, mode)

        def dag(mode, family):
            return create(cfg, basis, mode)

    if 1 <= alpha <= M - 1:
        if sign == "+":
            return (dag(f(alpha, r), "a") @ low(f(alpha + 1, r), "a")).tocsr()
        return (dag(f(alpha + 1, r), "a~") @ low(f(alpha, r), "a~")).tocsr()
    if alpha == M:
        if sign == "+":
            return (dag(f(M, r), "a") @ low(b(1, r), "A")).tocsr()
        return (dag(b(1, r), "A~") @ low(f(M, r), "a~")).tocsr()
    if M < alpha <= cfg.R:
        k = alpha - M
        if sign == "+":
            return (dag(b(k, r), "A") @ low(b(k + 1, r), "A")).tocsr()
        return (dag(b(k + 1, r), "A~") @ low(b(k, r), "A~")).tocsr()
    if alpha == 0:
        if sign == "+":
            return (dag(b(N, r), "A") @ low(f(1, r + 1), "a")).tocsr()
        return (dag(f(1, r + 1), "a~") @ low(b(N, r), "A~")).tocsr()
    raise ValueError(f"no node {alpha}")


def local_q_generator(cfg: LatticeConfig, basis: FockBasis, alpha: int,
                      sign: str, line: int, r: float) -> sp.csr_matrix:
    """The undressed local generator with bosons replaced by q-bosons."""
    M, N = cfg.M, cfg.N

    def c(flavor, site):
        return annihilate(cfg, basis, ModeId(FERMION, flavor, line, site))

    def cd(flavor, site):
        return create(cfg, basis, ModeId(FERMION, flavor, line, site))

    def bq(flavor, site):
        return q_boson_annihilate(cfg, basis, ModeId(BOSON, flavor, line, site))

    def bqd(flavor, site):
        return q_boson_create(cfg, basis, ModeId(BOSON, flavor, line, site))

    if 1 <= alpha <= M - 1:
        return (cd(alpha, r) @ c(alpha + 1, r) if sign == "+"
                else cd(alpha + 1, r) @ c(alpha, r)).tocsr()
    if alpha == M:
        return (cd(M, r) @ bq(1, r) if sign == "+"
                else bqd(1, r) @ c(M, r)).tocsr()
    if M < alpha <= cfg.R:
        k = alpha - M
        return (bqd(k, r) @ bq(k + 1, r) if sign == "+"
                else bqd(k + 1, r) @ bq(k, r)).tocsr()
    if alpha == 0:
        return (bqd(N, r) @ c(1, r + 1) if sign == "+"
                else cd(1, r + 1) @ bq(N, r)).tocsr()
    raise ValueError(f"no node {alpha}")


def string_tail_exponent(cfg: LatticeConfig, basis: FockBasis, alpha: int,
                         line: int, r: float,
                         site_filter=None) -> np.ndarray:
    """sum_t eps(t - x) :h_alpha(t): restricted to sites accepted by the filter.

    Only defined for alpha != 0, whose local Cartan pieces sit on one site.
    """
    if alpha == 0:
        raise ValueError("the affine node has a two-site tail; use eq57_tail")
    total = np.zeros(basis.dim)
    for ln in cfg.lines:
        for t in cfg.sites:
            if site_filter is not None and not site_filter(ln, t):
                continue
            eps = site_order_sign(ln, t, line, r)
            if eps == 0:
                continue
            total += eps * _h_local_diag(cfg, basis, alpha, ln, t, NO_CORRUPTION)
    return total


def eq57_tail(cfg: LatticeConfig, basis: FockBasis, cartan: CartanData,
              alpha: int, line: int, r: float,
              corruption: Corruption = NO_CORRUPTION,
              flip: bool = False) -> sp.csr_matrix:
    """Diagonal tail such that E_alpha(r) = e_hat_alpha(r) * tail.

    For alpha != 0 it is q_alpha^{1/2 sum_t eps(t-r) :h_alpha(t):}.  The affine
    node straddles (r, r+1) and its tail carries both oscillator strings with
    the opposite base sign:
    q_0^{-1/2 [sum_t eps(t-r) :n'_N(t): + sum_t eps(t-(r+1)) :n_1(t):]}.
    """
    qa = cartan.q_alpha(cfg.q, corruption)[alpha]
    if flip:
        qa = 1 / qa
    if alpha != 0:
        expo = 0.5 * string_tail_exponent(cfg, basis, alpha, line, r)
        return diag_operator(q_power(qa, expo))
    expo = (string_exponent(cfg, basis, BOSON, cfg.N, line, r)
            + string_exponent(cfg, basis, FERMION, 1, line, r + 1))
    return diag_operator(q_power(qa, -0.5 * expo))


@dataclass
class GeneratorSet:
    """Assembled simple generators with their per-site local pieces."""

    cfg: LatticeConfig
    basis: FockBasis
    cartan: CartanData
    deformed: bool
    corruption: Corruption
    H: dict
    E: dict
    H_local: dict
    E_local: dict

    def q_alpha(self, alpha: int) -> complex:
        return self.cartan.q_alpha(self.cfg.q, self.corruption)[alpha]

    def grade(self, alpha: int) -> int:
        return self.cartan.parity[alpha]

    def script_e(self, alpha: int, sign: str) -> sp.csr_matrix:
        """Rescaled generator E_alpha^s q_alpha^{-H_alpha/2}."""
        key = (alpha, sign)
        if key not in self._script:
            self._script[key] = (self.E[key] @ diag_exp(
                -0.5 * self.H[alpha], self.q_alpha(alpha))).tocsr()
        return self._script[key]

    def __post_init__(self):
        self._script = {}


def chevalley_generators(cfg: LatticeConfig, basis: FockBasis | None = None,
                         deformed: bool = True,
                         corruption: Corruption = NO_CORRUPTION) -> GeneratorSet:
    """Build H_alpha and E_alpha^+- as sums of local pieces over all lines."""
    if basis is None:
        basis = build_basis(cfg)
    cartan = cartan_data(cfg.M, cfg.N)
    H, E, H_local, E_local = {}, {}, {}, {}
    for alpha in range(cfg.R + 1):
        hd = np.zeros(basis.dim)
        for line in cfg.lines:
            for r in admissible_sites(cfg, alpha):
                loc = _h_local_diag(cfg, basis, alpha, line, r, corruption)
                H_local[(alpha, line, r)] = diag_operator(loc)
                hd += loc
        H[alpha] = diag_operator(hd)
        for sign in ("+", "-"):
            total = zero_op(basis)
            for line in cfg.lines:
                for r in admissible_sites(cfg, alpha):
                    loc = _local_e(cfg, basis, alpha, sign, line, r,
                                   deformed, corruption)
                    E_local[(alpha, sign, line, r)] = loc
                    total = total + loc
            E[(alpha, sign)] = total.tocsr()
    return GeneratorSet(cfg, basis, cartan, deformed, corruption,
                        H, E, H_local, E_local)


@lru_cache(maxsize=32)
def cached_generators(cfg: LatticeConfig, deformed: bool,
                      corruption: Corruption = NO_CORRUPTION) -> GeneratorSet:
    return chevalley_generators(cfg, cached_basis(cfg), deformed, corruption)


@lru_cache(maxsize=32)
def cached_basis(cfg: LatticeConfig) -> FockBasis:
    return build_basis(cfg)


def central_charge_operator(genset: GeneratorSet,
                            cartan: CartanData | None = None) -> sp.csr_matrix:
    """Gamma = -H_0 + sum_{i<=M} H_i - sum_{k<N} H_{M+k}.

    Acts as the central charge (number of sea-ordered lines) on bulk states;
    off bulk it reduces to boundary occupations n_1(r_min) + n'_N(r_max)
    summed over lines.
    """
    cfg = genset.cfg
    out = -1 * genset.H[0]
    for i in range(1, cfg.M + 1):
        out = out + genset.H[i]
    for k in range(1, cfg.N):
        out = out - genset.H[cfg.M + k]
    return out.tocsr()


# ---------------------------------------------------------------------------
# Cartan-Weyl generators (undeformed)
# ---------------------------------------------------------------------------

def _mode_for(kind_tag: str, flavor: int, line: int, site: float) -> ModeId:
    kind = FERMION if kind_tag == EPS else BOSON
    return ModeId(kind, flavor, line, site)


def cartan_weyl_generators(cfg: LatticeConfig, basis: FockBasis,
                           label: RootLabel) -> sp.csr_matrix:
    """e_root^m = sum_r (pos mode)^dag(r) (neg mode)(r+m), truncated."""
    for kind, idx in (label.pos, label.neg):
        hi = cfg.M if kind == EPS else cfg.N
        if not 1 <= idx <= hi:
            raise ValueError(f"flavor index out of range in {label}")
    total = zero_op(basis)
    terms = 0
    for line in cfg.lines:
        for r in cfg.sites:
            s = r + label.m
            if s not in cfg.sites:
                continue
            up = create(cfg, basis, _mode_for(*label.pos, line, r))
            dn = annihilate(cfg, basis, _mode_for(*label.neg, line, s))
            total = total + up @ dn
            terms += 1
    if terms == 0:
        warnings.warn(f"empty truncated sum for {label}; returning zero operator")
    return total.tocsr()


def cartan_weyl_h(cfg: LatticeConfig, basis: FockBasis, a: int, m: int) -> sp.csr_matrix:
    """h_a^m; at m = 0 the bilinears become normal-ordered number operators."""
    coeff = h_coefficients(cfg.M, cfg.N, a)
    total = zero_op(basis)
    terms = 0
    for (kind, flavor), w in coeff.items():
        for line in cfg.lines:
            for r in cfg.sites:
                s = r + m
                if s not in cfg.sites:
                    continue
                mode_r = ModeId(kind, flavor, line, r)
                if m == 0:
                    total = total + w * normal_ordered_number(cfg, basis, mode_r)
                else:
                    mode_s = ModeId(kind, flavor, line, s)
                    total = total + w * (create(cfg, basis, mode_r)
                                         @ annihilate(cfg, basis, mode_s))
                terms += 1
    if terms == 0:
        warnings.warn(f"empty truncated sum for h_{a}^{m}; returning zero operator")
    return total.tocsr()


def compose_roots(a: RootLabel, b: RootLabel) -> RootLabel | None:
    """a + b when the chain matches (neg of a equals pos of b), else None."""
    if a.neg == b.pos and a.pos != b.neg:
        return RootLabel(a.pos, b.neg, m=a.m + b.m)
    return None
