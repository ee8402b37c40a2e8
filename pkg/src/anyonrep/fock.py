"""Finite Fock spaces for mixed fermionic/bosonic lattice oscillators.

The lattice is a stack of ``K`` horizontal lines, each carrying ``S`` sites at
half-integer positions symmetric about zero.  Every site hosts ``M`` fermionic
and ``N`` bosonic oscillator modes; bosons are truncated at occupation
``n_max``.  The full state space is the tensor product of all mode spaces,
dimension ``2^(M*S*K) * (n_max+1)^(N*S*K)``.

Operators are scipy CSR matrices over this basis.  Fermionic operators carry
Jordan-Wigner sign strings over all fermionic modes preceding the target in a
fixed global order (line, then site ascending, then flavor ascending), so the
canonical anticommutation relations hold exactly for every mode pair.
Operators and bases are immutable by convention once built; nothing in this
package mutates a returned matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

FERMION = "fermion"
BOSON = "boson"
SEA = "sea"
EMPTY = "empty"

DEFAULT_DIM_CAP = 100_000


class ConfigError(ValueError):
    """Invalid lattice/deformation configuration."""


class InstanceTooLargeError(RuntimeError):
    """Basis dimension exceeds the configured cap."""


class EmptyBulkError(RuntimeError):
    """Bulk projector selects no states."""


# ---------------------------------------------------------------------------
# deformation parameter helpers
# ---------------------------------------------------------------------------

def q_power(q: complex, x) -> np.ndarray | complex:
    """q**x through the principal logarithm (consistent branch everywhere).

    ``x`` may be a scalar or an ndarray of real exponents.
    """
    lg = cmath.log(q)
    if np.isscalar(x):
        return cmath.exp(x * lg)
    return np.exp(np.asarray(x) * lg)


def q_number(n, q: complex) -> complex:
    """The symmetric q-integer [n]_q = (q^n - q^-n)/(q - q^-1).

    Computed as sinh(n log q)/sinh(log q), which stays accurate for q near 1
    and reduces to sin(n pi nu)/sin(pi nu) on the unit circle.
    """
    lg = cmath.log(q)
    if lg == 0:
        return complex(n)
    denom = cmath.sinh(lg)
    if denom == 0:  # q = -1
        return complex(n * (-1) ** (n - 1))
    return cmath.sinh(n * lg) / denom


def q_bracket_diag(h: sp.spmatrix, q: complex) -> sp.csr_matrix:
    """[H]_q for a diagonal operator H with real spectrum."""
    d = _require_diagonal(h, "q_bracket_diag")
    vals = np.array([q_number(x, q) for x in d.real], dtype=complex)
    return sp.diags(vals, format="csr", dtype=complex).tocsr()


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeConfig:
    """Lattice geometry, mode content, truncation and deformation parameter.

    ``ordering`` is either a single scheme name ("sea" or "empty") applied to
    every line, or a K-tuple of per-line schemes.  Exactly one of ``nu``
    (q = exp(i pi nu)) and ``q_real`` (positive real q) must be given.
    """

    M: int
    N: int
    S: int
    K: int = 1
    n_max: int = 2
    ordering: str | tuple = SEA
    nu: float | None = None
    q_real: float | None = None
    tol: float = 1e-10
    dim_cap: int = DEFAULT_DIM_CAP
    bare_cross_line: bool = False

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ConfigError("need M >= 1 and N >= 1")
        if self.M + self.N - 1 < 2:
            raise ConfigError("M = N = 1 is excluded (degenerate rank)")
        if self.S < 2 or self.S % 2:
            raise ConfigError("S must be even and >= 2")
        if self.K < 1:
            raise ConfigError("K must be >= 1")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        ordering = self.ordering
        if isinstance(ordering, str):
            ordering = (ordering,) * self.K
        else:
            ordering = tuple(ordering)
        if len(ordering) != self.K:
            raise ConfigError("per-line ordering needs exactly K entries")
        for o in ordering:
            if o not in (SEA, EMPTY):
                raise ConfigError(f"unknown ordering scheme {o!r}")
        object.__setattr__(self, "ordering", ordering)
        if (self.nu is None) == (self.q_real is None):
            raise ConfigError("give exactly one of nu and q_real")
        if self.q_real is not None and self.q_real <= 0:
            raise ConfigError("q_real must be positive")
        if self.tol <= 0:
            raise ConfigError("tol must be positive")
        q = self.q
        for n in range(1, self.n_max + 1):
            val = q_number(n, q)
            if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)) or val.real <= 1e-12:
                raise ConfigError(
                    f"[{n}]_q = {val:.6g} is not a positive real; "
                    "lower n_max or move q (need [n]_q > 0 up to the cutoff)"
                )

    # -- derived quantities -------------------------------------------------

    @property
    def q(self) -> complex:
        if self.nu is not None:
            return cmath.exp(1j * math.pi * self.nu)
        return complex(self.q_real)

    @property
    def R(self) -> int:
        return self.M + self.N - 1

    @property
    def sites(self) -> tuple[float, ...]:
        return tuple(-(self.S - 1) / 2 + k for k in range(self.S))

    @property
    def lines(self) -> tuple[int, ...]:
        return tuple(range(1, self.K + 1))

    def line_ordering(self, line: int) -> str:
        return self.ordering[line - 1]

    @property
    def fermion_count(self) -> int:
        return self.M * self.S * self.K

    @property
    def boson_count(self) -> int:
        return self.N * self.S * self.K

    @property
    def dim(self) -> int:
        return 2 ** self.fermion_count * (self.n_max + 1) ** self.boson_count


@dataclass(frozen=True)
class Corruption:
    """Deliberate defects injected for negative-control runs.

    ``flip_q_alpha``      invert the node-dependent deformation map q_alpha.
    ``drop_h0_delta``     omit the -delta_{r+1/2,0} constant from the affine
                          Cartan piece on sea-ordered lines.
    ``flip_boson_disorder`` build bosonic disorder factors with the fermionic
                          exponent sign.
    """

    flip_q_alpha: bool = False
    drop_h0_delta: bool = False
    flip_boson_disorder: bool = False

    def __bool__(self):
        return self.flip_q_alpha or self.drop_h0_delta or self.flip_boson_disorder


NO_CORRUPTION = Corruption()


@dataclass(frozen=True)
class ModeId:
    """One oscillator mode: statistics, flavor, and lattice position."""

    kind: str
    flavor: int
    line: int
    site: float

    def __str__(self):
        tag = "c" if self.kind == FERMION else "d"
        pos = f"{self.site:+g}" if self.line == 1 else f"L{self.line}:{self.site:+g}"
        return f"{tag}{self.flavor}({pos})"


def fermion_mode(flavor: int, site: float, line: int = 1) -> ModeId:
    return ModeId(FERMION, flavor, line, site)


def boson_mode(flavor: int, site: float, line: int = 1) -> ModeId:
    return ModeId(BOSON, flavor, line, site)


def site_order_sign(line_a: int, site_a: float, line_b: int, site_b: float) -> int:
    """Sign of (line_a, site_a) relative to (line_b, site_b), line-major.

    +1 if a comes after b, -1 if before, 0 if equal.  On one line this is the
    sign function of the site difference; across lines the line index decides,
    which realizes the two-dimensional half-plane angle convention.
    """
    if line_a != line_b:
        return 1 if line_a > line_b else -1
    if site_a == site_b:
        return 0
    return 1 if site_a > site_b else -1


# ---------------------------------------------------------------------------
# basis
# ---------------------------------------------------------------------------

class FockBasis:
    """Occupation-number basis with fermionic parity data.

    State index = f * NB + b where f encodes fermionic occupations as bits
    (slot j = bit j) and b encodes bosonic occupations as base-(n_max+1)
    digits.  Slots follow the global mode order (line, site, flavor).
    """

    def __init__(self, cfg: LatticeConfig):
        dim = cfg.dim
        if dim > cfg.dim_cap:
            raise InstanceTooLargeError(
                f"instance too large: dimension {dim} exceeds cap {cfg.dim_cap}"
            )
        self.cfg = cfg
        order = [
            (line, site, flavor)
            for line in cfg.lines
            for site in cfg.sites
            for flavor in range(1, max(cfg.M, cfg.N) + 1)
        ]
        self.fermion_modes = tuple(
            ModeId(FERMION, fl, ln, st) for (ln, st, fl) in order if fl <= cfg.M
        )
        self.boson_modes = tuple(
            ModeId(BOSON, fl, ln, st) for (ln, st, fl) in order if fl <= cfg.N
        )
        self.F = len(self.fermion_modes)
        self.B = len(self.boson_modes)
        self._fslot = {m: j for j, m in enumerate(self.fermion_modes)}
        self._bslot = {m: j for j, m in enumerate(self.boson_modes)}
        self.NF = 2 ** self.F
        self.NB = (cfg.n_max + 1) ** self.B
        self.dim = dim

        f = np.arange(self.NF, dtype=np.int64)
        self.f_occ = ((f[:, None] >> np.arange(self.F)) & 1).astype(np.uint8)
        # parity prefix: number of occupied fermionic slots strictly below j
        below = np.cumsum(self.f_occ, axis=1) - self.f_occ
        self.f_sign = np.where(below % 2 == 0, 1, -1).astype(np.int8)

        b = np.arange(self.NB, dtype=np.int64)
        nb = cfg.n_max + 1
        self.b_occ = ((b[:, None] // nb ** np.arange(self.B)) % nb).astype(np.uint8)

    def fermion_slot(self, mode: ModeId) -> int:
        return self._fslot[mode]

    def boson_slot(self, mode: ModeId) -> int:
        return self._bslot[mode]

    def occupations(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        """(fermionic, bosonic) occupation vectors of one basis state."""
        f, b = divmod(index, self.NB)
        return self.f_occ[f].copy(), self.b_occ[b].copy()

    def index_for(self, f_occ, b_occ) -> int:
        f = int(np.dot(np.asarray(f_occ, dtype=np.int64), 2 ** np.arange(self.F)))
        nb = self.cfg.n_max + 1
        b = int(np.dot(np.asarray(b_occ, dtype=np.int64), nb ** np.arange(self.B)))
        return f * self.NB + b

    def vacuum_occupation(self, mode: ModeId) -> int:
        """Occupation of this mode in the reference vacuum of its line's scheme."""
        if self.cfg.line_ordering(mode.line) == SEA:
            if mode.kind == FERMION and mode.site < 0:
                return 1
        return 0

    def vacuum_index(self) -> int:
        f_occ = [self.vacuum_occupation(m) for m in self.fermion_modes]
        return self.index_for(f_occ, [0] * self.B)

    def state_str(self, index: int) -> str:
        f_occ, b_occ = self.occupations(index)
        fs = ",".join(f"{m}={n}" for m, n in zip(self.fermion_modes, f_occ))
        bs = ",".join(f"{m}={n}" for m, n in zip(self.boson_modes, b_occ))
        return f"|{fs}; {bs}>"


def build_basis(cfg: LatticeConfig) -> FockBasis:
    """Enumerate the occupation basis; deterministic state ordering."""
    return FockBasis(cfg)


# ---------------------------------------------------------------------------
# elementary operators
# ---------------------------------------------------------------------------

def identity_op(basis: FockBasis) -> sp.csr_matrix:
    return sp.identity(basis.dim, format="csr", dtype=complex)


def zero_op(basis: FockBasis) -> sp.csr_matrix:
    return sp.csr_matrix((basis.dim, basis.dim), dtype=complex)


def diag_operator(diagonal: np.ndarray) -> sp.csr_matrix:
    return sp.diags(np.asarray(diagonal, dtype=complex), format="csr").tocsr()


def fermion_annihilate(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    """c for one fermionic mode, with the Jordan-Wigner string over all
    fermionic slots preceding the mode in the global order."""
    if mode.kind != FERMION:
        raise ValueError(f"{mode} is not fermionic")
    j = basis.fermion_slot(mode)
    src = np.nonzero(basis.f_occ[:, j])[0]
    dst = src ^ (1 << j)
    vals = basis.f_sign[src, j].astype(complex)
    nb = basis.NB
    block = np.arange(nb, dtype=np.int64)
    rows = (dst[:, None] * nb + block).ravel()
    cols = (src[:, None] * nb + block).ravel()
    data = np.repeat(vals, nb)
    return sp.csr_matrix((data, (rows, cols)), shape=(basis.dim, basis.dim))


def boson_annihilate(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    """d with d|n> = sqrt(n) |n-1>, hard cutoff at n_max."""
    if mode.kind != BOSON:
        raise ValueError(f"{mode} is not bosonic")
    j = basis.boson_slot(mode)
    stride = (cfg.n_max + 1) ** j
    occ = basis.b_occ[:, j]
    src = np.nonzero(occ)[0]
    dst = src - stride
    vals = np.sqrt(occ[src].astype(float)).astype(complex)
    nb = basis.NB
    fblock = np.arange(basis.NF, dtype=np.int64) * nb
    rows = (fblock[:, None] + dst).ravel()
    cols = (fblock[:, None] + src).ravel()
    data = np.tile(vals, basis.NF)
    return sp.csr_matrix((data, (rows, cols)), shape=(basis.dim, basis.dim))


def annihilate(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    if mode.kind == FERMION:
        return fermion_annihilate(cfg, basis, mode)
    return boson_annihilate(cfg, basis, mode)


def create(cfg: LatticeConfig, basis: FockBasis, mode: ModeId) -> sp.csr_matrix:
    return op_adjoint(annihilate(cfg, basis, mode))


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------

def _check_shapes(x: sp.spmatrix, y: sp.spmatrix):
    if x.shape != y.shape:
        raise ValueError(f"operator dimensions differ: {x.shape} vs {y.shape}")


def op_add(x: sp.spmatrix, y: sp.spmatrix) -> sp.csr_matrix:
    _check_shapes(x, y)
    return (x + y).tocsr()


def op_mul(x: sp.spmatrix, y: sp.spmatrix) -> sp.csr_matrix:
    _check_shapes(x, y)
    return (x @ y).tocsr()


def op_scale(c: complex, x: sp.spmatrix) -> sp.csr_matrix:
    return (c * x).tocsr()


def op_adjoint(x: sp.spmatrix) -> sp.csr_matrix:
    return x.conjugate().transpose().tocsr()


def supercommutator(x: sp.spmatrix, y: sp.spmatrix, grade_x: int, grade_y: int) -> sp.csr_matrix:
    """X Y - (-1)^(gx*gy) Y X."""
    _check_shapes(x, y)
    sign = -1.0 if (grade_x * grade_y) % 2 else 1.0
    return (x @ y - sign * (y @ x)).tocsr()


def q_commutator(x: sp.spmatrix, y: sp.spmatrix, q: complex) -> sp.csr_matrix:
    """X Y - q Y X."""
    _check_shapes(x, y)
    return (x @ y - q * (y @ x)).tocsr()


def _require_diagonal(d: sp.spmatrix, where: str) -> np.ndarray:
    d = d.tocsr()
    diag = d.diagonal()
    off = d - sp.diags(diag, format="csr")
    if off.nnz and np.abs(off.data).max() > 1e-14:
        raise ValueError(f"{where}: operator is not diagonal")
    if np.abs(diag.imag).max(initial=0.0) > 1e-12:
        raise ValueError(f"{where}: diagonal is not real")
    return diag


def diag_exp(d: sp.spmatrix, base: complex) -> sp.csr_matrix:
    """base**D for a diagonal D with real spectrum (e.g. q^{H/2})."""
    diag = _require_diagonal(d, "diag_exp")
    return diag_operator(q_power(base, diag.real))


def residual_norm(x: sp.spmatrix) -> float:
    """Largest entry magnitude; the residual measure used by every check."""
    if x.nnz == 0:
        return 0.0
    return float(np.abs(x.data).max())


# ---------------------------------------------------------------------------
# bulk projector
# ---------------------------------------------------------------------------

def bulk_mask(cfg: LatticeConfig, basis: FockBasis, boundary_margin: int,
              boson_headroom: int) -> np.ndarray:
    """Boolean diagonal of the bulk projector.

    Keeps states whose ``boundary_margin`` outermost sites on every line carry
    the vacuum occupation of that line's scheme and whose bosonic occupations
    all stay at or below n_max - boson_headroom.
    """
    if boundary_margin < 0:
        raise ValueError("boundary_margin must be >= 0")
    if not 0 <= boson_headroom <= cfg.n_max:
        raise ValueError("boson_headroom must lie in [0, n_max]")
    sites = cfg.sites
    m = min(boundary_margin, cfg.S)
    boundary = set(sites[:m]) | set(sites[len(sites) - m:])

    f_ok = np.ones(basis.NF, dtype=bool)
    for mode in basis.fermion_modes:
        if mode.site in boundary:
            j = basis.fermion_slot(mode)
            f_ok &= basis.f_occ[:, j] == basis.vacuum_occupation(mode)
    b_ok = (basis.b_occ <= cfg.n_max - boson_headroom).all(axis=1)
    for mode in basis.boson_modes:
        if mode.site in boundary:
            j = basis.boson_slot(mode)
            b_ok &= basis.b_occ[:, j] == 0
    return (f_ok[:, None] & b_ok[None, :]).ravel()


def bulk_projector(cfg: LatticeConfig, basis: FockBasis, boundary_margin: int = 1,
                   boson_headroom: int = 0) -> sp.csr_matrix:
    mask = bulk_mask(cfg, basis, boundary_margin, boson_headroom)
    if not mask.any():
        raise EmptyBulkError("empty bulk: no state satisfies the boundary constraints")
    return diag_operator(mask.astype(complex))
