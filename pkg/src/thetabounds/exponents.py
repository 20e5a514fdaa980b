"""Volume exponents for the pair (X_H, X') and the exponent E(p^k).

With K_H(n) = K(n) K_f^H and n = p^k one has

    [K_f : K_H(p^k)] = |G(O/p^k)| / |H(O/p^k)|,   [K'_f : K'(p^k)] = |G'(O/p^k)|,

where G = O_{n+m} or U_{n+m}, H = G_n x G_m and G' = Sp_2m or U_2m.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import finorders
from .density import beta, beta_tilde
from .finorders import GroupFamily, group_dimension
from .rootsys import (
    SpectralParameter,
    build_root_system,
    orthogonal,
    symplectic_split,
    unitary,
    unitary_split,
)


class Case(enum.Enum):
    ORTHOGONAL = "orth"  # E = F
    UNITARY = "unit"  # E != F


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class ConfigurationCase:
    """(n, m, case) with n > m >= 1, n + m >= 4 even.

    ``relaxed=True`` keeps only n > m >= 1, for exploring boundary cases
    outside the standing hypotheses.
    """

    n: int
    m: int
    case: Case
    relaxed: bool = False

    def __post_init__(self):
        if not self.n > self.m >= 1:
            raise ConfigurationError(f"need n > m >= 1, got n={self.n}, m={self.m}")
        if not self.relaxed:
            if (self.n + self.m) % 2:
                raise ConfigurationError(f"n + m = {self.n + self.m} must be even")
            if self.n + self.m < 4:
                raise ConfigurationError("n + m must be >= 4")

    @property
    def group_family(self) -> GroupFamily:
        return GroupFamily.O if self.case is Case.ORTHOGONAL else GroupFamily.U

    def dim_G(self) -> int:
        return group_dimension(self.group_family, self.n + self.m)

    def dim_H(self) -> int:
        fam = self.group_family
        return group_dimension(fam, self.n) + group_dimension(fam, self.m)

    def dim_G_prime(self) -> int:
        if self.case is Case.ORTHOGONAL:
            return group_dimension(GroupFamily.SP, self.m)
        return group_dimension(GroupFamily.U, 2 * self.m)


def volume_exponents(cfg: ConfigurationCase) -> tuple:
    """Per-level exponents (a, b) with vol(X_H(p^k)) = q^{k a + o(1)}, vol(X'(p^k)) = q^{k b + o(1)}."""
    a = cfg.dim_G() - cfg.dim_H()
    b = cfg.dim_G_prime()
    if cfg.case is Case.ORTHOGONAL:
        assert (a, b) == (cfg.n * cfg.m, 2 * cfg.m ** 2 + cfg.m)
    else:
        assert (a, b) == (2 * cfg.n * cfg.m, 4 * cfg.m ** 2)
    return Fraction(a), Fraction(b)


def e_exponent(cfg: ConfigurationCase) -> Fraction:
    """E with vol_H^{1/2} / vol'^{1/2} = vol_H^{1/2 - E}, i.e. E = b / (2a)."""
    a, b = volume_exponents(cfg)
    E = b / (2 * a)
    closed = (Fraction(2 * cfg.m + 1, 2 * cfg.n) if cfg.case is Case.ORTHOGONAL
              else Fraction(cfg.m, cfg.n))
    assert E == closed
    return E


def nontriviality(cfg: ConfigurationCase) -> bool:
    if cfg.case is Case.UNITARY:
        verdict = 2 * cfg.m < cfg.n
    else:
        verdict = 2 * cfg.m < cfg.n - 1
    assert verdict == (e_exponent(cfg) < Fraction(1, 2))
    return verdict


def _default_eps(d):
    return 0 if d % 2 else 1


def _local_order(fam, d, q, level, eps):
    if fam is GroupFamily.O:
        return finorders.order_o(d, q, level, eps)
    return finorders.order_u(d, q, level)


def index_ratio(cfg: ConfigurationCase, q: int, level: int, eps=None) -> Fraction:
    """[K_f : K_H(p^k)] / [K'_f : K'(p^k)] as an exact rational, k = ``level``.

    ``eps`` = (eps_G, eps_n, eps_m) for the orthogonal factors; defaults to
    the split type in even dimension.
    """
    fam = cfg.group_family
    n, m = cfg.n, cfg.m
    if fam is GroupFamily.O:
        if eps is None:
            eps = (_default_eps(n + m), _default_eps(n), _default_eps(m))
        eG, en, em = eps
    else:
        eG = en = em = 0
    G = _local_order(fam, n + m, q, level, eG)
    H = _local_order(fam, n, q, level, en) * _local_order(fam, m, q, level, em)
    if cfg.case is Case.ORTHOGONAL:
        Gp = finorders.order_sp(m, q, level)
    else:
        Gp = finorders.order_u(2 * m, q, level)
    if G % H:
        raise ArithmeticError("|H| does not divide |G|")
    return Fraction(G // H, Gp)


def _exact_log(ratio: Fraction, q: int):
    """log_q of a rational; exact Fraction when it is a power of q."""
    num, den = ratio.numerator, ratio.denominator
    for top, bottom, sign in ((num, den, 1), (den, num, -1)):
        if bottom == 1:
            k, x = 0, top
            while x % q == 0 and x > 1:
                x //= q
                k += 1
            if x == 1:
                return Fraction(sign * k)
    return math.log(num) / math.log(q) - math.log(den) / math.log(q)


def slopes(cfg: ConfigurationCase, q: int, level_max: int, eps=None) -> list:
    """log_q(R(k+1)/R(k)) for k = 1 .. level_max - 1, R = index_ratio."""
    ratios = [index_ratio(cfg, q, k, eps) for k in range(1, level_max + 1)]
    return [_exact_log(b / a, q) for a, b in zip(ratios, ratios[1:])]


def measured_slope(cfg: ConfigurationCase, q: int, level_max: int, eps=None):
    """Slope between levels level_max - 1 and level_max (exact when possible)."""
    if not 2 <= level_max <= 6:
        raise ValueError("level_max must lie in [2, 6]")
    if finorders._prime_power(q) is None or finorders._prime_power(q)[1] != 1 or q == 2:
        raise ValueError("q must be an odd prime")
    return slopes(cfg, q, level_max, eps)[-1]


# Hybrid bound bookkeeping


def symmetric_spaces(cfg: ConfigurationCase):
    """Descriptors of S = G(R)/K and S' = G'(R)/K' at the distinguished place."""
    if cfg.case is Case.ORTHOGONAL:
        return orthogonal(cfg.n, cfg.m), symplectic_split(cfg.m)
    return unitary(cfg.n, cfg.m), unitary_split(cfg.m)


@dataclass(frozen=True)
class HybridComponents:
    vol_ratio_sqrt: float
    beta_ratio_sqrt: float | None
    log_factor: float | None
    multiplicity_sqrt: float = 1.0
    density_source: str = "beta"
    degenerate_log: bool = False
    exact_index_ratio_sqrt: float | None = None

    def bound(self):
        if self.degenerate_log or self.log_factor is None:
            return None
        return self.vol_ratio_sqrt * self.beta_ratio_sqrt * self.multiplicity_sqrt * self.log_factor


@dataclass(frozen=True)
class ExponentReport:
    cfg: ConfigurationCase
    volume_exponents: tuple
    E: Fraction
    nontrivial: bool
    measured_slope: object = None
    hybrid: HybridComponents | None = None
    notes: tuple = field(default_factory=tuple)

    def hybrid_factors_str(self) -> str:
        h = self.hybrid
        if h is None:
            return ""
        if h.degenerate_log:
            return f"vol={h.vol_ratio_sqrt:.12g};beta=NA;log=degenerate"
        return (f"vol={h.vol_ratio_sqrt:.12g};beta={h.beta_ratio_sqrt:.12g};"
                f"log={h.log_factor:.12g};src={h.density_source}")


def _split_norm(ideal_norm, q):
    """k with ideal_norm = q^k."""
    k, x = 0, ideal_norm
    while x % q == 0 and x > 1:
        x //= q
        k += 1
    if x != 1:
        raise ValueError(f"ideal norm {ideal_norm} is not a power of q={q}")
    return k


def hybrid_bound_report(cfg: ConfigurationCase, nu, ideal_norm: int, q: int | None = None,
                        mu_prime: float = 1.0, field_degree: int = 1, level_max: int = 3) -> ExponentReport:
    """Assemble the factors of the hybrid lower bound at (ideal norm, nu).

    vol_ratio_sqrt = N(n)^{(a - b)/2}, the main term of the volume ratio;
    beta_ratio_sqrt = (beta_S(nu)/beta_S'(nu))^{1/2}, from the c-function
    when the rank is at most 2 and from beta_tilde otherwise;
    log_factor = log(N(n)(1 + ||nu||))^{-m [F:Q]/2}, refused when the
    logarithm is <= 1. mu' defaults to 1 and is reported separately.
    """
    nu = nu if isinstance(nu, SpectralParameter) else SpectralParameter(nu)
    if not nu.is_tempered():
        raise ValueError("nu must be tempered")
    if nu.rank != cfg.m:
        raise ValueError(f"nu must have length m={cfg.m}")
    if ideal_norm < 1:
        raise ValueError("ideal norm must be a positive integer")
    a, b = volume_exponents(cfg)
    notes = []
    vol_sqrt = float(ideal_norm) ** float((a - b) / 2)
    L = math.log(ideal_norm * (1.0 + nu.norm()))
    degenerate = L <= 1.0
    log_factor = None if degenerate else L ** (-cfg.m * field_degree / 2.0)
    source = "beta" if cfg.m <= 2 else "beta_tilde"
    if degenerate:
        # out of the asymptotic regime; nu may also sit on a wall here
        notes.append("log factor degenerate: N(n)(1+||nu||) <= e")
        beta_sqrt = None
    else:
        S, Sp = (build_root_system(d) for d in symmetric_spaces(cfg))
        if source == "beta":
            ratio = beta(S, nu) / beta(Sp, nu)
        else:
            ratio = beta_tilde(S, nu) / beta_tilde(Sp, nu)
            notes.append("rank > 2: density ratio taken from the majorant beta_tilde")
        beta_sqrt = math.sqrt(ratio)
    exact = None
    slope = None
    if q is not None:
        k = _split_norm(ideal_norm, q)
        if k >= 1:
            exact = float(index_ratio(cfg, q, k)) ** 0.5
        slope = measured_slope(cfg, q, level_max)
    hybrid = HybridComponents(vol_sqrt, beta_sqrt, log_factor, math.sqrt(mu_prime),
                              source, degenerate, exact)
    if mu_prime == 1.0:
        notes.append("mu' set to 1 (not computed)")
    return ExponentReport(cfg, (a, b), e_exponent(cfg), nontriviality(cfg), slope, hybrid, tuple(notes))


def exponent_report(cfg: ConfigurationCase, q: int | None = None, level_max: int = 3) -> ExponentReport:
    slope = measured_slope(cfg, q, level_max) if q is not None else None
    return ExponentReport(cfg, volume_exponents(cfg), e_exponent(cfg), nontriviality(cfg), slope)
