"""Archimedean theta-correspondence bookkeeping for (O(n,m), Sp_2m(R)) and (U(n,m), U(m,m)).

Coordinates follow the standard basis e_1..e_{n+m} of a Cartan subalgebra
of gl_{n+m}(C), with iota(e'_i) = e_i embedding the dual group's Cartan. A
spectral parameter lambda is placed in the leading coordinates.

Parameters are stored as exact Gaussian rationals (pairs of Fractions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exponents import Case, ConfigurationCase
from .rootsys import SpectralParameter


class TransferError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x))


def _gauss(x) -> tuple:
    """(re, im) as Fractions; accepts numbers, Fractions, (re, im) pairs."""
    if isinstance(x, tuple):
        return _frac(x[0]), _frac(x[1])
    if isinstance(x, (complex, np.complexfloating)):
        return _frac(x.real), _frac(x.imag)
    return _frac(x), Fraction(0)


def _fmt(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class KTypeCharacter:
    """det^a (symplectic side) or det^a (x) det^b (unitary side)."""

    case: Case
    powers: tuple

    def __post_init__(self):
        want = 1 if self.case is Case.ORTHOGONAL else 2
        if len(self.powers) != want:
            raise TransferError(f"{self.case.value} K-type needs {want} powers")
        object.__setattr__(self, "powers", tuple(_frac(p) for p in self.powers))

    def is_integral(self) -> bool:
        return all(p.denominator == 1 for p in self.powers)

    def __str__(self):
        return " (x) ".join(f"det^{_fmt(p)}" for p in self.powers)


@dataclass(frozen=True)
class HCParameter:
    """A vector in h*_C with exact entries and explicit length.

    ``weyl`` records the Weyl action for orbit comparison: "perm" for
    gl-type ambient groups, "signed" for B/C/D-type.
    """

    re: tuple
    im: tuple = None
    weyl: str = "perm"
    note: str = ""

    def __post_init__(self):
        re = tuple(_frac(x) for x in self.re)
        im = tuple(Fraction(0) for _ in re) if self.im is None else tuple(_frac(x) for x in self.im)
        if len(im) != len(re):
            raise TransferError("real and imaginary parts differ in length")
        if self.weyl not in ("perm", "signed"):
            raise TransferError(f"unknown Weyl action {self.weyl!r}")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def from_entries(cls, entries, weyl="perm", note=""):
        pairs = [_gauss(x) for x in entries]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), weyl, note)

    @classmethod
    def zeros(cls, length, weyl="perm"):
        return cls((Fraction(0),) * length, None, weyl)

    def __len__(self):
        return len(self.re)

    def entries(self) -> list:
        return list(zip(self.re, self.im))

    def __add__(self, other: "HCParameter") -> "HCParameter":
        if len(self) != len(other):
            raise TransferError(f"length mismatch {len(self)} vs {len(other)}")
        return HCParameter(tuple(a + b for a, b in zip(self.re, other.re)),
                           tuple(a + b for a, b in zip(self.im, other.im)), self.weyl)

    def __neg__(self):
        return HCParameter(tuple(-a for a in self.re), tuple(-a for a in self.im), self.weyl)

    def __sub__(self, other):
        return self + (-other)

    def is_imaginary(self) -> bool:
        return all(r == 0 for r in self.re)

    def _orbit_key(self):
        ent = self.entries()
        if self.weyl == "signed":
            # representative with (re, im) >= 0 lexicographically
            ent = [max(e, (-e[0], -e[1])) for e in ent]
        return tuple(sorted(ent))

    def equivalent(self, other: "HCParameter") -> bool:
        """Equality up to the recorded Weyl action."""
        if len(self) != len(other) or self.weyl != other.weyl:
            return False
        return self._orbit_key() == other._orbit_key()

    def to_strings(self) -> list:
        out = []
        for r, i in self.entries():
            if i == 0:
                out.append(_fmt(r))
            elif r == 0:
                out.append(f"{_fmt(i)}i")
            else:
                out.append(f"{_fmt(r)}{'+' if i > 0 else '-'}{_fmt(abs(i))}i")
        return out


def _pad(lam: HCParameter, length: int) -> HCParameter:
    if len(lam) > length:
        raise TransferError(f"parameter of length {len(lam)} does not fit in {length} coordinates")
    k = length - len(lam)
    return HCParameter(lam.re + (Fraction(0),) * k, lam.im + (Fraction(0),) * k, lam.weyl)


def as_parameter(lam, weyl="perm") -> HCParameter:
    if isinstance(lam, HCParameter):
        return lam
    if isinstance(lam, SpectralParameter):
        lam = list(lam.coords)
    return HCParameter.from_entries(list(lam), weyl)


def hc_parameter(lam, rho_m: HCParameter) -> HCParameter:
    """rho_m + lambda, with lambda zero-padded into the leading block."""
    lp = as_parameter(lam, rho_m.weyl)
    return rho_m + _pad(HCParameter(lp.re, lp.im, rho_m.weyl), len(rho_m))


def z_vector(m_prime: int, n: int, m: int) -> HCParameter:
    """sum_{i=2m'+1}^{n+m} ((2m'+1+n+m)/2 - i) e_i, length n + m.

    Any m' with 1 <= 2m' <= n + m is accepted (2m' = n + m gives zero).
    """
    N = n + m
    if not (isinstance(m_prime, (int, np.integer)) and m_prime >= 1 and 2 * m_prime <= N):
        raise TransferError(f"m'={m_prime} outside 1 <= 2m' <= n+m = {N}")
    base = Fraction(2 * m_prime + 1 + N, 2)
    re = [Fraction(0)] * (2 * m_prime) + [base - i for i in range(2 * m_prime + 1, N + 1)]
    return HCParameter(tuple(re))


def rho_m(cfg: ConfigurationCase) -> HCParameter:
    """rho of the Levi block attached to the spherical principal series.

    Unitary case: equal to z_m. The orthogonal case is not used by this
    module and is not modelled.
    """
    if cfg.case is not Case.UNITARY:
        raise TransferError("rho_m is only modelled for the unitary pair")
    return z_vector(cfg.m, cfg.n, cfg.m)


def tempered_ktype(cfg: ConfigurationCase) -> KTypeCharacter:
    a = Fraction(cfg.n - cfg.m, 2)
    if cfg.case is Case.ORTHOGONAL:
        return KTypeCharacter(cfg.case, (a,))
    return KTypeCharacter(cfg.case, (a, -a))


def trivial_ktype(cfg: ConfigurationCase) -> KTypeCharacter:
    a = Fraction(cfg.n + cfg.m, 2)
    if cfg.case is Case.ORTHOGONAL:
        return KTypeCharacter(cfg.case, (a,))
    return KTypeCharacter(cfg.case, (a, -a))


def transfer_tempered(cfg: ConfigurationCase, lam):
    """K-type of theta(pi; W_m) and its spectral parameter, which is lambda."""
    sp = lam if isinstance(lam, SpectralParameter) else SpectralParameter(lam)
    if not sp.is_tempered():
        raise TransferError("lambda is not tempered; see first_occurrence_vanishes for the non-tempered picture")
    if sp.rank != cfg.m:
        raise TransferError(f"lambda must have m={cfg.m} coordinates")
    return tempered_ktype(cfg), sp


def transfer_trivial(cfg: ConfigurationCase):
    """K-type and parameter of the lift of the trivial representation of the compact group.

    Orthogonal: ((n+m)/2 - i)_{i=1..m}. Unitary: omega = ((3m+n+1)/2 - i)_{i=1..2m},
    kept with its 2m printed coordinates (flagged in ``note``).
    """
    n, m = cfg.n, cfg.m
    if cfg.case is Case.ORTHOGONAL:
        vec = [Fraction(n + m, 2) - i for i in range(1, m + 1)]
        return trivial_ktype(cfg), HCParameter(tuple(vec), weyl="signed")
    vec = [Fraction(3 * m + n + 1, 2) - i for i in range(1, 2 * m + 1)]
    assert vec[0] == Fraction(3 * m + n - 1, 2) and vec[-1] == Fraction(n - m + 1, 2)
    note = "2m coordinates for a real-rank-m group, as printed"
    return trivial_ktype(cfg), HCParameter(tuple(vec), weyl="perm", note=note)


def ambient_rho(cfg: ConfigurationCase) -> HCParameter:
    """rho of gl_{n+m} in the normalisation sum ((3m+n+1)/2 - i) e_i.

    This is the usual half-sum ((n+m+1)/2 - i) shifted by the central
    vector m(1, ..., 1).
    """
    if cfg.case is not Case.UNITARY:
        raise TransferError("ambient rho is only modelled for the unitary pair")
    N, m = cfg.n + cfg.m, cfg.m
    std = [Fraction(N + 1, 2) - i for i in range(1, N + 1)]
    vec = [s + m for s in std]
    assert vec == [Fraction(3 * m + cfg.n + 1, 2) - i for i in range(1, N + 1)]
    return HCParameter(tuple(vec))


def trivial_lift_identity(cfg: ConfigurationCase) -> tuple:
    """(lhs, rhs) for rho = iota(omega) + z_m, compared coordinatewise."""
    _, omega = transfer_trivial(cfg)
    N = cfg.n + cfg.m
    lhs = ambient_rho(cfg)
    rhs = _pad(HCParameter(omega.re, omega.im), N) + z_vector(cfg.m, cfg.n, cfg.m)
    return lhs, rhs


@dataclass(frozen=True)
class FirstOccurrenceWitness:
    """Trailing block (coordinates 2m'+1..n+m) of lambda = iota(omega') + z_{m'} - rho_m.

    ``direct`` is z_{m'} - z_m there; ``display`` is the printed form
    ((n+3m-4m'-1)/2, ..., (n-m+1)/2, 0, ..., 0), which differs from
    ``direct`` by the central shift m - m' on that block.
    """

    m_prime: int
    direct: tuple
    display: tuple
    entry: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "entry", self.display[0])

    def forces_nontempered(self) -> bool:
        # real nonzero entries cannot occur in a tempered parameter
        return self.display[0] != 0 and self.direct[0] != 0


def first_occurrence_witness(cfg: ConfigurationCase, m_prime: int) -> FirstOccurrenceWitness | None:
    n, m = cfg.n, cfg.m
    if not 1 <= m_prime <= m:
        raise TransferError(f"m'={m_prime} outside [1, m={m}]")
    if m_prime == m or cfg.case is not Case.UNITARY:
        return None
    lo = 2 * m_prime
    diff = z_vector(m_prime, n, m) - z_vector(m, n, m)
    direct = diff.re[lo:]
    top = Fraction(n + 3 * m - 4 * m_prime - 1, 2)
    display = tuple(top - j for j in range(2 * (m - m_prime))) + (Fraction(0),) * (n - m)
    assert display[2 * (m - m_prime) - 1] == Fraction(n - m + 1, 2)
    assert tuple(d + (m - m_prime) for d in direct) == display
    return FirstOccurrenceWitness(m_prime, direct, display)


def first_occurrence_vanishes(cfg: ConfigurationCase, m_prime: int, lam) -> bool:
    """True iff theta(pi; W_{m'}) = 0 is forced: m' < m and lambda tempered."""
    if not 1 <= m_prime <= cfg.m:
        raise TransferError(f"m'={m_prime} outside [1, m={cfg.m}]")
    sp = lam if isinstance(lam, SpectralParameter) else SpectralParameter(lam)
    if m_prime == cfg.m or not sp.is_tempered():
        return False
    w = first_occurrence_witness(cfg, m_prime)
    if w is not None:
        assert w.forces_nontempered()
    return True
