"""Restricted root systems of the classical symmetric spaces, their Weyl
groups (signed permutations) and spectral parameters.

Coordinates are taken in the orthonormal basis e_1, ..., e_m of a*, with the
standard Euclidean inner product. Every quantity computed downstream depends
on the inner product only through ratios such as <lambda, alpha>/<alpha, alpha>,
so the Killing-form normalization never enters.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_WEYL_RANK = 8


class RootSystemError(ValueError):
    pass


class EnumerationLimitError(RootSystemError):
    pass


class Family(enum.Enum):
    ORTHOGONAL_INDEFINITE = "o"  # O(n, m) / O(n) x O(m)
    UNITARY_INDEFINITE = "u"  # U(n, m) / U(n) x U(m)
    SYMPLECTIC_SPLIT = "sp"  # Sp_2m(R) / U(m)
    UNITARY_SPLIT = "uu"  # U(m, m) / U(m) x U(m)

    @property
    def indefinite(self) -> bool:
        return self in (Family.ORTHOGONAL_INDEFINITE, Family.UNITARY_INDEFINITE)


@dataclass(frozen=True)
class SymmetricSpaceDescriptor:
    family: Family
    m: int
    n: int | None = None

    def __post_init__(self):
        if self.m < 1:
            raise RootSystemError(f"rank must be >= 1, got m={self.m}")
        if self.family.indefinite:
            if self.n is None or self.n <= self.m:
                raise RootSystemError(
                    f"{self.family.name} needs n > m >= 1, got n={self.n}, m={self.m}")

    def rank(self) -> int:
        return self.m

    def dimension(self) -> int:
        n, m = self.n, self.m
        if self.family is Family.ORTHOGONAL_INDEFINITE:
            return n * m
        if self.family is Family.UNITARY_INDEFINITE:
            return 2 * n * m
        if self.family is Family.SYMPLECTIC_SPLIT:
            return m * (m + 1)
        return 2 * m * m

    def label(self) -> str:
        if self.family is Family.ORTHOGONAL_INDEFINITE:
            return f"O({self.n},{self.m})"
        if self.family is Family.UNITARY_INDEFINITE:
            return f"U({self.n},{self.m})"
        if self.family is Family.SYMPLECTIC_SPLIT:
            return f"Sp({2 * self.m},R)"
        return f"U({self.m},{self.m})"


def orthogonal(n: int, m: int) -> SymmetricSpaceDescriptor:
    return SymmetricSpaceDescriptor(Family.ORTHOGONAL_INDEFINITE, m, n)


def unitary(n: int, m: int) -> SymmetricSpaceDescriptor:
    return SymmetricSpaceDescriptor(Family.UNITARY_INDEFINITE, m, n)


def symplectic_split(m: int) -> SymmetricSpaceDescriptor:
    return SymmetricSpaceDescriptor(Family.SYMPLECTIC_SPLIT, m)


def unitary_split(m: int) -> SymmetricSpaceDescriptor:
    return SymmetricSpaceDescriptor(Family.UNITARY_SPLIT, m)


Root = tuple  # tuple[int, ...] of length rank


def _unit(m, i, c=1):
    v = [0] * m
    v[i] = c
    return tuple(v)


def _pm_roots(m):
    for i, j in itertools.combinations(range(m), 2):
        minus = [0] * m
        minus[i], minus[j] = 1, -1
        plus = [0] * m
        plus[i], plus[j] = 1, 1
        yield tuple(minus)
        yield tuple(plus)


@dataclass(frozen=True)
class RestrictedRootSystem:
    """Positive restricted roots with multiplicities.

    ``roots`` is a tuple of ``(coefficient vector, multiplicity)`` pairs.
    """

    rank: int
    roots: tuple
    type_tag: str
    descriptor: SymmetricSpaceDescriptor | None = None

    def __post_init__(self):
        seen = set()
        for alpha, mult in self.roots:
            if len(alpha) != self.rank:
                raise RootSystemError(f"root {alpha} has wrong length")
            if alpha in seen:
                raise RootSystemError(f"root {alpha} listed twice")
            if mult < 0:
                raise RootSystemError("negative multiplicity")
            if not _is_standard_root(alpha):
                raise RootSystemError(f"{alpha} is not of the form e_i +- e_j, e_i, 2e_i")
            seen.add(alpha)

    @property
    def positive_roots(self) -> list:
        return [alpha for alpha, _ in self.roots]

    def multiplicity(self, alpha) -> int:
        alpha = tuple(alpha)
        for beta, mult in self.roots:
            if beta == alpha:
                return mult
        return 0

    def double_multiplicity(self, alpha) -> int:
        """m_{2 alpha}, zero when 2 alpha is not a root."""
        return self.multiplicity(tuple(2 * a for a in alpha))

    def d(self, alpha) -> int:
        """d_alpha = m_alpha + m_{2 alpha}."""
        return self.multiplicity(alpha) + self.double_multiplicity(alpha)

    def is_indivisible(self, alpha) -> bool:
        alpha = tuple(alpha)
        if any(a % 2 for a in alpha):
            return True
        half = tuple(a // 2 for a in alpha)
        return self.multiplicity(half) == 0

    def indivisible_roots(self) -> list:
        return [alpha for alpha, mult in self.roots if mult > 0 and self.is_indivisible(alpha)]

    def multiplicity_sum(self) -> int:
        return sum(mult for _, mult in self.roots)

    def simple_roots(self) -> list:
        m = self.rank
        simple = []
        for i in range(m - 1):
            v = [0] * m
            v[i], v[i + 1] = 1, -1
            simple.append(tuple(v))
        simple.append(_unit(m, m - 1, 2 if self.type_tag == "C" else 1))
        return simple

    def root_array(self) -> np.ndarray:
        return np.array(self.positive_roots, dtype=float).reshape(len(self.roots), self.rank)

    def multiplicity_array(self) -> np.ndarray:
        return np.array([mult for _, mult in self.roots], dtype=float)

    def d_array(self) -> np.ndarray:
        return np.array([self.d(alpha) for alpha, _ in self.roots], dtype=float)


def _is_standard_root(alpha) -> bool:
    nz = [a for a in alpha if a != 0]
    if len(nz) == 1:
        return nz[0] in (1, 2)
    if len(nz) == 2:
        return nz[0] == 1 and nz[1] in (1, -1)
    return False


def build_root_system(desc: SymmetricSpaceDescriptor) -> RestrictedRootSystem:
    m, n = desc.m, desc.n
    fam = desc.family
    roots = []
    if fam is Family.ORTHOGONAL_INDEFINITE:
        tag = "B"
        roots += [(a, 1) for a in _pm_roots(m)]
        roots += [(_unit(m, i), n - m) for i in range(m)]
    elif fam is Family.UNITARY_INDEFINITE:
        tag = "BC"
        roots += [(a, 2) for a in _pm_roots(m)]
        roots += [(_unit(m, i), 2 * (n - m)) for i in range(m)]
        roots += [(_unit(m, i, 2), 1) for i in range(m)]
    elif fam is Family.SYMPLECTIC_SPLIT:
        tag = "C"
        roots += [(a, 1) for a in _pm_roots(m)]
        roots += [(_unit(m, i, 2), 1) for i in range(m)]
    else:
        tag = "C"
        roots += [(a, 2) for a in _pm_roots(m)]
        roots += [(_unit(m, i, 2), 1) for i in range(m)]
    system = RestrictedRootSystem(m, tuple(roots), tag, desc)
    if system.multiplicity_sum() != desc.dimension() - desc.rank():
        raise RootSystemError(
            f"dimension identity fails for {desc.label()}: "
            f"sum m_alpha = {system.multiplicity_sum()}, dim - rank = {desc.dimension() - m}")
    return system


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation:  w(e_j) = signs[j] * e_{perm[j]}."""

    perm: tuple
    signs: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise RootSystemError(f"{self.perm} is not a permutation")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise RootSystemError("signs must be a +-1 vector of matching length")

    @classmethod
    def identity(cls, rank: int) -> "WeylElement":
        return cls(tuple(range(rank)), (1,) * rank)

    @property
    def rank(self) -> int:
        return len(self.perm)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        perm = tuple(self.perm[other.perm[j]] for j in range(self.rank))
        signs = tuple(self.signs[other.perm[j]] * other.signs[j] for j in range(self.rank))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        perm = [0] * self.rank
        signs = [1] * self.rank
        for j, pj in enumerate(self.perm):
            perm[pj] = j
            signs[pj] = self.signs[j]
        return WeylElement(tuple(perm), tuple(signs))

    def matrix(self) -> np.ndarray:
        M = np.zeros((self.rank, self.rank), dtype=int)
        for j, (pj, sj) in enumerate(zip(self.perm, self.signs)):
            M[pj, j] = sj
        return M

    def act(self, x):
        """Apply to a coordinate vector or a stack of them (last axis)."""
        x = np.asarray(x)
        out = np.empty_like(x)
        out[..., list(self.perm)] = x * np.asarray(self.signs)
        return out

    def act_root(self, alpha) -> tuple:
        out = [0] * self.rank
        for j, (pj, sj) in enumerate(zip(self.perm, self.signs)):
            out[pj] = sj * alpha[j]
        return tuple(out)

    def __call__(self, lam):
        if isinstance(lam, SpectralParameter):
            return SpectralParameter(self.act(lam.coords))
        return self.act(lam)


def weyl_group(rank: int, limit: int = MAX_WEYL_RANK) -> list:
    """All 2^m m! signed permutations of {1..m}, in a fixed order."""
    if rank < 1:
        raise RootSystemError("rank must be >= 1")
    if rank > limit:
        raise EnumerationLimitError(
            f"rank {rank} exceeds the Weyl enumeration limit {limit} "
            f"({2 ** rank * math.factorial(rank)} elements)")
    return list(_weyl_tuple(rank))


@lru_cache(maxsize=None)
def _weyl_tuple(rank):
    return tuple(
        WeylElement(perm, signs)
        for perm in itertools.permutations(range(rank))
        for signs in itertools.product((1, -1), repeat=rank)
    )


@lru_cache(maxsize=None)
def weyl_matrices(rank: int) -> np.ndarray:
    """Stacked float matrices of the Weyl group, shape (|W|, m, m). Read-only."""
    mats = np.array([w.matrix() for w in weyl_group(rank)], dtype=float)
    mats.setflags(write=False)
    return mats


class SpectralParameter:
    """A point of a*_C, stored as a complex coordinate vector."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        c = np.array(coords, dtype=complex).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def __setattr__(self, name, value):
        raise AttributeError("SpectralParameter is immutable")

    @classmethod
    def tempered(cls, imag_coords) -> "SpectralParameter":
        return cls(1j * np.asarray(imag_coords, dtype=float))

    @property
    def rank(self) -> int:
        return self.coords.shape[0]

    def real_part(self) -> "SpectralParameter":
        return SpectralParameter(self.coords.real)

    def imaginary_part(self) -> "SpectralParameter":
        """The vector Im(lambda), as a real point of a*."""
        return SpectralParameter(self.coords.imag)

    def is_tempered(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coords.real) <= atol))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __add__(self, other):
        return SpectralParameter(self.coords + _coords(other))

    def __sub__(self, other):
        return SpectralParameter(self.coords - _coords(other))

    def __eq__(self, other):
        return isinstance(other, SpectralParameter) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())

    def __repr__(self):
        return f"SpectralParameter({self.coords.tolist()})"


def _coords(lam) -> np.ndarray:
    if isinstance(lam, SpectralParameter):
        return lam.coords
    return np.asarray(lam, dtype=complex)


def half_sum_rho(system: RestrictedRootSystem) -> SpectralParameter:
    """rho = (1/2) sum_{alpha > 0} m_alpha alpha."""
    rho = [Fraction(0)] * system.rank
    for alpha, mult in system.roots:
        for i, a in enumerate(alpha):
            rho[i] += Fraction(mult * a, 2)
    return SpectralParameter([float(x) for x in rho])


def _inner(x, y, gram):
    if gram is None:
        return np.sum(x * y, axis=-1)
    return np.einsum("...i,ij,...j->...", x, gram, y)


def pairing(lam, alpha, gram=None):
    """<lambda, alpha^vee> with alpha^vee = 2 alpha / <alpha, alpha>.

    ``lam`` may be a stack of coordinate vectors. ``gram`` optionally replaces
    the Euclidean inner product by x^T G y.
    """
    alpha = np.asarray(alpha, dtype=float)
    if not np.any(alpha):
        raise RootSystemError("pairing with the zero root")
    x = _coords(lam)
    if x.shape[-1] != alpha.shape[-1]:
        raise RootSystemError(f"rank mismatch: lambda has {x.shape[-1]}, alpha has {alpha.shape[-1]}")
    return 2.0 * _inner(x, alpha, gram) / _inner(alpha, alpha, gram)


def coroot_norms(system: RestrictedRootSystem) -> np.ndarray:
    """Euclidean norms ||alpha^vee|| = 2/||alpha|| of the positive roots."""
    return 2.0 / np.linalg.norm(system.root_array(), axis=1)


def is_sufficiently_regular(lam, system: RestrictedRootSystem, T: float) -> bool:
    """True iff |<lambda, alpha>| >= T for every positive root (lambda tempered)."""
    if T <= 0:
        raise RootSystemError("T must be positive")
    x = _coords(lam)
    if np.any(x.real != 0):
        raise RootSystemError("regularity is only tested on tempered parameters")
    vals = np.abs(system.root_array() @ x)
    return bool(np.all(vals >= T))


def regular_direction(system: RestrictedRootSystem) -> np.ndarray:
    """The rho direction, scaled so that min_alpha |<dir, alpha>| = 1.

    Then i*t*dir is t-regular for every t > 0.
    """
    rho = half_sum_rho(system).coords.real
    return rho / np.min(np.abs(system.root_array() @ rho))
