"""Spectral densities on i a*: the Harish-Chandra c-function, the Plancherel
density beta = |c|^-2 and its polynomial majorant beta_tilde.

Conventions. A tempered parameter is lambda = i*x with x in a* real, and the
c-function factor of an indivisible root alpha is evaluated at
z = <lambda, alpha>/<alpha, alpha> (Helgason's <i lambda_H, alpha_0> under
lambda = i lambda_H). Each factor carries the constant sqrt(4 pi)/2^{d_alpha},
chosen so that |c_alpha(lambda)|^-2 / |<lambda, alpha^vee>|^{d_alpha} -> 1 along
i a*. Only ratios of densities are ever compared, so this choice is cosmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .lanczos import gamma_pole_distance, loggamma
from .rootsys import (
    RestrictedRootSystem,
    RootSystemError,
    SpectralParameter,
    _coords,
    coroot_norms,
    pairing,
)

POLE_GUARD = 1e-8
QUAD_RTOL = 1e-6
QUAD_MAX_SAMPLES = 4_000_000


class SingularityError(ArithmeticError):
    def __init__(self, root, z):
        super().__init__(f"c-function singular at root {root}: Gamma argument {z} is within the pole guard")
        self.root = root
        self.z = z


class QuadratureError(ArithmeticError):
    def __init__(self, message, estimate):
        super().__init__(f"{message} (achieved estimate {estimate!r})")
        self.estimate = estimate


@dataclass(frozen=True)
class SimpleRootSubset:
    """A subset sigma of the simple roots, by index into ``simple_roots()``."""

    indices: frozenset = frozenset()

    def validate(self, system: RestrictedRootSystem):
        bad = [i for i in self.indices if not 0 <= i < system.rank]
        if bad:
            raise RootSystemError(f"simple-root indices {bad} out of range for rank {system.rank}")

    def generated(self, system: RestrictedRootSystem) -> list:
        """<sigma>: positive roots that are nonnegative combinations of sigma."""
        self.validate(system)
        simple = np.array(system.simple_roots(), dtype=float).T
        out = []
        for alpha in system.positive_roots:
            coeff = np.linalg.solve(simple, np.array(alpha, dtype=float))
            support = {i for i, c in enumerate(np.round(coeff, 9)) if c != 0}
            if support <= self.indices:
                out.append(alpha)
        return out

    @classmethod
    def full(cls, system: RestrictedRootSystem) -> "SimpleRootSubset":
        return cls(frozenset(range(system.rank)))


EMPTY = SimpleRootSubset()


def _outside_sigma(system, sigma):
    if sigma is None or not sigma.indices:
        return list(system.roots)
    inside = set(sigma.generated(system))
    return [(a, mult) for a, mult in system.roots if a not in inside]


def delta_exponent(system: RestrictedRootSystem, sigma: SimpleRootSubset | None = None) -> int:
    """delta^sigma = sum of d_alpha over the positive roots outside <sigma>."""
    return sum(system.d(a) for a, _ in _outside_sigma(system, sigma))


def beta_tilde(system: RestrictedRootSystem, lam, sigma: SimpleRootSubset | None = None, gram=None):
    """prod_{alpha in Sigma+ - <sigma>} (1 + |<lambda, alpha^vee>|)^{d_alpha}.

    Accepts a single parameter or a stack of coordinate vectors (last axis).
    """
    x = _coords(lam)
    out = np.ones(x.shape[:-1])
    for alpha, _ in _outside_sigma(system, sigma):
        d = system.d(alpha)
        if d:
            out = out * (1.0 + np.abs(pairing(x, alpha, gram))) ** d
    return float(out) if out.ndim == 0 else out


def _factor_params(system, alpha):
    m_a = system.multiplicity(alpha)
    m_2a = system.double_multiplicity(alpha)
    a = 0.5 * (0.5 * m_a + 1.0)
    b = 0.5 * (0.5 * m_a + m_2a)
    d = m_a + m_2a
    log_const = 0.5 * math.log(4.0 * math.pi) - d * math.log(2.0)
    return a, b, log_const


def log_c_function(system: RestrictedRootSystem, lam, pole_guard: float = POLE_GUARD):
    """log c(lambda), product over indivisible positive roots (one parameter)."""
    x = _coords(lam)
    if x.shape != (system.rank,):
        raise RootSystemError(f"expected a rank-{system.rank} parameter, got shape {x.shape}")
    total = 0j
    for alpha in system.indivisible_roots():
        av = np.array(alpha, dtype=float)
        z = complex(x @ av / (av @ av))
        a, b, log_const = _factor_params(system, alpha)
        for arg in (z, a + 0.5 * z, b + 0.5 * z):
            if gamma_pole_distance(arg) < pole_guard:
                raise SingularityError(alpha, arg)
        total += (-z * math.log(2.0) + loggamma(z)
                  - loggamma(a + 0.5 * z) - loggamma(b + 0.5 * z) + log_const)
    return total


def c_function(system: RestrictedRootSystem, lam, pole_guard: float = POLE_GUARD) -> complex:
    """Harish-Chandra c-function by the Gindikin-Karpelevich product."""
    return complex(np.exp(log_c_function(system, lam, pole_guard)))


def beta(system: RestrictedRootSystem, lam, pole_guard: float = POLE_GUARD) -> float:
    """Plancherel density |c(lambda)|^-2 at a single regular parameter."""
    return float(np.exp(-2.0 * log_c_function(system, lam, pole_guard).real))


def plancherel_density(system: RestrictedRootSystem, x):
    """|c(i x)|^-2 for real coordinates ``x`` (any stack, last axis = rank).

    Uses |Gamma(iy)|^-2 = y sinh(pi y)/pi, so the density is finite and
    vanishes smoothly on the walls; this is the route used inside integrals.
    """
    x = np.asarray(x, dtype=float)
    logb = np.zeros(x.shape[:-1])
    zero = np.zeros(x.shape[:-1], dtype=bool)
    for alpha in system.indivisible_roots():
        av = np.array(alpha, dtype=float)
        y = np.abs(x @ av) / (av @ av)
        a, b, log_const = _factor_params(system, alpha)
        zero |= y == 0
        ys = np.where(y == 0, 1.0, y)
        # log(y sinh(pi y) / pi)
        log_num = np.log(ys) + math.pi * ys + np.log1p(-np.exp(-2.0 * math.pi * ys)) - math.log(2.0 * math.pi)
        iy = 0.5j * ys
        log_den = loggamma(a + iy).real + loggamma(b + iy).real
        logb = logb + log_num + 2.0 * log_den - 2.0 * log_const
    out = np.exp(logb)
    out = np.where(zero, 0.0, out)
    return float(out) if out.ndim == 0 else out


def _polar_rule(rank, n):
    """Product rule on the unit ball of R^rank: nodes (N, rank), weights (N,)."""
    xr, wr = leggauss(n)
    r = 0.5 * (xr + 1.0)
    w_r = 0.5 * wr * r ** (rank - 1)
    if rank == 1:
        nodes = np.concatenate([-r[::-1], r])[:, None]
        w = np.concatenate([w_r[::-1], w_r])
        return nodes, w
    if rank == 2:
        ntheta = 2 * n
        th = 2.0 * math.pi * np.arange(ntheta) / ntheta
        R, TH = np.meshgrid(r, th, indexing="ij")
        nodes = np.stack([R * np.cos(TH), R * np.sin(TH)], axis=-1).reshape(-1, 2)
        w = (w_r[:, None] * np.full(ntheta, 2.0 * math.pi / ntheta)[None, :]).reshape(-1)
        return nodes, w
    if rank == 3:
        xc, wc = leggauss(n)  # cos(theta)
        nphi = 2 * n
        phi = 2.0 * math.pi * np.arange(nphi) / nphi
        R, C, P = np.meshgrid(r, xc, phi, indexing="ij")
        S = np.sqrt(1.0 - C ** 2)
        nodes = np.stack([R * S * np.cos(P), R * S * np.sin(P), R * C], axis=-1).reshape(-1, 3)
        w = (w_r[:, None, None] * wc[None, :, None]
             * np.full(nphi, 2.0 * math.pi / nphi)[None, None, :]).reshape(-1)
        return nodes, w
    raise RootSystemError("ball quadrature supports rank <= 3")


def integrate_ball(f, center, radius, rank, rtol=QUAD_RTOL, max_samples=QUAD_MAX_SAMPLES, n0=8):
    """Integrate ``f`` (vectorized on (N, rank) arrays) over a Euclidean ball.

    Product Gauss rule in polar coordinates, order doubled until two
    successive estimates agree to ``rtol``.
    """
    center = np.asarray(center, dtype=float)
    prev = None
    n = n0
    while True:
        nodes, w = _polar_rule(rank, n)
        if len(w) > max_samples:
            raise QuadratureError(f"ball quadrature did not reach rtol={rtol} within {max_samples} samples", prev)
        val = float(np.sum(w * f(center + radius * nodes))) * radius ** rank
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val
        prev = val
        n *= 2


def ball_integral(system: RestrictedRootSystem, nu, c: float, rtol: float = QUAD_RTOL,
                  max_samples: int = QUAD_MAX_SAMPLES) -> float:
    """Integral of beta over {mu in i a* : ||mu - nu|| < c}, Lebesgue measure on coordinates."""
    x = _coords(nu)
    if np.any(x.real != 0):
        raise RootSystemError("ball_integral needs a tempered center")
    if c <= 0:
        raise ValueError("radius must be positive")
    if system.rank > 3:
        raise RootSystemError("ball_integral supports rank <= 3")
    return integrate_ball(lambda pts: plancherel_density(system, pts), x.imag, c, system.rank, rtol, max_samples)


def coroot_scale(system: RestrictedRootSystem) -> float:
    """max ||alpha^vee||, so that |<lambda, alpha^vee>| <= coroot_scale * ||lambda||."""
    return float(np.max(coroot_norms(system)))


def shift_bound_check(system: RestrictedRootSystem, lam, nu, sigma: SimpleRootSubset | None = None):
    """Check beta_tilde(lam + nu) <= (1 + kappa ||lam||)^delta beta_tilde(nu).

    kappa = max ||alpha^vee|| turns the triangle-inequality argument into an
    exact inequality with Euclidean coordinates. Returns (lhs, rhs, holds).
    """
    x, y = _coords(lam), _coords(nu)
    lhs = beta_tilde(system, x + y, sigma)
    delta = delta_exponent(system, sigma)
    kappa = coroot_scale(system)
    rhs = (1.0 + kappa * np.linalg.norm(x)) ** delta * beta_tilde(system, y, sigma)
    # relative slack for rounding in the two products
    return lhs, rhs, bool(lhs <= rhs * (1.0 + 1e-12))


@dataclass(frozen=True)
class DensityGrid:
    center: SpectralParameter
    radius: float
    samples: int
    values: tuple  # ((lambda coords), beta, beta_tilde)

    def to_csv(self) -> str:
        lines = ["lambda_coords,beta,beta_tilde"]
        for coords, b, bt in self.values:
            lam = ";".join(f"{c.imag:.6f}i" for c in coords)
            lines.append(f"{lam},{b:.12e},{bt:.12e}")
        return "\n".join(lines) + "\n"


def density_grid(system: RestrictedRootSystem, center, radius: float, samples: int) -> DensityGrid:
    """Evaluate beta and beta_tilde on a regular grid (``samples`` per axis) in a ball.

    Points on the walls are skipped so every stored density is positive.
    Ordering is lexicographic in the grid indices.
    """
    x0 = _coords(center)
    if np.any(x0.real != 0):
        raise RootSystemError("density grids are centred on tempered parameters")
    if radius <= 0 or samples < 1:
        raise ValueError("radius and samples must be positive")
    axis = np.linspace(-radius, radius, samples) if samples > 1 else np.zeros(1)
    mesh = np.stack(np.meshgrid(*([axis] * system.rank), indexing="ij"), axis=-1).reshape(-1, system.rank)
    mesh = mesh[np.linalg.norm(mesh, axis=1) <= radius + 1e-12]
    pts = x0.imag + mesh
    b = plancherel_density(system, pts)
    bt = beta_tilde(system, 1j * pts)
    keep = b > 0
    values = tuple((tuple(1j * p), float(bb), float(tt)) for p, bb, tt in zip(pts[keep], b[keep], bt[keep]))
    return DensityGrid(SpectralParameter(x0), float(radius), int(samples), values)
