"""Weyl-symmetrized Paley-Wiener test functions and their transforms.

Construction: b is the mollifier exp(-1/(1 - |x/r|^2)) on a, r = R/4,
normalized to integral one; g = b * b is supported in B(0, R/2); its
transform h(lambda) = int g(x) exp(-lambda(x)) dx equals b_hat(lambda)^2. Then

    h_nu(lambda) = sum_w h(w lambda - nu),      k_hat(lambda) = h_nu(lambda)^2.

Because b is radial, b_hat(lambda) depends only on the complex bilinear
square lambda.lambda, and is computed by a one-dimensional Gauss rule over
the radial profile.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special
from scipy.interpolate import CubicSpline

from .density import QuadratureError, beta_tilde, integrate_ball, plancherel_density
from .rootsys import (
    RestrictedRootSystem,
    RootSystemError,
    SpectralParameter,
    _coords,
    weyl_matrices,
)

RADIUS_CAP = 1.0
_BASE_NODES = 96


@dataclass(frozen=True)
class BumpSpec:
    radius: float = 1.0
    radius_cap: float = RADIUS_CAP

    def __post_init__(self):
        if not 0 < self.radius <= self.radius_cap:
            raise ValueError(f"bump radius must lie in (0, {self.radius_cap}], got {self.radius}")

    @property
    def base_support_radius(self) -> float:
        return self.radius / 4.0


def _profile(u):
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(u < 1.0, np.exp(-1.0 / (1.0 - u * u)), 0.0)


def _omega(rank, z):
    """Gamma(nu+1) (z/2)^-nu I_nu(z), nu = rank/2 - 1: even, entire, omega(0) = 1."""
    z = np.asarray(z, dtype=complex)
    if rank == 1:
        return np.cosh(z)
    if rank == 2:
        return special.iv(0, z)
    small = np.abs(z) < 1e-6
    zs = np.where(small, 1.0, z)
    if rank == 3:
        val = np.sinh(zs) / zs
    else:
        nu = rank / 2.0 - 1.0
        val = special.gamma(nu + 1.0) * (zs / 2.0) ** (-nu) * special.iv(nu, zs)
    return np.where(small, 1.0 + z * z / (2.0 * rank), val)


def _omega_tempered(rank, k):
    """omega at z = i k for real k >= 0 (real valued)."""
    k = np.asarray(k, dtype=float)
    if rank == 1:
        return np.cos(k)
    if rank == 2:
        return special.j0(k)
    small = k < 1e-6
    ks = np.where(small, 1.0, k)
    if rank == 3:
        val = np.sin(ks) / ks
    else:
        nu = rank / 2.0 - 1.0
        val = special.gamma(nu + 1.0) * (ks / 2.0) ** (-nu) * special.jv(nu, ks)
    return np.where(small, 1.0 - k * k / (2.0 * rank), val)


def _nodes_for(kr):
    # enough Gauss points to resolve ~kr/pi oscillations of the integrand
    return _BASE_NODES + 2 * int(math.ceil(kr))


class BaseTransform:
    """b_hat for one bump radius and one rank, with a cached tempered ray.

    The tempered values depend only on |Im lambda|; they are tabulated on a
    uniform ray grid (cubic spline) that is extended under a lock on demand.
    """

    ray_step = 1.0 / 64.0

    def __init__(self, bump: BumpSpec, rank: int):
        self.bump = bump
        self.rank = rank
        self.r = bump.base_support_radius
        self._sphere = 2.0 * math.pi ** (rank / 2.0) / math.gamma(rank / 2.0)
        self._norm = self._raw_integral(0.0, _BASE_NODES + 64)
        self._lock = threading.Lock()
        self._ray = None
        self._ray_max = 0.0

    def _rule(self, n):
        x, w = leggauss(n)
        s = 0.5 * (x + 1.0) * self.r
        ws = 0.5 * w * self.r * _profile(s / self.r) * s ** (self.rank - 1) * self._sphere
        return s, ws

    def _raw_integral(self, kappa, n):
        s, ws = self._rule(n)
        return float(np.sum(ws * _omega_tempered(self.rank, kappa * s)))

    def tempered_exact(self, k):
        """b_hat(i xi) with |xi| = k, by direct quadrature (no table)."""
        k = np.atleast_1d(np.asarray(k, dtype=float))
        out = np.empty(k.shape)
        flat, res = k.reshape(-1), out.reshape(-1)
        order = np.argsort(flat)
        for chunk in np.array_split(order, max(1, len(order) // 2048)):
            if not len(chunk):
                continue
            s, ws = self._rule(_nodes_for(flat[chunk].max() * self.r))
            res[chunk] = (_omega_tempered(self.rank, flat[chunk, None] * s[None, :]) @ ws) / self._norm
        return out

    def _ensure_ray(self, kmax):
        if kmax <= self._ray_max:
            return
        with self._lock:
            if kmax <= self._ray_max:
                return
            top = max(2.0 * self._ray_max, kmax, 64.0)
            grid = np.arange(0.0, top + 4 * self.ray_step, self.ray_step)
            spline = CubicSpline(grid, self.tempered_exact(grid), bc_type=((1, 0.0), "not-a-knot"))
            self._ray = spline
            self._ray_max = float(grid[-5])

    def tempered(self, k):
        """Spline lookup of b_hat(i xi), |xi| = k; array in, array out."""
        k = np.abs(np.asarray(k, dtype=float))
        if k.size == 0:
            return np.zeros(k.shape)
        self._ensure_ray(float(k.max()))
        return self._ray(k)

    def __call__(self, lam):
        """b_hat(lambda) for complex lambda (stack on the last axis)."""
        x = np.asarray(_coords(lam), dtype=complex)
        if x.shape[-1] != self.rank:
            raise RootSystemError("rank mismatch")
        z = np.sqrt(np.sum(x * x, axis=-1))  # branch irrelevant, omega is even
        zmax = float(np.max(np.abs(z))) if z.size else 0.0
        s, ws = self._rule(_nodes_for(zmax * self.r))
        vals = _omega(self.rank, z[..., None] * s) @ ws / self._norm
        return vals


_TRANSFORMS = {}
_TRANSFORMS_LOCK = threading.Lock()


def get_base_transform(bump: BumpSpec, rank: int) -> BaseTransform:
    key = (bump.radius, rank)
    with _TRANSFORMS_LOCK:
        if key not in _TRANSFORMS:
            _TRANSFORMS[key] = BaseTransform(bump, rank)
        return _TRANSFORMS[key]


def base_transform(bump: BumpSpec, lam):
    """h(lambda) = b_hat(lambda)^2, the transform of g = b * b."""
    x = _coords(lam)
    bt = get_base_transform(bump, x.shape[-1])
    out = bt(x) ** 2
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TestFunctionTransform:
    """Harish-Chandra transform k_hat = h_nu^2 of the test function centred at nu."""

    __test__ = False  # not a pytest class

    bump: BumpSpec
    center: SpectralParameter
    system: RestrictedRootSystem
    _weyl: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.center.is_tempered():
            raise RootSystemError("the centre nu must be tempered")
        if self.center.rank != self.system.rank:
            raise RootSystemError("centre and system ranks differ")
        object.__setattr__(self, "_weyl", weyl_matrices(self.system.rank))

    @property
    def base(self) -> BaseTransform:
        return get_base_transform(self.bump, self.system.rank)

    def symmetrized(self, lam):
        """h_nu(lambda) = sum_w h(w lambda - nu), complex lambda."""
        x = np.asarray(_coords(lam), dtype=complex)
        images = np.einsum("wij,...j->...wi", self._weyl, x) - self.center.coords
        vals = self.base(images) ** 2
        return vals.sum(axis=-1)

    def symmetrized_tempered(self, xi):
        """h_nu(i xi) for real coordinates xi, through the cached ray."""
        xi = np.asarray(xi, dtype=float)
        images = np.einsum("wij,...j->...wi", self._weyl, xi) - self.center.coords.imag
        return (self.base.tempered(np.linalg.norm(images, axis=-1)) ** 2).sum(axis=-1)

    def khat(self, lam):
        return self.symmetrized(lam) ** 2

    def khat_tempered(self, xi):
        return self.symmetrized_tempered(xi) ** 2


def symmetrized_transform(t: TestFunctionTransform, lam):
    out = t.symmetrized(lam)
    return complex(out) if np.ndim(out) == 0 else out


def khat(t: TestFunctionTransform, lam):
    out = t.khat(lam)
    return complex(out) if np.ndim(out) == 0 else out


def weyl_decay_sum(t: TestFunctionTransform, xi, A: float):
    """sum_w (1 + ||w xi - Im nu||)^-A for real coordinates xi."""
    xi = np.asarray(xi, dtype=float)
    images = np.einsum("wij,...j->...wi", t._weyl, xi) - t.center.coords.imag
    return ((1.0 + np.linalg.norm(images, axis=-1)) ** (-A)).sum(axis=-1)


def decay_constant(t: TestFunctionTransform, A: float, extent: float = 120.0, step: float = 0.5) -> float:
    """max over a grid of k_hat(i xi) / sum_w (1 + ||w xi - nu||)^-A.

    The grid is a square (rank 2) or segment (rank 1) of half-width
    ``extent`` around the origin in i a*, spacing ``step``.
    """
    axis = np.arange(-extent, extent + step / 2, step)
    pts = np.stack(np.meshgrid(*([axis] * t.system.rank), indexing="ij"), axis=-1).reshape(-1, t.system.rank)
    best = 0.0
    for chunk in np.array_split(pts, max(1, len(pts) // 50_000)):
        ratio = t.khat_tempered(chunk) / weyl_decay_sum(t, chunk, A)
        best = max(best, float(ratio.max()))
    return best


# Identity value of the test function


@dataclass(frozen=True)
class IdentityValue:
    value: float
    truncation_radius: float
    tail_fraction: float


def _chamber_angular_rule(n):
    x, w = leggauss(n)
    th = 0.5 * (x + 1.0) * (math.pi / 4.0)
    return th, 0.5 * w * (math.pi / 4.0)


def _panel_rule(a, b, n=16):
    x, w = leggauss(n)
    return a + 0.5 * (x + 1.0) * (b - a), 0.5 * w * (b - a)


def k_at_identity(t: TestFunctionTransform, panel: float = 2.0, block: float = 50.0,
                  angular_nodes: int = 96, stop_rtol: float = 1e-9, tail_limit: float = 0.01,
                  max_radius: float = 20_000.0) -> IdentityValue:
    """k_nu(e) = (1/|W|) int_{i a*} k_hat(lambda) beta(lambda) dlambda.

    Both factors are Weyl invariant, so the integral is taken over the closed
    positive chamber x_1 >= ... >= x_m >= 0 in polar coordinates, moving
    outward block by block until a block adds less than ``stop_rtol`` of the
    running total. The tail is estimated by the last block; if it exceeds
    ``tail_limit`` of the total, QuadratureError is raised.
    """
    rank = t.system.rank
    if rank > 2:
        raise RootSystemError("k_at_identity supports rank <= 2")
    if rank == 2:
        th, wth = _chamber_angular_rule(angular_nodes)
        dirs = np.stack([np.cos(th), np.sin(th)], axis=-1)

    def radial_values(rr):
        if rank == 1:
            pts = rr[:, None]
            return t.khat_tempered(pts) * plancherel_density(t.system, pts)
        pts = rr[:, None, None] * dirs[None, :, :]
        f = t.khat_tempered(pts) * plancherel_density(t.system, pts)
        return (f @ wth) * rr

    total = 0.0
    start = 0.0
    last_block = 0.0
    nu_norm = t.center.norm()
    while True:
        stop = start + block
        rr, wr = [], []
        for a in np.arange(start, stop, panel):
            x, w = _panel_rule(a, a + panel)
            rr.append(x)
            wr.append(w)
        rr, wr = np.concatenate(rr), np.concatenate(wr)
        last_block = float(np.sum(wr * radial_values(rr)))
        total += last_block
        start = stop
        if start > nu_norm + block and total > 0 and abs(last_block) <= stop_rtol * total:
            break
        if start >= max_radius:
            break
    tail = abs(last_block) / total if total > 0 else float("inf")
    if tail > tail_limit:
        raise QuadratureError(f"truncation tail {tail:.3g} exceeds {tail_limit}", total)
    return IdentityValue(total, start, tail)


def local_density_mass(t: TestFunctionTransform, radius: float = 1.0) -> float:
    """int_{||lambda - nu|| <= radius} beta(lambda) dlambda."""
    return integrate_ball(lambda pts: plancherel_density(t.system, pts),
                          t.center.coords.imag, radius, t.system.rank)


def khat_ball_minimum(t: TestFunctionTransform, radius: float = 1.0, n: int = 24) -> float:
    """Minimum of k_hat over a polar grid of the closed ball ||lambda - nu|| <= radius in i a*."""
    rank = t.system.rank
    rr = np.linspace(0.0, radius, n + 1)
    if rank == 1:
        offsets = np.concatenate([-rr, rr])[:, None]
    elif rank == 2:
        th = np.linspace(0.0, 2.0 * math.pi, 4 * n, endpoint=False)
        offsets = (rr[:, None, None] * np.stack([np.cos(th), np.sin(th)], -1)[None]).reshape(-1, 2)
    else:
        raise RootSystemError("khat_ball_minimum supports rank <= 2")
    vals = t.khat(1j * (t.center.coords.imag + offsets)).real
    return float(vals.min())


def ratio_to_majorant(t: TestFunctionTransform, **kwargs) -> float:
    return k_at_identity(t, **kwargs).value / beta_tilde(t.system, t.center)
