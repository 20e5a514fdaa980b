"""Orders of finite symplectic, orthogonal and unitary groups over O/p^k.

Closed forms are evaluated in exact rational arithmetic. ``brute_force_order``
is an independent oracle: it counts form-preserving matrices over Z/p^k (or
over the unramified quadratic extension ring for unitary groups) by a
column-by-column exhaustive search.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

ENUMERATION_CAP = 10 ** 8


class UnsupportedCharacteristic(ValueError):
    pass


class TypeMismatch(ValueError):
    pass


class OracleDeclined(ValueError):
    pass


class EnumerationLimit(ValueError):
    pass


class GroupFamily(enum.Enum):
    SP = "sp"
    O = "o"
    U = "u"


def _prime_power(q):
    """Return (p, f) with q = p^f, or None."""
    if q < 2:
        return None
    p = next(d for d in itertools.count(2) if q % d == 0)
    f, x = 0, q
    while x % p == 0:
        x //= p
        f += 1
    return (p, f) if x == 1 else None


def _check_q(q):
    pf = _prime_power(q)
    if pf is None:
        raise ValueError(f"q={q} is not a prime power")
    if pf[0] == 2:
        raise UnsupportedCharacteristic("even residue characteristic is not supported")
    return pf


@dataclass(frozen=True)
class LocalGroupDatum:
    family: GroupFamily
    size: int  # r for Sp_2r, d for O_d and U_d
    q: int
    level: int = 1
    epsilon: int = 0

    def __post_init__(self):
        _check_q(self.q)
        if self.size < 1 or self.level < 0:
            raise ValueError("size must be >= 1 and level >= 0")
        if self.family is GroupFamily.O:
            _check_epsilon(self.size, self.epsilon)
        elif self.epsilon != 0:
            raise TypeMismatch("epsilon only applies to orthogonal groups")

    @property
    def dimension(self) -> int:
        return group_dimension(self.family, self.size)

    def at_level(self, level: int) -> "LocalGroupDatum":
        return LocalGroupDatum(self.family, self.size, self.q, level, self.epsilon)


def _check_epsilon(d, eps):
    if d % 2 and eps != 0:
        raise TypeMismatch(f"O_{d} with d odd needs epsilon = 0, got {eps}")
    if d % 2 == 0 and eps not in (1, -1):
        raise TypeMismatch(f"O_{d} with d even needs epsilon = +-1, got {eps}")


def group_dimension(family: GroupFamily, size: int) -> int:
    """Dimension of the group scheme: 2r^2 + r, d(d-1)/2, d^2."""
    if family is GroupFamily.SP:
        return 2 * size * size + size
    if family is GroupFamily.O:
        return size * (size - 1) // 2
    return size * size


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 1:
        raise ArithmeticError(f"{what} evaluated to {value}, not a positive integer")
    return value.numerator


def order_sp(r: int, q: int, level: int = 1) -> int:
    """|Sp_2r(O/p^level)| = q^{level(2r^2+r)} prod_{i<=r} (1 - q^{-2i})."""
    _check_q(q)
    if r < 1 or level < 1:
        raise ValueError("r and level must be >= 1")
    val = Fraction(q) ** (level * (2 * r * r + r))
    for i in range(1, r + 1):
        val *= 1 - Fraction(1, q ** (2 * i))
    return _as_integer(val, "Sp order")


def order_o(d: int, q: int, level: int = 1, epsilon: int = 0) -> int:
    """|O_d(O/p^level)| from the level-one product and the level scaling."""
    _check_q(q)
    _check_epsilon(d, epsilon)
    if d < 1 or level < 1:
        raise ValueError("d and level must be >= 1")
    h, l = d // 2, (d - 1) // 2
    val = 2 * Fraction(q) ** (h * (h - 1)) * Fraction(q) ** h * Fraction(q) ** (l * (l + 1))
    for i in range(1, l + 1):
        val *= 1 - Fraction(1, q ** (2 * i))
    val *= 1 - epsilon * Fraction(1, q ** h)
    val *= Fraction(q) ** ((level - 1) * d * (d - 1) // 2)
    return _as_integer(val, "O order")


def order_u(d: int, q: int, level: int = 1) -> int:
    """|U_d(O_E/p_E^level)| for E/F unramified, q the residue cardinality of F."""
    _check_q(q)
    if d < 1 or level < 1:
        raise ValueError("d and level must be >= 1")
    val = Fraction(q) ** (d * d)
    for i in range(1, d + 1):
        val *= 1 - Fraction(-1, q) ** i
    val *= Fraction(q) ** ((level - 1) * d * d)
    return _as_integer(val, "U order")


def order(datum: LocalGroupDatum) -> int:
    if datum.family is GroupFamily.SP:
        return order_sp(datum.size, datum.q, datum.level)
    if datum.family is GroupFamily.O:
        return order_o(datum.size, datum.q, datum.level, datum.epsilon)
    return order_u(datum.size, datum.q, datum.level)


def congruence_index(datum: LocalGroupDatum) -> int:
    """[K : K(p^k)] = |G(O/p^k)|, with k = datum.level; 1 at k = 0."""
    if datum.level == 0:
        return 1
    return order(datum)


def chevalley_sp_order(r: int, q: int) -> int:
    """q^{r^2} prod (q^{2i} - 1): the classical formula, for cross-checks."""
    val = q ** (r * r)
    for i in range(1, r + 1):
        val *= q ** (2 * i) - 1
    return val


# Exhaustive counting oracle


def _nonsquare(p):
    squares = {(x * x) % p for x in range(1, p)}
    return next(a for a in range(2, p) if a not in squares)


def standard_form(datum: LocalGroupDatum) -> np.ndarray:
    """A Gram matrix whose isometry group has the datum's type.

    Sp: the standard alternating form. O: d odd -> identity; split
    (epsilon=+1) -> hyperbolic planes diag(1,-1); epsilon=-1 -> one plane
    replaced by diag(1,-nu), nu a non-square. U: identity Hermitian form,
    returned as an integer matrix in the coordinates of the base ring.
    """
    d, p = datum.size, _check_q(datum.q)[0]
    if datum.family is GroupFamily.SP:
        J = np.zeros((2 * d, 2 * d), dtype=np.int64)
        J[:d, d:] = np.eye(d, dtype=np.int64)
        J[d:, :d] = -np.eye(d, dtype=np.int64)
        return J
    if datum.family is GroupFamily.U:
        return np.eye(d, dtype=np.int64)
    diag = [1] * d
    if d % 2 == 0:
        diag = [1, -1] * (d // 2)
        if datum.epsilon == -1:
            diag[-1] = -_nonsquare(p)
    return np.diag(diag).astype(np.int64)


class _Ring:
    """Z/N, or the quadratic extension (Z/N)[s]/(s^2 - nu) encoded as a + b s."""

    def __init__(self, N, nu=None):
        self.N = N
        self.nu = nu
        self.ext = nu is not None
        self.size = N * N if self.ext else N

    def vectors(self, dim):
        """All vectors of length ``dim``, shape (size^dim, dim[, 2])."""
        if self.ext:
            coords = np.array(list(itertools.product(range(self.N), repeat=2 * dim)), dtype=np.int64)
            return coords.reshape(-1, dim, 2)
        return np.array(list(itertools.product(range(self.N), repeat=dim)), dtype=np.int64)

    def form_table(self, V, S, hermitian):
        """Values B(v_i, v_j) for all pairs; encoded as a single integer."""
        N = self.N
        if not self.ext:
            T = (V @ S % N) @ V.T % N
            return T
        # x^* H y with H integral, conj(a + b s) = a - b s
        a, b = V[..., 0], V[..., 1]
        Ha, Hb = a @ S.T % N, b @ S.T % N  # H y, componentwise (H has base-ring entries)
        conj_b = -b if hermitian else b
        # (a1 + c1 s)(a2 + b2 s) = a1 a2 + nu c1 b2 + (a1 b2 + c1 a2) s
        re = (a @ Ha.T + self.nu * (conj_b @ Hb.T)) % N
        im = (a @ Hb.T + conj_b @ Ha.T) % N
        return re * N + im

    def target(self, S):
        if self.ext:
            return (S % self.N) * self.N
        return S % self.N


def brute_force_order(datum: LocalGroupDatum, form=None, cap: int = ENUMERATION_CAP) -> int:
    """Count g with g^T S g = S (g^* H g = H for U) over the residue ring.

    The count proceeds column by column: column k must pair with the
    already-chosen columns as prescribed by the form. Only q prime is
    supported.
    """
    p, f = _check_q(datum.q)
    if f != 1:
        raise OracleDeclined("the oracle works over Z/p^k only; q must be prime")
    N = p ** datum.level
    if datum.level < 1:
        return 1
    ring = _Ring(N, _nonsquare(p) if datum.family is GroupFamily.U else None)
    S = standard_form(datum) if form is None else np.asarray(form, dtype=np.int64)
    dim = S.shape[0]
    if S.shape != (dim, dim):
        raise ValueError("form must be square")
    if datum.family is GroupFamily.SP and dim != 2 * datum.size:
        raise ValueError("symplectic form has the wrong size")
    if datum.family is not GroupFamily.SP and dim != datum.size:
        raise ValueError("form has the wrong size")
    det = int(round(np.linalg.det(S)))
    if det % p == 0:
        raise ValueError("form is singular modulo p")
    total = ring.size ** (dim * dim)
    if total > cap:
        raise EnumerationLimit(f"{total} candidate matrices exceed the cap {cap}")
    V = ring.vectors(dim)
    T = ring.form_table(V, S, hermitian=True)
    target = ring.target(S)
    diag_ok = [np.flatnonzero(np.diagonal(T) == target[k, k]) for k in range(dim)]

    def count(chosen, k):
        cand = diag_ok[k]
        for i, ci in enumerate(chosen):
            cand = cand[T[ci, cand] == target[i, k]]
            if not len(cand):
                return 0
        if k == dim - 1:
            return len(cand)
        return sum(count(chosen + [c], k + 1) for c in cand)

    return count([], 0)


def classify_epsilon(form, d: int, q: int) -> int:
    """Type (+1 or -1) of an even-dimensional quadratic form over F_q, q prime.

    Decided by comparing the oracle count with both closed forms.
    """
    if d % 2:
        return 0
    datum = LocalGroupDatum(GroupFamily.O, d, q, 1, 1)
    n = brute_force_order(datum, form)
    matches = [eps for eps in (1, -1) if order_o(d, q, 1, eps) == n]
    if len(matches) != 1:
        raise ArithmeticError(f"oracle order {n} matches neither closed form")
    return matches[0]
