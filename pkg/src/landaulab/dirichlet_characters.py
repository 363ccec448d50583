"""Dirichlet character groups and character-weighted Chebyshev sums.

A group mod d is built from the CRT decomposition of the unit group:
primitive roots for odd prime powers, the {-1, 5} generator pair for
2^k with k >= 3. Character values are kept as exact root-of-unity
exponents (integers mod the group exponent) and only become complex
numbers when a sum is accumulated, so long psi sums carry no
per-evaluation phase drift. Accumulations use numpy pairwise block sums
combined with math.fsum, which keeps results reproducible to well below
1e-9 regardless of chunking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import prime_engine
from ._parallel import map_ordered

MAX_MODULUS = 10_000
MAX_RESIDUE_X = 10_000_000


@dataclass(frozen=True)
class CharacterValue:
    """One character evaluation: a complex unit, or 0 off the coprime residues."""

    value: complex
    is_zero: bool


@dataclass(frozen=True)
class ResidueSumReport:
    """Moebius/character double sum at (x, a) next to its x^(1/2) (log x)^3 scale."""

    x: int
    D: int
    a: int
    sum_value: complex
    abs_value: float
    bound: float
    ratio: float


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of the unit group: modulus q (a prime power), its
    generator g taken mod q, the factor order, and a dense discrete-log
    table (dlog[r] = exponent of r, -1 where undefined)."""

    q: int
    g: int
    order: int
    dlog: np.ndarray


def _primitive_root_mod_prime(p: int) -> int:
    if p == 2:
        return 1
    prime_factors = [f for f, _ in prime_engine.factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in prime_factors):
            return g
    raise AssertionError(f"no primitive root found mod {p}")


def _primitive_root_prime_power(p: int, a: int) -> int:
    g = _primitive_root_mod_prime(p)
    if a == 1:
        return g
    # g stays primitive mod p^a unless g^(p-1) = 1 (mod p^2); then g + p works
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _odd_component(p: int, a: int) -> _Component:
    q = p**a
    order = q // p * (p - 1)
    g = _primitive_root_prime_power(p, a)
    dlog = np.full(q, -1, dtype=np.int64)
    x = 1
    for t in range(order):
        dlog[x] = t
        x = x * g % q
    return _Component(q=q, g=g, order=order, dlog=dlog)


def _two_power_components(a: int) -> list[_Component]:
    if a == 1:
        return []
    q = 1 << a
    if a == 2:
        dlog = np.full(q, -1, dtype=np.int64)
        dlog[1], dlog[3] = 0, 1
        return [_Component(q=q, g=3, order=2, dlog=dlog)]
    half = 1 << (a - 2)
    sign = np.full(q, -1, dtype=np.int64)
    five = np.full(q, -1, dtype=np.int64)
    for s in (0, 1):
        x = (q - 1) ** s % q
        for t in range(half):
            v = x * pow(5, t, q) % q
            sign[v] = s
            five[v] = t
    return [
        _Component(q=q, g=q - 1, order=2, dlog=sign),
        _Component(q=q, g=5, order=half, dlog=five),
    ]


class CharacterGroup:
    """All phi(d) Dirichlet characters mod d.

    Attributes
    ----------
    modulus : d
    generators : [(g, order)] with g a generator of one cyclic component,
        lifted to the full modulus (g = 1 mod d/q for its prime power q)
    characters : list of exponent tuples (k_1..k_r), 0 <= k_i < order_i;
        the all-zero tuple (index 0) is the principal character
    exponent : lcm of the component orders (1 when d <= 2)
    """

    def __init__(self, d: int):
        d = int(d)
        if d < 1:
            raise ValueError(f"modulus must be >= 1, got {d}")
        if d > MAX_MODULUS:
            raise ValueError(f"modulus capped at {MAX_MODULUS}, got {d}")
        self.modulus = d
        comps: list[_Component] = []
        for p, a in prime_engine.factorize(d):
            comps.extend(_two_power_components(a) if p == 2 else [_odd_component(p, a)])
        self._components = comps
        self.exponent = math.lcm(*(c.order for c in comps)) if comps else 1
        self.characters = list(
            itertools.product(*(range(c.order) for c in comps))
        )
        self.generators = [(self._lift(c), c.order) for c in comps]
        # weight w_i = exponent/order_i turns component dlogs into exponents
        # of a common exponent-th root of unity
        self._weights = np.array(
            [self.exponent // c.order for c in comps], dtype=np.int64
        )
        self._kmat = np.array(self.characters, dtype=np.int64).reshape(
            len(self.characters), len(comps)
        )
        self._roots = np.exp(
            2j * np.pi * np.arange(self.exponent) / self.exponent
        )

    def _lift(self, comp: _Component) -> int:
        d = self.modulus
        rest = d // comp.q
        if rest == 1:
            return comp.g % d
        inv = pow(comp.q, -1, rest)
        # = g mod q, = 1 mod d/q
        return (comp.g + comp.q * ((1 - comp.g) * inv % rest)) % d

    def __len__(self) -> int:
        return len(self.characters)

    @property
    def principal_index(self) -> int:
        return 0

    def _weighted_dlog(self, n: int) -> np.ndarray | None:
        """Vector (w_i * dlog_i(n)) or None when gcd(n, d) > 1."""
        d = self.modulus
        if d == 1:
            return np.empty(0, dtype=np.int64)
        r = n % d
        if math.gcd(r, d) != 1:
            return None
        out = np.empty(len(self._components), dtype=np.int64)
        for i, c in enumerate(self._components):
            out[i] = c.dlog[r % c.q]
        return out * self._weights

    def unit_exponent(self, index: int, n: int) -> int | None:
        """Exact exponent m with chi(n) = exp(2 pi i m / exponent); None off-units."""
        u = self._weighted_dlog(n)
        if u is None:
            return None
        k = self._kmat[index]
        return int(np.dot(k, u)) % self.exponent

    def evaluate(self, index: int, n: int) -> CharacterValue:
        m = self.unit_exponent(index, n)
        if m is None:
            return CharacterValue(value=0j, is_zero=True)
        return CharacterValue(value=complex(self._roots[m]), is_zero=False)

    def value_vector(self, index: int) -> np.ndarray:
        """chi(r) for r in [0, d) as a complex array (0 off the units)."""
        d = self.modulus
        if d == 1:
            return np.ones(1, dtype=np.complex128)
        res = np.arange(d)
        coprime = np.gcd(res, d) == 1
        idx = np.flatnonzero(coprime)
        exps = np.zeros(idx.size, dtype=np.int64)
        k = self._kmat[index]
        for i, c in enumerate(self._components):
            exps += k[i] * self._weights[i] * c.dlog[idx % c.q]
        out = np.zeros(d, dtype=np.complex128)
        out[idx] = self._roots[exps % self.exponent]
        return out

    def value_matrix(self) -> np.ndarray:
        """All characters at once: shape (phi(d), d), rows ordered like characters."""
        d = self.modulus
        if d == 1:
            return np.ones((1, 1), dtype=np.complex128)
        res = np.arange(d)
        idx = np.flatnonzero(np.gcd(res, d) == 1)
        out = np.zeros((len(self.characters), d), dtype=np.complex128)
        if not self._components:
            out[:, idx] = 1.0
            return out
        t = np.vstack([c.dlog[idx % c.q] for c in self._components])
        exps = (self._kmat * self._weights) @ t % self.exponent
        out[:, idx] = self._roots[exps]
        return out


def build_character_group(d: int) -> CharacterGroup:
    return CharacterGroup(d)


def character_sum_nonprincipal(group: CharacterGroup, a: int) -> complex:
    """Sum of conj(chi(a)) over the non-principal characters mod d.

    Orthogonality collapses this to phi(d) - 1 when a = 1 (mod d) and to
    -1 otherwise; the returned value is the actually accumulated complex
    sum, which tests hold against that collapse.
    """
    d = group.modulus
    u = group._weighted_dlog(a)
    if u is None:
        raise ValueError(f"a must be coprime to the modulus, got a={a}, d={d}")
    if len(group) == 1:
        return 0j
    exps = (group._kmat @ u) % group.exponent
    vals = np.conj(group._roots[exps])
    total = complex(math.fsum(vals.real), math.fsum(vals.imag))
    return total - 1.0  # drop the principal character's contribution


def psi_chi(group: CharacterGroup, chi_index: int, y: int, primed: bool = False) -> complex:
    """Character-weighted Chebyshev sum: sum of chi(n) Lambda(n) over n <= y.

    With primed=True the principal character gets the classical -y shift;
    primed is a no-op for non-principal characters.
    """
    y = int(y)
    if y < 1:
        raise ValueError(f"psi_chi requires y >= 1, got {y}")
    d = group.modulus
    tables = prime_engine.tables_up_to(max(y, 2))
    lam = tables.lam[: y + 1]
    vec = group.value_vector(chi_index)
    if d == 1:
        class_sums = np.array([lam.sum()])
    else:
        class_sums = np.array([lam[r::d].sum() for r in range(d)])
    total = complex(
        math.fsum(vec.real * class_sums), math.fsum(vec.imag * class_sums)
    )
    if primed and chi_index == group.principal_index:
        total -= y
    return total


def _prime_power_log_sums(x: int, dmax: int) -> dict[int, float]:
    """For each prime p <= dmax: sum of log p over the powers p^k <= x."""
    out: dict[int, float] = {}
    for p in prime_engine.primes_up_to(dmax) if dmax >= 2 else []:
        p = int(p)
        k = 0
        q = p
        while q <= x:
            k += 1
            q *= p
        out[p] = k * math.log(p)
    return out


def _trial_lambda(n: int) -> float:
    for q in range(2, n + 1):
        if n % q == 0:
            m = n
            while m % q == 0:
                m //= q
            return math.log(q) if m == 1 else 0.0
    return 0.0


def residue_sum_direct(x: int, a: int) -> complex:
    """Reference evaluation of the residue double sum: literal loops over
    d <= sqrt(x), every non-principal character mod d, and n <= x, with
    Lambda recomputed by trial factorization. Quadratic-ish cost; use only
    to cross-check residue_sum at small x.
    """
    x, a = int(x), int(a)
    if x < 4:
        raise ValueError(f"residue_sum_direct requires x >= 4, got {x}")
    D = math.isqrt(x)
    lam = [0.0, 0.0] + [_trial_lambda(n) for n in range(2, x + 1)]
    total = 0j
    for d in range(1, D + 1):
        if prime_engine.moebius(d) == 0 or math.gcd(a, d) != 1:
            continue
        group = build_character_group(d)
        phi_d = len(group)
        for idx in range(1, phi_d):
            chi_a = group.evaluate(idx, a).value
            psi = 0j
            for n in range(2, x + 1):
                if lam[n]:
                    psi += group.evaluate(idx, n).value * lam[n]
            total += prime_engine.moebius(d) / phi_d * chi_a.conjugate() * psi
    return total


def residue_sum(x: int, a: int, threads: int = 1) -> ResidueSumReport:
    """Evaluate sum over d <= sqrt(x) of mu(d)/phi(d) times the
    non-principal character sum conj(chi(a)) psi(x, chi).

    Orthogonality collapses the character block for each d to
    phi(d) * [n = a (mod d)] - [gcd(n, d) = 1], so the whole thing reduces
    to strided Lambda-table sums; moduli sharing a factor with a
    contribute 0 (chi(a) = 0 convention), as do non-squarefree d.
    """
    x, a = int(x), int(a)
    if x < 4:
        raise ValueError(f"residue_sum requires x >= 4, got {x}")
    if x > MAX_RESIDUE_X:
        raise ValueError(f"residue_sum capped at x <= {MAX_RESIDUE_X}")
    D = math.isqrt(x)
    tables = prime_engine.tables_up_to(x)
    lam = tables.lam[: x + 1]
    mu = tables.mu
    phi = tables.phi
    spf = tables.spf
    psi_x = float(lam.sum())
    pp_log = _prime_power_log_sums(x, D)

    def term(d: int) -> float:
        m = int(mu[d])
        if m == 0 or math.gcd(a, d) != 1:
            return 0.0
        progression = float(lam[a % d :: d].sum())
        coprime_psi = psi_x
        q = d
        while q > 1:
            p = int(spf[q])
            coprime_psi -= pp_log[p]
            q //= p
        return m * (progression - coprime_psi / int(phi[d]))

    chunks = [range(s, min(s + 256, D + 1)) for s in range(2, D + 1, 256)]
    parts = map_ordered(lambda ch: [term(d) for d in ch], chunks, threads)
    total = math.fsum(t for part in parts for t in part)
    value = complex(total, 0.0)
    bound = math.sqrt(x) * math.log(x) ** 3
    return ResidueSumReport(
        x=x,
        D=D,
        a=a,
        sum_value=value,
        abs_value=abs(value),
        bound=bound,
        ratio=abs(value) / bound,
    )
