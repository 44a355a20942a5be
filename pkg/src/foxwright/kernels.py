"""Exact combinatorial kernels.

Bernoulli and Bernoulli-Norlund polynomials, non-central Stirling numbers of
the first kind, complete Bell polynomials and the Nair determinant.

Integer-indexed objects (Bernoulli numbers, binomials) are exact
``Fraction``/``int``.  Evaluation points may be exact rationals, Python
complex numbers, or mpmath numbers; the result lives in the same arithmetic.
Functions that accept ``ctx`` (an ``mpmath`` context) convert the exact
rationals into that context before mixing them with the inputs.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Sequence

_BERNOULLI: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_BERNOULLI_LOCK = threading.Lock()


def _tangent_numbers(n: int) -> list[int]:
    # Brent-Harvey in-place recurrence; integers only
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def bernoulli_numbers(n: int) -> list[Fraction]:
    """Return [B_0, ..., B_n] with B_1 = -1/2."""
    with _BERNOULLI_LOCK:
        if len(_BERNOULLI) <= n:
            # grow geometrically so repeated small extensions stay cheap
            target = max(n, 2 * len(_BERNOULLI))
            half = target // 2 + 1
            t = _tangent_numbers(half)
            table = [Fraction(0)] * (target + 1)
            table[0], table[1] = Fraction(1), Fraction(-1, 2)
            for k in range(1, half + 1):
                if 2 * k <= target:
                    table[2 * k] = Fraction((-1) ** (k - 1) * 2 * k * t[k], 4**k * (4**k - 1))
            _BERNOULLI[:] = table
        return list(_BERNOULLI[: n + 1])


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


def _lift(q: Fraction, ctx=None):
    """Convert an exact rational into ``ctx`` (or float if ctx is None)."""
    if ctx is None:
        return q.numerator / q.denominator
    return ctx.mpf(q.numerator) / q.denominator


def _lift_like(q: Fraction, x, ctx=None):
    if ctx is None and _is_exact(x):
        return q
    return _lift(q, ctx)


# ---------------------------------------------------------------------------
# formal power series
# ---------------------------------------------------------------------------


class FormalSeries:
    """Truncated power series sum_k coeffs[k] t^k.

    Arithmetic keeps the shorter truncation order.  ``exp`` needs a zero
    constant term and ``log`` a unit constant term, so both stay exact in
    rational arithmetic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) < 1:
            raise ValueError("a formal series needs at least one coefficient")
        self.coeffs = [Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c for c in coeffs]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __repr__(self) -> str:
        return f"FormalSeries({self.coeffs!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSeries) and self.coeffs == other.coeffs

    def truncate(self, n: int) -> "FormalSeries":
        return FormalSeries(self.coeffs[:n])

    def __add__(self, other):
        if not isinstance(other, FormalSeries):
            c = list(self.coeffs)
            c[0] = c[0] + other
            return FormalSeries(c)
        n = min(len(self), len(other))
        return FormalSeries([self.coeffs[k] + other.coeffs[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries([c * other for c in self.coeffs])
        n = min(len(self), len(other))
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            s = a[0] * b[k]
            for j in range(1, k + 1):
                s = s + a[j] * b[k - j]
            out.append(s)
        return FormalSeries(out)

    __rmul__ = __mul__

    def exp(self) -> "FormalSeries":
        f = self.coeffs
        if f[0] != 0:
            raise ValueError("exp of a series needs a zero constant term")
        g = [f[0] * 0 + 1]
        for n in range(1, len(f)):
            s = 0
            for k in range(1, n + 1):
                s = s + k * f[k] * g[n - k]
            g.append(s / n if not _is_exact(s) else Fraction(s) / n)
        return FormalSeries(g)

    def log(self) -> "FormalSeries":
        f = self.coeffs
        if f[0] != 1:
            raise ValueError("log of a series needs a unit constant term")
        g = [f[0] * 0]
        for n in range(1, len(f)):
            s = 0
            for k in range(1, n):
                s = s + k * g[k] * f[n - k]
            s = f[n] - (s / n if not _is_exact(s) else Fraction(s) / n)
            g.append(s)
        return FormalSeries(g)

    def power(self, sigma) -> "FormalSeries":
        """self**sigma as exp(sigma * log(self)); needs unit constant term."""
        return (self.log() * sigma).exp()

    @classmethod
    def exponential(cls, x, n: int) -> "FormalSeries":
        """Series of exp(x t) to order n."""
        out = [x * 0 + 1]
        for k in range(1, n):
            term = out[-1] * x
            out.append(term / k if not _is_exact(term) else Fraction(term) / k)
        return cls(out)


def bernoulli_gf(n: int) -> FormalSeries:
    """Exact series of t/(e^t - 1) with n coefficients."""
    b = bernoulli_numbers(n)
    return FormalSeries([b[k] / math.factorial(k) for k in range(n)])


# ---------------------------------------------------------------------------
# Bernoulli and Bernoulli-Norlund polynomials
# ---------------------------------------------------------------------------


def bernoulli_polynomial_coeffs(m: int) -> list[Fraction]:
    """Exact coefficients c_j of B_m(x) = sum_j c_j x^j."""
    b = bernoulli_numbers(m)
    return [math.comb(m, j) * b[m - j] for j in range(m + 1)]


def bernoulli_polynomial(m: int, x, ctx=None):
    """Classical Bernoulli polynomial B_m(x) by Horner on exact coefficients."""
    if m < 0:
        raise ValueError("m must be non-negative")
    coeffs = bernoulli_polynomial_coeffs(m)
    if ctx is None and _is_exact(x):
        x = Fraction(x)
    elif ctx is None:
        x = complex(x)
    out = _lift_like(coeffs[m], x, ctx)
    for j in range(m - 1, -1, -1):
        out = out * x + _lift_like(coeffs[j], x, ctx)
    return out


def bernoulli_values(x, n: int, ctx) -> list:
    """[B_0(x), ..., B_n(x)] in ``ctx`` arithmetic.

    B_m(x) = m! sum_k (B_k/k!) x^(m-k)/(m-k)!, one dot product per m.
    """
    bn = bernoulli_numbers(n)
    fact = [ctx.one]
    for k in range(1, n + 1):
        fact.append(fact[-1] * k)
    scaled = [(k, _lift(bn[k], ctx) / fact[k]) for k in range(n + 1) if bn[k] != 0]
    x = ctx.convert(x)
    powers = [ctx.one]
    for j in range(1, n + 1):
        powers.append(powers[-1] * x / j)
    out = []
    for m in range(n + 1):
        out.append(fact[m] * ctx.fdot((c, powers[m - k]) for k, c in scaled if k <= m))
    return out


def norlund_series(sigma, x, n: int, ctx=None) -> FormalSeries:
    """Series of (t/(e^t-1))^sigma e^(x t) with n coefficients (no k! factor)."""
    base = bernoulli_gf(n)
    exact = ctx is None and _is_exact(x) and _is_exact(sigma)
    if not exact:
        if ctx is None:
            base = FormalSeries([float(c) for c in base.coeffs])
            sigma, x = complex(sigma), complex(x)
        else:
            base = FormalSeries([_lift(c, ctx) for c in base.coeffs])
            sigma, x = ctx.convert(sigma), ctx.convert(x)
    elif not isinstance(x, Fraction):
        x = Fraction(x)
    if exact and isinstance(sigma, int) and sigma >= 0:
        powered = FormalSeries([Fraction(1)] + [Fraction(0)] * (n - 1))
        for _ in range(sigma):
            powered = powered * base
    else:
        powered = base.power(sigma)
    return powered * FormalSeries.exponential(x, n)


def norlund_polynomial(k: int, sigma, x, ctx=None):
    """Bernoulli-Norlund polynomial B_k^(sigma)(x) = k! [t^k] (t/(e^t-1))^sigma e^(x t)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return norlund_series(sigma, x, k + 1, ctx)[k] * math.factorial(k)


def norlund_values(sigma, x, n: int, ctx) -> list:
    """[B_0^(sigma)(x), ..., B_n^(sigma)(x)] in ``ctx`` arithmetic."""
    s = norlund_series(sigma, x, n + 1, ctx)
    return [s[k] * math.factorial(k) for k in range(n + 1)]


# ---------------------------------------------------------------------------
# non-central Stirling numbers of the first kind
# ---------------------------------------------------------------------------


def stirling_row(sigma, n: int) -> list:
    """Coefficients [s_sigma(n, 0), ..., s_sigma(n, n)] of (x + sigma)_n."""
    row = [sigma * 0 + 1]
    for j in range(n):
        c = sigma + j
        nxt = [c * row[0]]
        for l in range(1, len(row)):
            nxt.append(row[l - 1] + c * row[l])
        nxt.append(row[-1])
        row = nxt
    return row


def noncentral_stirling_first(sigma, n: int, l: int):
    """Signless non-central Stirling number s_sigma(n, l)."""
    if l < 0 or l > n:
        raise IndexError(f"l={l} outside 0..{n}")
    return stirling_row(sigma, n)[l]


def noncentral_stirling_carlitz(sigma, n: int, l: int, ctx=None):
    """s_sigma(n, l) through Bernoulli-Norlund polynomials of order n+1.

    The binomial with negative upper entry is (-1)^(n-l) (l+1)_(n-l)/(n-l)!,
    which is the signed integer (-1)^(n-l) C(n, l).
    """
    if l < 0 or l > n:
        raise IndexError(f"l={l} outside 0..{n}")
    sign_binom = (-1) ** (n - l) * math.comb(n, l)
    return sign_binom * norlund_polynomial(n - l, n + 1, 1 - sigma, ctx)


# ---------------------------------------------------------------------------
# complete Bell polynomials, Nair determinant
# ---------------------------------------------------------------------------


def _partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield [part] + rest


def bell_complete(x: Sequence, method: str = "partition"):
    """Complete exponential Bell polynomial Y_n(x_1, ..., x_n), n = len(x).

    ``method="partition"`` sums over the partitions of n,
    ``method="series"`` extracts n! [t^n] exp(sum_m x_m t^m / m!).
    """
    n = len(x)
    if n < 1:
        raise ValueError("need at least one argument")
    if method == "series":
        f = [x[0] * 0] + [x[m - 1] / math.factorial(m) if not _is_exact(x[m - 1])
                          else Fraction(x[m - 1], math.factorial(m)) for m in range(1, n + 1)]
        return FormalSeries(f).exp()[n] * math.factorial(n)
    if method != "partition":
        raise ValueError(f"unknown method {method!r}")
    total = x[0] * 0
    for parts in _partitions(n):
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        denom = 1
        term = x[0] * 0 + 1
        for j, kj in counts.items():
            denom *= math.factorial(kj) * math.factorial(j) ** kj
            term = term * x[j - 1] ** kj
        coef = Fraction(math.factorial(n), denom)
        total = total + (coef * term if _is_exact(term) else term * (coef.numerator / coef.denominator))
    return total


def _det(matrix: list[list]):
    """Determinant by Gaussian elimination with partial pivoting."""
    a = [list(row) for row in matrix]
    n = len(a)
    det = a[0][0] * 0 + 1
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(a[r][c]))
        if a[piv][c] == 0:
            return a[0][0] * 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f != 0:
                for k in range(c, n):
                    a[r][k] = a[r][k] - f * a[c][k]
    return det


def nair_matrix(q: Sequence, r: int) -> list[list]:
    """Omega_r for q = (q_1, ..., q_r) (q[0] is q_1)."""
    if len(q) < r:
        raise ValueError(f"need {r} coefficients, got {len(q)}")
    zero = q[0] * 0
    om = [[zero] * r for _ in range(r)]
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i >= j:
                om[i - 1][j - 1] = q[i - j] * Fraction(math.factorial(i - 1), math.factorial(j - 1)) \
                    if _is_exact(q[i - j]) else q[i - j] * (math.factorial(i - 1) / math.factorial(j - 1))
            elif i == j - 1:
                om[i - 1][j - 1] = zero - 1
    return om


def nair_determinant(q: Sequence, r: int):
    """l_r = det(Omega_r) / r!."""
    if r < 1:
        raise ValueError("r must be >= 1")
    d = _det(nair_matrix(q, r))
    if _is_exact(d):
        return Fraction(d) / math.factorial(r)
    return d / math.factorial(r)


def l_from_q(q: Sequence, r: int) -> list:
    """[l_0, ..., l_r] from l_r = (1/r) sum_{m=1}^r q_m l_{r-m}, l_0 = 1 (q[0] is q_1)."""
    one = q[0] * 0 + 1 if q else 1
    out = [one]
    for k in range(1, r + 1):
        s = q[0] * 0
        for m in range(1, k + 1):
            s = s + q[m - 1] * out[k - m]
        out.append(Fraction(s) / k if _is_exact(s) else s / k)
    return out
