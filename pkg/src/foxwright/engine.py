"""Expansion coefficients near the singular point and their cache.

One :class:`CoefficientTable` per (ParameterSet, sigma, theta) holds the
sequences q_m, l_r, q_m^theta, l_r^theta and V_n(theta) in a private mpmath
context.  Sequences grow lazily and are append-only at a fixed precision; when
cancellation eats into the working precision the table is rebuilt at a
higher one (see :func:`get_table`).

Infinite sums over V_n (W_m, the summation at rho, the logarithmic-case
tails) converge only algebraically, like N^-alpha.  They are evaluated by
fitting the partial sums S_N = S - sum_b c_b N^-lam_b (log N)^l_b, where the
exponents lam_b are known exactly from the pole lattice (a_k + j)/A_k of the
Mellin-Barnes integrand.  The error estimate compares fits over two windows.
"""
from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath

from .errors import DomainError, IntegerMuError, SigmaError, ToleranceError
from .kernels import bernoulli_values, norlund_values
from .params import ParameterSet, choose_sigma

DEFAULT_DPS = 40
INT_MU_TOL = 1e-8
MU_WARN_TOL = 1e-4
COLLISION_TOL = 1e-9
DEFAULT_TOL = 1e-10
V_CAP = 1024          # largest V index the tail fits will request
FIT_BASIS = 16        # number of asymptotic basis functions in a tail fit
_GUARD_DIGITS = 30    # digits kept beyond the measured cancellation


def max_terms() -> int:
    """Series term cap; the FWX_MAX_TERMS environment variable overrides it."""
    return int(os.environ.get("FWX_MAX_TERMS", "100000"))


class _PrecisionShortfall(Exception):
    def __init__(self, dps: int):
        super().__init__(dps)
        self.dps = dps


def _num(ctx, x):
    x = complex(x)
    return ctx.mpf(x.real) if x.imag == 0 else ctx.mpc(x.real, x.imag)


def _loss(ctx, terms_max, total) -> float:
    if terms_max == 0:
        return 0.0
    if total == 0:
        return float(ctx.dps)
    return max(0.0, float(ctx.log10(terms_max / abs(total))))


# ---------------------------------------------------------------------------
# pole lattice
# ---------------------------------------------------------------------------


def _solve_first(rows: list):
    """First unknown of a square augmented system (partial pivoting, in place)."""
    n = len(rows)
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(rows[r][c]))
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c]
        for r in range(c + 1, n):
            f = rows[r][c] / piv[c]
            if f:
                rr = rows[r]
                for k in range(c + 1, n + 1):
                    rr[k] -= f * piv[k]
    x = [None] * n
    for c in range(n - 1, -1, -1):
        acc = rows[c][n]
        for k in range(c + 1, n):
            acc -= rows[c][k] * x[k]
        x[c] = acc / rows[c][c]
    return x[0]


def integer_mu(ps: ParameterSet) -> Optional[int]:
    """Return mu as an int if it is within INT_MU_TOL of an integer, else None."""
    m = ps.mu
    k = round(m.real)
    if abs(m - k) < INT_MU_TOL:
        return int(k)
    return None


def _pole_groups(ps: ParameterSet, span: float) -> list[tuple[complex, int]]:
    """Distinct exponents e = (a_k + j)/A_k with Re e <= alpha + span and their multiplicity."""
    alpha = ps.alpha
    groups: list[list] = []
    for ak, Ak in zip(ps.a, ps.A):
        j = 0
        while True:
            e = (ak + j) / Ak
            if e.real > alpha + span:
                break
            for g in groups:
                if abs(g[0] - e) < COLLISION_TOL:
                    g[1] += 1
                    break
            else:
                groups.append([e, 1])
            j += 1
    return [(g[0], g[1]) for g in groups]


def pole_multiplicity(ps: ParameterSet) -> int:
    """Largest pole multiplicity among exponents with real part alpha; the r in the growth bound."""
    groups = _pole_groups(ps, 0.0)
    return max((m for e, m in groups if abs(e.real - ps.alpha) < COLLISION_TOL), default=1)


def asymptotic_basis(ps: ParameterSet, shift: complex = 0, count: int = FIT_BASIS,
                     merge_tol: float = 1e-6) -> list[tuple[complex, int]]:
    """Exponent/log-power pairs (lam, l) describing tails sum_{n>=N} V_n w_n.

    V_n ~ sum n^-(e+i) (log n)^l over poles e with multiplicity > l and
    integer shifts i >= 0; a weight w_n ~ n^-kappa moves every exponent by
    ``shift = kappa - 1 - theta``.  Exponents closer than ``merge_tol`` are
    merged into one log ladder.
    """
    span = 2.0
    while True:
        poles = _pole_groups(ps, span)
        cand: list[list] = []  # [gamma, max log power]
        for e, mult in poles:
            i = 0
            while (e + i).real <= ps.alpha + span:
                g = e + i
                for c in cand:
                    d = abs(c[0] - g)
                    if d < COLLISION_TOL:
                        # shifted copies of distinct poles: no extra log power
                        c[1] = max(c[1], mult - 1)
                        break
                    if d < merge_tol:
                        # nearly degenerate pair: absorb into a longer log ladder
                        c[1] += mult
                        break
                else:
                    cand.append([g, mult - 1])
                i += 1
        cand.sort(key=lambda c: (c[0].real, c[0].imag))
        basis = []
        for g, lmax in cand:
            for ell in range(lmax, -1, -1):
                basis.append((g + shift, ell))
        if len(basis) >= count or span > 64:
            return basis[:count]
        span *= 2


# ---------------------------------------------------------------------------
# coefficient table
# ---------------------------------------------------------------------------


@dataclass
class TailSum:
    value: object
    err: float
    terms: int


class CoefficientTable:
    """Lazily extended coefficient sequences for one (ParameterSet, sigma, theta)."""

    def __init__(self, ps: ParameterSet, sigma: float, theta: float = 0.0, dps: int = DEFAULT_DPS):
        self.ps = ps
        self.sigma = float(sigma)
        self.theta = float(theta)
        self.dps = int(dps)
        ctx = mpmath.MPContext()
        ctx.dps = self.dps
        self.ctx = ctx
        self._lock = threading.RLock()

        a = [_num(ctx, x) for x in ps.a]
        b = [_num(ctx, x) for x in ps.b]
        A = [ctx.mpf(x) for x in ps.A]
        B = [ctx.mpf(x) for x in ps.B]
        self._a, self._b, self._A, self._B = a, b, A, B
        self.mu = ctx.fsum(b) - ctx.fsum(a) + ctx.mpf(ps.p - ps.q - 1) / 2
        self.mu_sigma = self.mu + self.sigma
        nu = (2 * ctx.pi) ** (ctx.mpf(ps.p - ps.q - 1) / 2)
        for x, X in zip(a, A):
            nu *= ctx.power(X, x - ctx.mpf(0.5))
        for x, X in zip(b, B):
            nu *= ctx.power(X, ctx.mpf(0.5) - x)
        self.nu = nu
        self._stirling_param = self.theta + self.mu_sigma

        self._cap = -1
        self._bern: dict[str, list] = {}
        self.q: list = []
        self.q_theta: list = []
        self.l: list = [ctx.one]
        self.l_theta: list = [ctx.one]
        self.v: list = []
        self._row = [ctx.one]
        self._gratio = ctx.rgamma(self.mu_sigma)  # (c)_n / Gamma(n + mu_sigma)
        self.loss = 0.0

    # -- growth -------------------------------------------------------------

    def _grow_bernoulli(self, m: int) -> None:
        if m <= self._cap:
            return
        cap = max(64, 2 * self._cap, m)
        ctx = self.ctx
        pts = {f"a{k}": x for k, x in enumerate(self._a)}
        pts.update({f"b{j}": x for j, x in enumerate(self._b)})
        pts["sigma"] = ctx.mpf(self.sigma)
        pts["tm"] = self.theta + self.mu_sigma
        pts["t1"] = ctx.mpf(self.theta) + 1
        self._bern = {key: bernoulli_values(x, cap, ctx) for key, x in pts.items()}
        self._cap = cap

    def _extend_q(self, m: int) -> None:
        ctx = self.ctx
        self._grow_bernoulli(m + 1)
        bern = self._bern
        while len(self.q) < m:
            k = len(self.q) + 1
            s = ctx.fsum(bern[f"a{i}"][k + 1] / self._A[i] ** k for i in range(len(self._a)))
            s -= ctx.fsum(bern[f"b{j}"][k + 1] / self._B[j] ** k for j in range(len(self._b)))
            s -= bern["sigma"][k + 1]
            sign = 1 if k % 2 else -1
            self.q.append(sign * s / (k + 1))
            self.q_theta.append(sign * (s + bern["tm"][k + 1] - bern["t1"][k + 1]) / (k + 1))

    def _extend_l(self, r: int) -> None:
        ctx = self.ctx
        self._extend_q(r)
        for seq, qs in ((self.l, self.q), (self.l_theta, self.q_theta)):
            while len(seq) <= r:
                k = len(seq)
                terms = [qs[m - 1] * seq[k - m] for m in range(1, k + 1)]
                s = ctx.fsum(terms)
                val = s / k
                self.loss = max(self.loss, _loss(ctx, max(abs(t) for t in terms), s))
                seq.append(val)

    def _extend_v(self, n: int) -> None:
        ctx = self.ctx
        self._extend_l(n)
        c = self._stirling_param
        while len(self.v) <= n:
            k = len(self.v)
            row = self._row  # s_c(k, r) / (c)_k for r = 0..k
            terms = [self.l_theta[r] * row[r] for r in range(k + 1)]
            s = ctx.fsum(terms)
            self.loss = max(self.loss, _loss(ctx, max(abs(t) for t in terms), s))
            self.v.append(self.nu * self._gratio * s)
            ck = c + k
            nxt = [row[0]]
            for r in range(1, k + 1):
                nxt.append(row[r - 1] / ck + row[r])
            nxt.append(row[k] / ck)
            self._row = nxt
            self._gratio = self._gratio * ck / (k + self.mu_sigma)
        self._check_precision()

    def _check_precision(self, extra: float = 0.0) -> None:
        need = self.loss + extra + _GUARD_DIGITS
        if need > self.dps:
            raise _PrecisionShortfall(int(need + 20))

    # -- public accessors ---------------------------------------------------

    def q_at(self, m: int, theta: bool = False):
        if m < 1:
            raise ValueError("m must be >= 1")
        with self._lock:
            self._extend_q(m)
            return (self.q_theta if theta else self.q)[m - 1]

    def l_at(self, r: int, theta: bool = False):
        if r < 0:
            raise ValueError("r must be >= 0")
        with self._lock:
            self._extend_l(r)
            return (self.l_theta if theta else self.l)[r]

    def v_at(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        with self._lock:
            self._extend_v(n)
            return self.v[n]

    def v_upto(self, n: int) -> list:
        with self._lock:
            self._extend_v(n)
            return self.v[: n + 1]

    def v_dual(self, n: int):
        """V_n(theta) through Bernoulli-Norlund polynomials of order n + mu_sigma."""
        ctx = self.ctx
        with self._lock:
            self._extend_l(n)
            nor = norlund_values(n + self.mu_sigma, -ctx.mpf(self.theta), n, ctx)
            terms = []
            for r in range(n + 1):
                k = n - r
                terms.append((-1) ** k * self.l[r] * ctx.rgamma(r + self.mu_sigma) * nor[k] / ctx.factorial(k))
            return self.nu * ctx.fsum(terms)

    # -- tail sums ----------------------------------------------------------

    def tail_sum(self, weight: Callable[[int], object], start: int, kappa, tol: float,
                 weights_by_recurrence: Optional[Callable[[int, object], object]] = None) -> TailSum:
        """sum_{n >= start} V_n * weight(n), where weight(n) ~ n^-kappa.

        ``weights_by_recurrence(n, w_prev)`` may supply w_n from w_{n-1} to
        avoid recomputing gamma ratios.
        """
        ctx = self.ctx
        shift = kappa - 1 - self.theta
        basis = asymptotic_basis(self.ps, shift=complex(shift))
        K = len(basis)
        n_len = 64
        while True:
            top = start + n_len
            v = self.v_upto(top)
            partial = [ctx.zero]
            w = None
            tmax = ctx.zero
            for n in range(start, top + 1):
                w = weight(n) if (w is None or weights_by_recurrence is None) else weights_by_recurrence(n, w)
                t = v[n] * w
                tmax = max(tmax, abs(t))
                partial.append(partial[-1] + t)
            # partial[i] = sum over the first i terms
            lam0 = basis[0][0].real
            last = abs(v[top] * w)
            if lam0 > 1:
                # algebraic tail bound |t_N| N / (lam - 1), padded for log factors
                bound = float(last) * n_len / (lam0 - 1) * 4
                if bound <= 0.1 * tol * float(max(abs(partial[-1]), 1)):
                    self.loss = max(self.loss, _loss(ctx, tmax, partial[-1]))
                    self._check_precision()
                    return TailSum(partial[-1], bound, top)
            est1 = self._fit(partial, basis, n_len // 2, n_len)
            est2 = self._fit(partial, basis, 3 * n_len // 8, 3 * n_len // 4)
            err = abs(est1 - est2)
            value = est1
            scale = max(abs(value), 1)
            loss = _loss(ctx, tmax, value)
            floor = float(10 ** (loss + 5 - self.dps)) * float(scale)
            err = float(err) + floor
            self.loss = max(self.loss, loss)
            self._check_precision()
            if err <= tol * float(scale):
                return TailSum(value, err, top)
            if start + 2 * n_len > V_CAP or 2 * n_len > max_terms():
                raise ToleranceError(f"tail sum not certified to {tol:g}: estimate {err:.3g} "
                                     f"after {top} terms")
            n_len *= 2

    def _fit(self, partial: list, basis: list, lo: int, hi: int):
        ctx = self.ctx
        K = len(basis)
        idx = sorted({lo + round((hi - lo) * i / K) for i in range(K + 1)})
        if len(idx) < K + 1:
            raise ValueError("fit window too narrow")
        with ctx.extradps(30):
            rows = []
            for N in idx:
                logN = ctx.log(N)
                row = [ctx.one]
                for lam, ell in basis:
                    row.append(ctx.power(ctx.mpf(N) / lo, -_num(ctx, lam)) * logN ** ell)
                row.append(partial[N])
                rows.append(row)
            out = _solve_first(rows)
        return +out

    # -- singular expansion coefficients -----------------------------------

    def _require_noninteger_mu(self) -> None:
        if integer_mu(self.ps) is not None:
            raise IntegerMuError(f"mu = {self.ps.mu} is an integer; use the logarithmic expansion")

    def R(self, m: int):
        """R_m (theta-form of the coefficient; equals the theta = 0 form)."""
        self._require_noninteger_mu()
        ctx = self.ctx
        mu, th, sig = self.mu, self.theta, self.sigma
        with self._lock:
            v = self.v_upto(m)
            terms = [(-1) ** n * v[n] * ctx.rgamma(n + mu + th + 1) / ctx.factorial(m - n) for n in range(m + 1)]
            s = ctx.fsum(terms)
            self.loss = max(self.loss, _loss(ctx, max(abs(t) for t in terms), s))
            self._check_precision()
            pref = -ctx.pi * ctx.gamma(m + mu + sig) * ctx.gamma(m + mu + th + 1) * ctx.rgamma(m + mu + 1)
            return pref / ctx.sinpi(mu) * s

    def W(self, m: int, tol: float = DEFAULT_TOL) -> TailSum:
        """W_m with a certified tail; theta-form reduces to the theta = 0 formula."""
        self._require_noninteger_mu()
        ctx = self.ctx
        mu, th, sig = self.mu, self.theta, self.sigma

        def weight(n):
            return ctx.gamma(mu + n - m) * ctx.rgamma(n + mu + th + 1)

        def step(n, w):
            return w * (mu + n - 1 - m) / (n + mu + th)

        pref = ctx.gamma(m + sig) * ctx.gamma(m + th + 1) / ctx.factorial(m) * (-1) ** m
        inner_tol = tol / max(1.0, float(abs(pref)))
        ts = self.tail_sum(weight, 0, m + 1 + th, inner_tol, step)
        return TailSum(pref * ts.value, float(abs(pref)) * ts.err, ts.terms)

    def at_rho_sum(self, tol: float) -> TailSum:
        """Gamma(sigma) sum_n V_n(0) / (mu + n)."""
        ctx = self.ctx
        mu = self.mu
        ts = self.tail_sum(lambda n: 1 / (mu + n), 0, 1, tol / max(1.0, math.gamma(self.sigma)))
        g = ctx.gamma(self.sigma)
        return TailSum(g * ts.value, float(g) * ts.err, ts.terms)


# ---------------------------------------------------------------------------
# table cache and precision control
# ---------------------------------------------------------------------------

_TABLES: dict[tuple, CoefficientTable] = {}
_TABLES_LOCK = threading.Lock()


def get_table(ps: ParameterSet, sigma: float, theta: float = 0.0, dps: int = DEFAULT_DPS) -> CoefficientTable:
    key = (ps, float(sigma), float(theta))
    with _TABLES_LOCK:
        t = _TABLES.get(key)
        if t is None or t.dps < dps:
            t = CoefficientTable(ps, sigma, theta, dps)
            _TABLES[key] = t
        return t


def clear_cache() -> None:
    with _TABLES_LOCK:
        _TABLES.clear()


def with_table(ps: ParameterSet, sigma: float, theta: float, fn: Callable[[CoefficientTable], object]):
    """Run ``fn(table)``, rebuilding the table at higher precision on cancellation."""
    dps = DEFAULT_DPS
    for _ in range(8):
        table = get_table(ps, sigma, theta, dps)
        try:
            return fn(table)
        except _PrecisionShortfall as e:
            dps = max(e.dps, table.dps + 20)
    raise ToleranceError("working precision could not be raised far enough")


def _prepare(ps: ParameterSet, sigma: Optional[float], need_scales: bool = True) -> float:
    if need_scales:
        ps.require_scales()
    return choose_sigma(ps, sigma)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def q_m(ps: ParameterSet, sigma: float, m: int, theta: Optional[float] = None) -> complex:
    """q_m (or q_m^theta when ``theta`` is given)."""
    th = 0.0 if theta is None else theta
    return complex(with_table(ps, sigma, th, lambda t: t.q_at(m, theta=theta is not None)))


def l_r(ps: ParameterSet, sigma: float, r: int) -> complex:
    return complex(with_table(ps, sigma, 0.0, lambda t: t.l_at(r)))


def l_r_theta(ps: ParameterSet, sigma: float, theta: float, r: int) -> complex:
    return complex(with_table(ps, sigma, theta, lambda t: t.l_at(r, theta=True)))


def v_n(ps: ParameterSet, sigma: float, theta: float, n: int) -> complex:
    """V_n(theta) by the Stirling-number form."""
    ps.require_scales()
    _check_mu_sigma(ps, sigma)
    return complex(with_table(ps, sigma, theta, lambda t: t.v_at(n)))


def v_n_dual(ps: ParameterSet, sigma: float, theta: float, n: int) -> complex:
    """V_n(theta) by the Bernoulli-Norlund form."""
    ps.require_scales()
    _check_mu_sigma(ps, sigma)
    return complex(with_table(ps, sigma, theta, lambda t: t.v_dual(n)))


def _check_mu_sigma(ps: ParameterSet, sigma: float) -> None:
    choose_sigma(ps, sigma)


def coeff_R(ps: ParameterSet, sigma: float, m: int, theta: float = 0.0) -> complex:
    ps.require_scales()
    _check_mu_sigma(ps, sigma)
    return complex(with_table(ps, sigma, theta, lambda t: t.R(m)))


def coeff_W(ps: ParameterSet, sigma: float, m: int, tol: float = DEFAULT_TOL, theta: float = 0.0) -> complex:
    ps.require_scales()
    _check_mu_sigma(ps, sigma)
    return complex(with_table(ps, sigma, theta, lambda t: t.W(m, tol)).value)


def h_series(ps: ParameterSet, sigma: float, theta: float, t: complex, tol: float = DEFAULT_TOL) -> complex:
    """H^{p,0}_{q+1,p}(t/rho) by its expansion in powers of (1 - t), |1 - t| < 1."""
    return h_series_result(ps, sigma, theta, t, tol)[0]


def h_series_result(ps: ParameterSet, sigma: float, theta: float, t: complex, tol: float = DEFAULT_TOL):
    """(value, error estimate, terms) for :func:`h_series`."""
    ps.require_scales()
    _check_mu_sigma(ps, sigma)
    t = complex(t)
    u = 1 - t
    if abs(u) >= 1:
        raise DomainError(f"|1 - t| = {abs(u):.6g} must be < 1")

    def run(table: CoefficientTable):
        ctx = table.ctx
        uu = _num(ctx, u)
        r = abs(uu)
        cap = min(max_terms(), 4 * V_CAP)
        acc = ctx.zero
        powu = ctx.one
        n = 0
        small = 0
        while True:
            vn = table.v_at(n)
            term = vn * powu
            acc += term
            # geometric tail with the slowly varying |V_n| frozen
            tail = abs(vn) * r ** (n + 1) / (1 - r) if n > 0 else ctx.inf
            if n >= 8 and tail <= tol * max(1, abs(acc)):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            n += 1
            if n > cap:
                raise ToleranceError(f"h_series needs more than {cap} terms at |1-t|={float(r):.4g}")
            powu *= uu
        tt = _num(ctx, t)
        pref = ctx.power(tt, table.theta + 1) * ctx.power(uu, table.mu_sigma - 1) if uu != 0 else None
        if pref is None:
            val = ctx.zero if ctx.re(table.mu_sigma) > 1 else (acc if table.mu_sigma == 1 else ctx.inf)
        else:
            val = pref * acc
        errv = float(tail) * (float(abs(pref)) if pref is not None else 0.0)
        return complex(val), errv, n + 1

    return with_table(ps, sigma, theta, run)


# ---------------------------------------------------------------------------
# logarithmic cases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogCoefficient:
    """Coefficients of (1-z)^power * log(1-z) and of (1-z)^power."""

    power: int
    log_part: complex
    regular: complex
    err: float = 0.0


def _log_coeff(table: CoefficientTable, mu_int: int, j: int, tol: float) -> tuple:
    ctx = table.ctx
    sig = ctx.mpf(table.sigma)
    ps = table.ps
    if mu_int >= 0:
        M = mu_int
        if j < -M:
            raise ValueError(f"j must be >= {-M}")
        g = ctx.gamma(table.mu_sigma + j)
        log_part = ctx.zero
        reg = ctx.zero
        if j >= 0:
            v = table.v_upto(j)
            ls, rs = [], []
            for n in range(j + 1):
                m = j - n
                c = (-1) ** (M + n) * v[n] / (ctx.factorial(M + n) * ctx.factorial(m))
                h = ctx.digamma(m + 1) - ctx.digamma(m + n + M + sig)
                ls.append(c)
                rs.append(c * h)
            log_part = -g * ctx.fsum(ls)
            reg = g * ctx.fsum(rs)
        start = max(0, j + 1)
        length = M + j + 1

        def weight(n):
            return 1 / ctx.rf(-M - n, length)

        def step(n, w):
            # (-M-n)_L / (-M-n+1)_L = (-M-n) / (-M-n+L)
            return w * (-M - n + length) / (-M - n)

        ts = table.tail_sum(weight, start, length, tol / max(1.0, float(abs(g))), step)
        reg -= g * ts.value
        return M + j, log_part, reg, float(abs(g)) * ts.err
    # mu < 0
    M = -mu_int
    if table.sigma <= M:
        raise SigmaError(f"sigma = {table.sigma} must exceed -mu = {M}")
    if j < mu_int:
        raise ValueError(f"j must be >= {mu_int}")
    g = ctx.gamma(sig + j)
    if j < 0:
        v = table.v_upto(j + M)
        terms = [v[n] * ctx.factorial(M - n - 1) / ctx.factorial(M - n + j) for n in range(j + M + 1)]
        return j, ctx.zero, g * ctx.fsum(terms), 0.0
    v = table.v_upto(j + M)
    ls, rs = [], []
    for n in range(j + 1):
        m = j - n
        c = (-1) ** n * v[n + M] / (ctx.factorial(n) * ctx.factorial(m))
        h = ctx.digamma(m + 1) - ctx.digamma(m + n + sig)
        ls.append(c)
        rs.append(c * h)
    log_part = -g * ctx.fsum(ls)
    reg = g * ctx.fsum(rs)
    length = j + 1

    # sum_{n >= j+1} V_{n+M} / (-n)_{j+1}, reindexed on k = n + M
    def weight(k):
        return 1 / ctx.rf(-(k - M), length)

    def step(k, w):
        n = k - M
        return w * (-n + length) / (-n)

    ts = table.tail_sum(weight, j + 1 + M, length, tol / max(1.0, float(abs(g))), step)
    reg -= g * ts.value
    return j, log_part, reg, float(abs(g)) * ts.err


def log_case_coeffs(ps: ParameterSet, sigma: float, j: int, tol: float = DEFAULT_TOL) -> LogCoefficient:
    """Index-j coefficients of the expansion for integer mu.

    For mu >= 0 the term is (1-z)^(mu+j) [log_part*log(1-z) + regular], j >= -mu;
    for mu < 0 it is (1-z)^j [...], j >= mu.
    """
    ps.require_scales()
    mu_int = integer_mu(ps)
    if mu_int is None:
        raise DomainError(f"mu = {ps.mu} is not an integer")
    if mu_int < 0 and sigma <= -mu_int:
        raise SigmaError(f"sigma = {sigma} must exceed -mu = {-mu_int}")
    _check_mu_sigma(ps, sigma)
    power, lp, rg, err = with_table(ps, sigma, 0.0, lambda t: _log_coeff(t, mu_int, j, tol))
    return LogCoefficient(power, complex(lp), complex(rg), err)


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


def growth_constants(ps: ParameterSet, sigma: Optional[float] = None, ns=range(50, 201)) -> list[float]:
    """C(n) = |V_n(0)| n^alpha / (log n)^(r-1) for each n in ``ns``.

    Bounded C(n) is the algebraic decay bound on V_n; r is the multiplicity of
    the poles with real part -alpha.
    """
    ps.require_scales()
    sig = choose_sigma(ps, sigma)
    r = pole_multiplicity(ps)
    alpha = ps.alpha
    ns = list(ns)
    v = with_table(ps, sig, 0.0, lambda t: [complex(x) for x in t.v_upto(max(ns))])
    return [abs(v[n]) * n ** alpha / math.log(n) ** (r - 1) for n in ns]


def w_radius_estimate(ps: ParameterSet, sigma: Optional[float] = None, m_max: int = 60,
                      tol: float = 1e-8) -> float:
    """Root-test estimate of the radius of convergence of sum_m W_m (1 - z)^m.

    Fits log|W_m| against m over the upper two thirds of 0..m_max; the radius
    is exp(-slope).
    """
    ps.require_scales()
    if integer_mu(ps) is not None:
        raise IntegerMuError("W_m is defined for non-integer mu only")
    sig = choose_sigma(ps, sigma)
    ws = with_table(ps, sig, 0.0, lambda t: [complex(t.W(m, tol).value) for m in range(m_max + 1)])
    pts = [(m, math.log(abs(w))) for m, w in enumerate(ws) if m >= m_max // 3 and w != 0]
    if len(pts) < 2:
        return math.inf
    mbar = sum(m for m, _ in pts) / len(pts)
    ybar = sum(y for _, y in pts) / len(pts)
    slope = sum((m - mbar) * (y - ybar) for m, y in pts) / sum((m - mbar) ** 2 for m, _ in pts)
    return math.exp(-slope)
