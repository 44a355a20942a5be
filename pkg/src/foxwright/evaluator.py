"""Region-dispatched evaluation of pPsi_q(z) and its values on the cut.

All routines accept the unscaled argument z except :func:`eval_singular_expansion`,
whose argument w is scaled (the function evaluated is pPsi_q(rho*w)).

Tolerance semantics: a result is accepted when its error estimate is at most
``tol * max(1, |value|)``; ``err_estimate`` is absolute.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import mpmath

from . import engine
from .engine import DEFAULT_TOL, INT_MU_TOL, MU_WARN_TOL, CoefficientTable, integer_mu, max_terms, with_table
from .errors import CutError, DomainError, IntegerMuError, PoleCollisionError, ScaleError, ToleranceError
from .params import SCALE_FLOOR, ParameterSet, choose_sigma

SINGULAR_RADIUS = 0.4
INNER_RADIUS = 0.95
OUTER_RADIUS = 1.05
_BASE_DPS = 30

REPRESENTATIONS = ("maclaurin", "residue", "singular", "singular-log", "at-rho")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    representation: str
    terms_used: int
    err_estimate: float


@dataclass(frozen=True)
class CutValues:
    x: float
    jump: complex
    average: complex


def _scale(value) -> float:
    return max(1.0, abs(complex(value)))


def _mp(ctx, x):
    x = complex(x)
    return ctx.mpf(x.real) if x.imag == 0 else ctx.mpc(x.real, x.imag)


def _retrying(fn, dps: int = _BASE_DPS):
    """Run fn(ctx) and repeat at higher precision when it reports cancellation."""
    for _ in range(6):
        ctx = mpmath.MPContext()
        ctx.dps = dps
        out, loss = fn(ctx)
        if loss + 18 <= dps:
            return out
        dps = int(loss + 30)
    raise ToleranceError("cancellation exceeds the precision budget")


def _on_cut(ps: ParameterSet, z: complex) -> bool:
    return z.imag == 0 and z.real >= ps.rho


# ---------------------------------------------------------------------------
# power series at the origin
# ---------------------------------------------------------------------------


def eval_maclaurin(ps: ParameterSet, z, tol: float = DEFAULT_TOL) -> EvalResult:
    """Partial sums of sum_n prod Gamma(a+A n)/prod Gamma(b+B n) z^n/n!."""
    z = complex(z)
    rho = ps.rho
    r = abs(z) / rho
    boundary = abs(r - 1) < 1e-14
    if r > 1 and not boundary:
        raise DomainError(f"|z| = {abs(z):.6g} exceeds the radius rho = {rho:.6g}")
    if boundary and ps.mu.real <= 0:
        raise DomainError("on |z| = rho the power series needs Re(mu) > 0")
    cap = max_terms()

    def run(ctx):
        zz = _mp(ctx, z)
        a = [_mp(ctx, x) for x in ps.a]
        b = [_mp(ctx, x) for x in ps.b]
        acc = ctx.zero
        tmax = ctx.zero
        logz = ctx.log(zz) if z != 0 else None
        n = 0
        prev = None
        while True:
            lt = -ctx.loggamma(n + 1)
            for x, X in zip(a, ps.A):
                lt += ctx.loggamma(x + X * n)
            rg = ctx.one
            for x, X in zip(b, ps.B):
                rg *= ctx.rgamma(x + X * n)
            if n == 0:
                term = ctx.exp(lt) * rg
            elif logz is None:
                term = ctx.zero
            else:
                term = ctx.exp(lt + n * logz) * rg
            acc += term
            at = abs(term)
            tmax = max(tmax, at)
            if z == 0:
                return (complex(acc), 1, 0.0), 0.0
            if n >= 4 and prev is not None and prev != 0:
                qn = max(float(at / prev), r)
                if qn < 1:
                    tail = float(at) * qn / (1 - qn)
                else:
                    # |z| = rho: terms ~ n^(-Re mu - 1)
                    tail = float(at) * n / max(ps.mu.real, 1e-300)
                if tail <= tol * _scale(acc):
                    return (complex(acc), n + 1, tail), engine._loss(ctx, tmax, acc)
            prev = at if at != 0 else prev
            n += 1
            if n > cap:
                raise ToleranceError(f"power series needs more than {cap} terms at |z/rho| = {r:.6g}")

    value, terms, err = _retrying(run)
    return EvalResult(value, "maclaurin", terms, err)


# ---------------------------------------------------------------------------
# residue series at infinity
# ---------------------------------------------------------------------------


def _collision(ps: ParameterSet, k: int, u) -> None:
    for i, (ai, Ai) in enumerate(zip(ps.a, ps.A)):
        if i == k:
            continue
        d = complex(ai) - Ai * complex(u)
        m = round(-d.real)
        if m >= 0 and abs(d + m) < engine.COLLISION_TOL * Ai:
            raise PoleCollisionError(
                f"pole families {k} and {i} share the exponent {complex(u):.12g}; residue series needs simple poles")


def _residue_terms(ctx, ps: ParameterSet, k: int, n: int):
    """(u, D_{n,k}) with u = (a_k + n)/A_k."""
    ak = _mp(ctx, ps.a[k])
    Ak = ctx.mpf(ps.A[k])
    u = (ak + n) / Ak
    _collision(ps, k, u)
    d = ctx.one
    for i, (ai, Ai) in enumerate(zip(ps.a, ps.A)):
        if i != k:
            d *= ctx.gamma(_mp(ctx, ai) - Ai * u)
    for bj, Bj in zip(ps.b, ps.B):
        d *= ctx.rgamma(_mp(ctx, bj) - Bj * u)
    d *= (-1) ** n / (Ak * ctx.factorial(n))
    return u, d


def _residue_sum(ps: ParameterSet, kernel, ratio: float, tol: float, what: str):
    """Sum kernel(ctx, u, D) over all (k, n) with per-family geometric tail control.

    ``ratio`` is rho/|z|; family k decays roughly like ratio^(n/A_k).
    """
    cap = max_terms()

    def run(ctx):
        total = ctx.zero
        tmax = ctx.zero
        terms = 0
        err = 0.0
        for k in range(ps.p):
            q = ratio ** (1.0 / ps.A[k])
            part = ctx.zero
            n = 0
            quiet = 0
            prev = None
            while True:
                u, d = _residue_terms(ctx, ps, k, n)
                t = kernel(ctx, u, d)
                part += t
                at = abs(t)
                tmax = max(tmax, at)
                terms += 1
                qq = q
                if prev is not None and prev != 0:
                    qq = max(q, min(float(at / prev), 0.999999))
                tail = float(at) * qq / (1 - qq) if qq < 1 else math.inf
                if n >= 4 and tail <= 0.1 * tol * _scale(part):
                    quiet += 1
                    if quiet >= 2:
                        err += tail
                        break
                else:
                    quiet = 0
                prev = at if at != 0 else prev
                n += 1
                if n > cap:
                    raise ToleranceError(f"{what} needs more than {cap} terms")
            total += part
        return (total, terms, err), engine._loss(ctx, tmax, total)

    total, terms, err = _retrying(run)
    return complex(total), terms, err


def eval_residue_series(ps: ParameterSet, z, tol: float = DEFAULT_TOL) -> EvalResult:
    """Sum of residues of the Mellin-Barnes integrand; valid for |z| > rho."""
    z = complex(z)
    rho = ps.rho
    if _on_cut(ps, z):
        raise CutError(f"z = {z} lies on the branch cut [rho, inf)")
    if abs(z) <= rho and not (abs(abs(z) - rho) < 1e-14 and ps.mu.real > 0):
        raise DomainError(f"|z| = {abs(z):.6g} must exceed rho = {rho:.6g}")
    logmz = cmath.log(-z)

    def kernel(ctx, u, d):
        return d * ctx.gamma(u) * ctx.exp(-u * _mp(ctx, logmz))

    value, terms, err = _residue_sum(ps, kernel, rho / abs(z), tol, "residue series")
    return EvalResult(value, "residue", terms, err)


# ---------------------------------------------------------------------------
# expansions at the singular point
# ---------------------------------------------------------------------------


def _singular_nonint(table: CoefficientTable, w: complex, tol: float):
    ctx = table.ctx
    u = _mp(ctx, 1 - w)
    au = abs(u)
    upow = ctx.power(u, table.mu)
    cap = min(max_terms(), 400)
    W0 = table.W(0, tol)
    R0 = table.R(0)
    scale = max(1.0, float(abs(W0.value)), float(abs(R0 * upow)))
    acc_r = R0
    acc_w = W0.value
    err = W0.err
    hist = [float(abs(R0 * upow)) + float(abs(W0.value))]
    pw = ctx.one
    m = 0
    while True:
        m += 1
        if m > cap:
            raise ToleranceError(f"singular expansion needs more than {cap} terms at |1-w| = {float(au):.4g}")
        pw *= u
        apw = float(abs(pw))
        tol_m = 0.01 * tol * scale / max(apw, 1e-300)
        Wm = table.W(m, tol_m)
        Rm = table.R(m)
        acc_r += Rm * pw
        acc_w += Wm.value * pw
        err += Wm.err * apw
        hist.append(float(abs(Rm * pw * upow)) + float(abs(Wm.value)) * apw)
        if m >= 6:
            recent = max(hist[-3:])
            older = max(hist[-6:-3])
            q = (recent / older) ** (1 / 3) if older > 0 else 0.0
            if q < 1:
                tail = recent * q / (1 - q)
                if tail <= 0.1 * tol * scale:
                    val = upow * acc_r + acc_w
                    return complex(val), m + 1, err + tail


def _singular_log(table: CoefficientTable, w: complex, mu_int: int, tol: float):
    ctx = table.ctx
    u = _mp(ctx, 1 - w)
    lu = ctx.log(u)
    cap = min(max_terms(), 400)
    j = -mu_int if mu_int >= 0 else mu_int
    acc = ctx.zero
    err = 0.0
    scale = 1.0
    hist: list[float] = []
    count = 0
    while True:
        if count > cap:
            raise ToleranceError(f"logarithmic expansion needs more than {cap} terms")
        power = mu_int + j if mu_int >= 0 else j
        up = ctx.power(u, power)
        aup = float(abs(up))
        tol_j = 0.01 * tol * scale / max(aup, 1e-300)
        _, lp, rg, e = engine._log_coeff(table, mu_int, j, tol_j)
        term = up * (lp * lu + rg)
        acc += term
        err += e * aup
        if count == 0 or power <= 0:
            scale = max(scale, float(abs(acc)))
        hist.append(float(abs(term)))
        count += 1
        j += 1
        if power >= 1 and len(hist) >= 6:
            recent = max(hist[-3:])
            older = max(hist[-6:-3])
            q = (recent / older) ** (1 / 3) if older > 0 else 0.0
            if q < 1:
                tail = recent * q / (1 - q)
                if tail <= 0.1 * tol * max(scale, float(abs(acc))):
                    return complex(acc), count, err + tail


def eval_singular_expansion(ps: ParameterSet, w, sigma: Optional[float] = None,
                            tol: float = DEFAULT_TOL) -> EvalResult:
    """pPsi_q(rho*w) from the expansion in powers of (1 - w); needs |1 - w| < 1/2."""
    w = complex(w)
    ps.require_scales()
    if abs(1 - w) >= 0.5:
        raise DomainError(f"|1 - w| = {abs(1 - w):.6g} must be < 1/2")
    if w.imag == 0 and w.real >= 1:
        raise CutError(f"w = {w} lies on the branch cut [1, inf)")
    mu_int = integer_mu(ps)
    if mu_int is not None:
        if mu_int < 0 and sigma is None:
            sigma = float(-mu_int + 1)
        sig = choose_sigma(ps, sigma)
        if mu_int < 0 and sig <= -mu_int:
            from .errors import SigmaError
            raise SigmaError(f"sigma = {sig} must exceed -mu = {-mu_int}")
        value, terms, err = with_table(ps, sig, 0.0, lambda t: _singular_log(t, w, mu_int, tol))
        return EvalResult(value, "singular-log", terms, err)
    dist = abs(ps.mu - round(ps.mu.real))
    if dist < MU_WARN_TOL:
        warnings.warn(f"mu is within {dist:.2g} of an integer; expect cancellation", RuntimeWarning, stacklevel=2)
    sig = choose_sigma(ps, sigma)
    value, terms, err = with_table(ps, sig, 0.0, lambda t: _singular_nonint(t, w, tol))
    return EvalResult(value, "singular", terms, err)


def eval_at_rho(ps: ParameterSet, sigma: Optional[float] = None, tol: float = DEFAULT_TOL) -> EvalResult:
    """Gamma(sigma) sum_n V_n(0)/(mu + n); the value at z = rho (continued in mu)."""
    ps.require_scales()
    m = ps.mu
    k = round(m.real)
    if k <= 0 and abs(m - k) < INT_MU_TOL:
        raise IntegerMuError(f"mu = {m} is a non-positive integer; the sum has a pole")
    sig = choose_sigma(ps, sigma)
    if sig <= max(-m.real, 0.0):
        from .errors import SigmaError
        raise SigmaError(f"sigma = {sig} must exceed max(-Re mu, 0)")
    ts = with_table(ps, sig, 0.0, lambda t: t.at_rho_sum(tol))
    return EvalResult(complex(ts.value), "at-rho", ts.terms, ts.err)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def eval_auto(ps: ParameterSet, z, tol: float = DEFAULT_TOL) -> EvalResult:
    """Choose a representation by region and evaluate pPsi_q(z)."""
    z = complex(z)
    if _on_cut(ps, z):
        raise CutError(f"z = {z} lies on the branch cut [rho, inf)")
    rho = ps.rho
    w = z / rho
    singular_ok = ps.min_scale > SCALE_FLOOR
    if singular_ok and abs(1 - w) < SINGULAR_RADIUS:
        return eval_singular_expansion(ps, w, None, tol)
    if abs(w) < INNER_RADIUS:
        return eval_maclaurin(ps, z, tol)
    if abs(w) > OUTER_RADIUS:
        return eval_residue_series(ps, z, tol)
    # annulus: every representation that converges here, averaged
    cands = []
    if singular_ok and abs(1 - w) < 0.5:
        cands.append(lambda: eval_singular_expansion(ps, w, None, tol))
    if abs(w) < 1 or ps.mu.real > 0 and abs(w) <= 1:
        cands.append(lambda: eval_maclaurin(ps, z, tol))
    if abs(w) > 1 or ps.mu.real > 0 and abs(w) >= 1:
        cands.append(lambda: eval_residue_series(ps, z, tol))
    results = []
    failure: Optional[Exception] = None
    for c in cands:
        try:
            results.append(c())
        except (ToleranceError, PoleCollisionError, ScaleError) as exc:
            failure = exc
    if not results:
        if failure is not None:
            raise failure
        raise DomainError(f"no representation converges at z = {z}")
    if len(results) == 1:
        return results[0]
    vals = [r.value for r in results]
    mean = sum(vals) / len(vals)
    spread = max(abs(v - mean) for v in vals)
    err = max(r.err_estimate for r in results) + spread
    return EvalResult(mean, results[0].representation, sum(r.terms_used for r in results), err)


# ---------------------------------------------------------------------------
# the cut [rho, inf)
# ---------------------------------------------------------------------------


def _cut_prepare(ps: ParameterSet, x: float) -> float:
    x = float(x)
    if not ps.is_real:
        raise DomainError("cut values need real parameter vectors a, b")
    if not x > ps.rho:
        raise DomainError(f"x = {x} must exceed rho = {ps.rho:.6g}")
    return x


def jump_on_cut(ps: ParameterSet, x: float, tol: float = DEFAULT_TOL) -> complex:
    """pPsi_q(x + i0) - pPsi_q(x - i0) for x > rho."""
    x = _cut_prepare(ps, x)
    lx = math.log(x)

    def kernel(ctx, u, d):
        return 2j * ctx.pi * d * ctx.exp(-u * lx) * ctx.rgamma(1 - u)

    value, _, _ = _residue_sum(ps, kernel, ps.rho / x, tol, "jump series")
    return complex(0.0, value.imag) if ps.is_real else value


def average_on_cut(ps: ParameterSet, x: float, tol: float = DEFAULT_TOL) -> complex:
    """(pPsi_q(x + i0) + pPsi_q(x - i0)) / 2 for x > rho."""
    x = _cut_prepare(ps, x)
    lx = math.log(x)

    def kernel(ctx, u, d):
        return -ctx.pi * d * ctx.gamma(u) * ctx.exp(-u * lx) * ctx.rgamma(ctx.mpf(1.5) - u) * ctx.rgamma(u - 0.5)

    value, _, _ = _residue_sum(ps, kernel, ps.rho / x, tol, "average series")
    return complex(value.real, 0.0) if ps.is_real else value


def cut_values(ps: ParameterSet, x: float, tol: float = DEFAULT_TOL) -> CutValues:
    return CutValues(float(x), jump_on_cut(ps, x, tol), average_on_cut(ps, x, tol))
