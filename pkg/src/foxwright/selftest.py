"""Invariant battery behind ``foxwright selftest``."""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import mpmath

from . import engine
from .errors import FoxWrightError, PoleCollisionError
from .evaluator import (
    eval_auto,
    eval_maclaurin,
    eval_residue_series,
    eval_singular_expansion,
    jump_on_cut,
)
from .kernels import bell_complete, nair_determinant
from .params import ParameterSet, choose_sigma, validate


@dataclass(frozen=True)
class CheckResult:
    name: str
    label: str
    error: float
    limit: float
    skipped: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.skipped or self.error <= self.limit

    @property
    def margin(self) -> float:
        """limit / error; values above 1 pass."""
        if self.skipped:
            return math.inf
        return self.limit / self.error if self.error > 0 else math.inf


BUILTIN_SETS: dict[str, tuple] = {
    "gauss": ((0.5, 0.7), (1, 1), (1.3,), (1,)),
    "half-scales": ((1.0, 1.3), (0.5, 0.5), (), ()),
    "p3q2": ((0.9, 1.2, 0.7), (1, 1, 1), (1.5, 1.9), (1, 1)),
}


def random_sets(seed: int, count: int) -> dict[str, tuple]:
    """Deterministic random p=2, q=1 sets with non-unit scales."""
    rng = random.Random(seed)
    out = {}
    while len(out) < count:
        A1, A2 = rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5)
        B1 = A1 + A2 - 1
        if B1 <= 0.25:
            continue
        a = (round(rng.uniform(0.2, 1.5), 6), round(rng.uniform(0.2, 1.5), 6))
        b = (round(rng.uniform(0.5, 2.5), 6),)
        out[f"random-{seed}-{len(out)}"] = (a, (A1, A2), b, (B1,))
    return out


def _rel(x, y) -> float:
    return abs(complex(x) - complex(y)) / max(1.0, abs(complex(y)))


def check_l_triple(ps: ParameterSet, r_max: int = 12) -> float:
    sig = choose_sigma(ps)

    def run(t):
        ctx = t.ctx
        q = [t.q_at(m) for m in range(1, r_max + 1)]
        worst = 0.0
        for r in range(1, r_max + 1):
            rec = t.l_at(r)
            bell = bell_complete([ctx.factorial(m - 1) * q[m - 1] for m in range(1, r + 1)]) / ctx.factorial(r)
            det = nair_determinant(q, r)
            worst = max(worst, _rel(bell, rec), _rel(det, rec))
        return worst

    return engine.with_table(ps, sig, 0.0, run)


def check_v_dual(ps: ParameterSet, n_max: int = 30, theta: float = 0.0) -> float:
    sig = choose_sigma(ps)
    return engine.with_table(
        ps, sig, theta, lambda t: max(_rel(t.v_dual(n), t.v_at(n)) for n in range(n_max + 1)))


def check_theta(ps: ParameterSet, m_max: int = 10, thetas=(0.3, 1.0)) -> float:
    sig = choose_sigma(ps)
    base_r = [engine.coeff_R(ps, sig, m) for m in range(m_max + 1)]
    base_w = [engine.coeff_W(ps, sig, m, 1e-12) for m in range(m_max + 1)]
    worst = 0.0
    for th in thetas:
        for m in range(m_max + 1):
            worst = max(worst, _rel(engine.coeff_R(ps, sig, m, theta=th), base_r[m]))
            worst = max(worst, _rel(engine.coeff_W(ps, sig, m, 1e-12, theta=th), base_w[m]))
    return worst


def _overlap(ps: ParameterSet, first: Callable, w: complex) -> float:
    a = first(ps, ps.rho * w, 1e-12).value
    b = eval_singular_expansion(ps, w, None, 1e-12).value
    return abs(a - b) / abs(b)


def check_schwarz(ps: ParameterSet) -> float:
    worst = 0.0
    for w in (0.5 + 0.5j, 1.1 + 0.2j, -2 + 0.5j):
        z = ps.rho * w
        v1 = eval_auto(ps, z).value
        v2 = eval_auto(ps, z.conjugate()).value
        worst = max(worst, _rel(v2, v1.conjugate()))
    return worst


def check_gauss(ps: ParameterSet) -> float:
    a1, a2 = (x.real for x in ps.a)
    c = ps.b[0].real
    worst = 0.0
    for z in (0.3, 0.9 + 0.2j, -2.0):
        ex = mpmath.gamma(a1) * mpmath.gamma(a2) / mpmath.gamma(c) * mpmath.hyp2f1(a1, a2, c, z)
        worst = max(worst, _rel(eval_auto(ps, z).value, complex(ex)) * max(1.0, abs(complex(ex))) / abs(complex(ex)))
    return worst


def check_jump(ps: ParameterSet) -> float:
    x = 2 * ps.rho
    j = jump_on_cut(ps, x, 1e-12)
    h = engine.h_series(ps, 1.0, 0.0, ps.rho / x, 1e-12)
    return abs(j - 2j * math.pi * h) / max(1.0, abs(j))


def is_gauss(ps: ParameterSet) -> bool:
    return ps.p == 2 and ps.q == 1 and all(x == 1 for x in ps.A + ps.B) and ps.is_real


def run_checks(label: str, ps: ParameterSet) -> list[CheckResult]:
    out: list[CheckResult] = []

    def add(name, fn, limit, skip: Optional[str] = None):
        if skip:
            out.append(CheckResult(name, label, 0.0, limit, True, skip))
            return
        try:
            out.append(CheckResult(name, label, float(fn()), limit))
        except FoxWrightError as exc:
            out.append(CheckResult(name, label, math.inf, limit, note=f"{type(exc).__name__}: {exc}"))

    int_mu = engine.integer_mu(ps) is not None
    add("triple-l_r", lambda: check_l_triple(ps), 1e-12)
    add("dual-V_n", lambda: check_v_dual(ps), 1e-10)
    add("theta-invariance", lambda: check_theta(ps), 1e-9, "integer mu" if int_mu else None)
    add("overlap-maclaurin", lambda: _overlap(ps, eval_maclaurin, 0.7), 1e-8)

    def residue_overlap():
        return max(_overlap(ps, eval_residue_series, w) for w in (1.2 + 0.3j, 1.2 - 0.3j))

    try:
        eval_residue_series(ps, ps.rho * (1.2 + 0.3j), 1e-6)
        collide = None
    except PoleCollisionError:
        collide = "pole collision"
    add("overlap-residue", residue_overlap, 1e-7, collide)
    add("schwarz", lambda: check_schwarz(ps), 1e-12, None if ps.is_real else "complex parameters")
    add("gauss", lambda: check_gauss(ps), 1e-9, None if is_gauss(ps) else "not a Gauss set")
    jump_skip = None
    if not ps.is_real:
        jump_skip = "complex parameters"
    elif ps.mu.real + 1 <= 0:
        jump_skip = "Re(mu) + 1 <= 0"
    elif collide:
        jump_skip = collide
    add("jump-consistency", lambda: check_jump(ps), 1e-7, jump_skip)
    return out


def run_battery(sets: dict[str, tuple]) -> list[CheckResult]:
    results: list[CheckResult] = []
    for label, args in sets.items():
        try:
            ps = validate(*args)
        except FoxWrightError as exc:
            results.append(CheckResult("validation", label, math.inf, 0.0, note=f"{type(exc).__name__}: {exc}"))
            continue
        results.extend(run_checks(label, ps))
    return results


def format_result(r: CheckResult) -> str:
    status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
    line = f"{status} {r.label:<16} {r.name:<18} err={r.error:.3e} limit={r.limit:.1e}"
    if not r.skipped:
        line += f" margin={r.margin:.3g}"
    if r.note:
        line += f" ({r.note})"
    return line


def summarize(results: Iterable[CheckResult]) -> list[CheckResult]:
    return [r for r in results if not r.passed]
