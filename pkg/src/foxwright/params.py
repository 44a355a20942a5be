"""Validated parameter sets and the derived scalars Delta, rho, mu, nu, alpha."""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DeltaError, DomainError, ScaleError, ShapeError, SigmaError

DELTA_TOL = 1e-12
SCALE_FLOOR = 1.0 / 6.0


@dataclass(frozen=True)
class ParameterSet:
    """Top pairs (a_k, A_k) and bottom pairs (b_j, B_j) with Delta = -1.

    Build instances through :func:`validate`; the constructor itself does
    not check anything.
    """

    a: tuple[complex, ...]
    A: tuple[float, ...]
    b: tuple[complex, ...] = ()
    B: tuple[float, ...] = ()

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    @property
    def delta(self) -> float:
        return math.fsum(self.B) - math.fsum(self.A)

    @property
    def rho(self) -> float:
        return radius_rho(self)

    @property
    def mu(self) -> complex:
        return mu(self)

    @property
    def nu(self) -> complex:
        return nu_constant(self)

    @property
    def alpha(self) -> float:
        return min((ak / Ak).real for ak, Ak in zip(self.a, self.A))

    @property
    def is_real(self) -> bool:
        return all(x.imag == 0 for x in self.a + self.b)

    @property
    def min_scale(self) -> float:
        return min(self.A + self.B)

    def require_scales(self) -> None:
        """Raise ScaleError unless every scale exceeds 1/6."""
        if self.min_scale <= SCALE_FLOOR:
            raise ScaleError(f"min scale {self.min_scale} <= 1/6; singular expansions unavailable")


def validate(a: Sequence, A: Sequence, b: Sequence = (), B: Sequence = ()) -> ParameterSet:
    """Check shapes, positivity, Delta = -1 and alpha > 0; return a ParameterSet."""
    a = tuple(complex(x) for x in a)
    b = tuple(complex(x) for x in b)
    A = tuple(float(x) for x in A)
    B = tuple(float(x) for x in B)
    if len(a) < 1:
        raise ShapeError("need p >= 1 top parameters")
    if len(a) != len(A) or len(b) != len(B):
        raise ShapeError(f"length mismatch: |a|={len(a)}, |A|={len(A)}, |b|={len(b)}, |B|={len(B)}")
    if any(not math.isfinite(x) or x <= 0 for x in A + B):
        raise ShapeError("scales must be positive and finite")
    if any(not cmath.isfinite(x) for x in a + b):
        raise ShapeError("parameters must be finite")
    delta = math.fsum(B) - math.fsum(A)
    if abs(delta + 1) > DELTA_TOL:
        raise DeltaError(f"Delta = {delta:.15g}, expected -1")
    ps = ParameterSet(a, A, b, B)
    if ps.alpha <= 0:
        raise DomainError(f"alpha = min Re(a_k/A_k) = {ps.alpha:.15g} must be positive")
    return ps


def radius_rho(ps: ParameterSet) -> float:
    """Radius of convergence prod A_k^-A_k prod B_j^B_j (computed in logs)."""
    s = math.fsum(-Ak * math.log(Ak) for Ak in ps.A) + math.fsum(Bj * math.log(Bj) for Bj in ps.B)
    return math.exp(s)


def mu(ps: ParameterSet) -> complex:
    return sum(ps.b, 0j) - sum(ps.a, 0j) + (ps.p - ps.q - 1) / 2


def mu_sigma(ps: ParameterSet, sigma: float) -> complex:
    return mu(ps) + sigma


def nu_constant(ps: ParameterSet) -> complex:
    """(2 pi)^((p-q-1)/2) prod A_k^(a_k - 1/2) prod B_j^(1/2 - b_j)."""
    log_nu = (ps.p - ps.q - 1) / 2 * math.log(2 * math.pi)
    log_nu += sum(((ak - 0.5) * math.log(Ak) for ak, Ak in zip(ps.a, ps.A)), 0j)
    log_nu += sum(((0.5 - bj) * math.log(Bj) for bj, Bj in zip(ps.b, ps.B)), 0j)
    return cmath.exp(log_nu)


def choose_sigma(ps: ParameterSet, requested: Optional[float] = None) -> float:
    """Pick sigma > 0 with Re(mu) + sigma > 0.

    A requested value is honoured when admissible; the default is
    max(1, ceil(-Re mu) + 1).
    """
    re_mu = mu(ps).real
    if requested is not None:
        requested = float(requested)
        if requested <= 0:
            raise SigmaError(f"sigma = {requested} must be positive")
        if re_mu + requested <= 0:
            raise SigmaError(f"Re(mu + sigma) = {re_mu + requested:.15g} must be positive")
        return requested
    return float(max(1, math.ceil(-re_mu) + 1))


_COMPLEX_RE = re.compile(
    r"""^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?:(?P<sign>[+-])(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?$""",
    re.VERBOSE,
)
_IMAG_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``imi``, ``re+imi`` or ``re-imi`` (no spaces)."""
    text = text.strip()
    pure = _IMAG_RE.match(text)
    if pure:
        return complex(0.0, float(pure.group(1)))
    m = _COMPLEX_RE.match(text)
    if not m:
        raise ValueError(f"bad complex literal {text!r}")
    re_part = float(m.group("re"))
    if m.group("im") is None:
        return complex(re_part, 0.0)
    im = float(m.group("im"))
    return complex(re_part, -im if m.group("sign") == "-" else im)


def parse_complex_list(text: str) -> list[complex]:
    """Comma-separated complex literals; the empty string is the empty list."""
    text = text.strip()
    if not text:
        return []
    return [parse_complex(tok) for tok in text.split(",")]
