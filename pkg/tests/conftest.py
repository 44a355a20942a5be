import mpmath
import pytest
from hypothesis import settings

from foxwright import validate

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def mp40():
    """Independent high-precision oracle context."""
    ctx = mpmath.MPContext()
    ctx.dps = 40
    return ctx


@pytest.fixture(scope="session")
def gauss():
    return validate([0.5, 0.7], [1, 1], [1.3], [1])


@pytest.fixture(scope="session")
def half_scales():
    # Psi(z) = Gamma(a2) 2F1(1, a2; 1/2; z^2/4) + Gamma(3/2)Gamma(a2+1/2) z (1 - z^2/4)^(-a2-1/2)
    return validate([1.0, 1.3], [0.5, 0.5])


def gauss_psi(ctx, a, b, c, z):
    return ctx.gamma(a) * ctx.gamma(b) / ctx.gamma(c) * ctx.hyp2f1(a, b, c, z)


def half_psi(ctx, a2, z):
    z = ctx.convert(z)
    return (ctx.gamma(a2) * ctx.hyp2f1(1, a2, 0.5, z * z / 4)
            + ctx.gamma(1.5) * ctx.gamma(a2 + 0.5) * z * (1 - z * z / 4) ** (-a2 - 0.5))


def rel(x, y):
    return abs(complex(x) - complex(y)) / abs(complex(y))
