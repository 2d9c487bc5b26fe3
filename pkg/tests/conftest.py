import cmath
from fractions import Fraction

import pytest

from skeinrep.cyclo import cyclo_context


def embed(x) -> complex:
    """Numeric image of a field element under A -> exp(i pi / p), computed independently."""
    z = cmath.exp(1j * cmath.pi / x.p)
    return sum(float(c) * z**i for i, c in enumerate(x.coeffs))


def close(x, value: complex, tol: float = 1e-9) -> bool:
    return abs(embed(x) - value) < tol


@pytest.fixture(params=[6, 8, 10, 12])
def level(request):
    return request.param


@pytest.fixture
def ctx(level):
    return cyclo_context(level)


def frac(s: str) -> Fraction:
    return Fraction(s)
