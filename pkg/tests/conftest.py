import random
from fractions import Fraction

import pytest

from grassmann_hv.algebra import AlgebraContext, Multivector
from grassmann_hv.scalars import Coefficient, GaussianRational


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


def random_coefficient(rng: random.Random, with_eta: bool = True) -> Coefficient:
    if not with_eta:
        return Coefficient({0: random_rational(rng)})
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = rng.randint(-3, 3)
        terms[e] = GaussianRational(random_rational(rng), random_rational(rng) if rng.random() < 0.3 else 0)
    return Coefficient(terms)


def random_mv(rng: random.Random, ctx: AlgebraContext, max_terms: int = 6,
              with_eta: bool = True) -> Multivector:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mask = rng.getrandbits(ctx.n_generators) if ctx.n_generators else 0
        terms[mask] = random_coefficient(rng, with_eta)
    return Multivector(ctx, terms)


def exact_charpoly(matrix):
    """Characteristic polynomial coefficients (highest first) by Faddeev-LeVerrier.

    Works with any exact field entries supporting + - * and division by int.
    """
    n = len(matrix)
    zero = matrix[0][0] * 0
    one = zero + 1

    def mul(x, y):
        return [[sum((x[i][k] * y[k][j] for k in range(n)), zero) for j in range(n)] for i in range(n)]

    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    coeffs = [one]
    m = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = mul(matrix, m)
        m = [[am[i][j] + (coeffs[-1] * ident[i][j]) for j in range(n)] for i in range(n)]
        am = mul(matrix, m)
        c = -sum((am[i][i] for i in range(n)), zero) / k
        coeffs.append(c)
    return coeffs


def poly_from_roots(roots):
    coeffs = [roots[0] * 0 + 1]
    for r in roots:
        nxt = coeffs + [coeffs[0] * 0]
        for i in range(1, len(nxt)):
            nxt[i] = nxt[i] - r * coeffs[i - 1]
        coeffs = nxt
    return coeffs


@pytest.fixture
def rng():
    return random.Random(20261014)


@pytest.fixture
def pair_ctx():
    return AlgebraContext(("a1", "a2", "a3", "b1", "b2", "b3"))


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def record(label: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        request.config._acceptance_lines.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
