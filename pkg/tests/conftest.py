from __future__ import annotations

from functools import lru_cache

import mpmath as mp
import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def _mp_coeffs(alpha: float, beta: float, terms: int, derivative: bool):
    with mp.workdps(40):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        gb = mp.gamma(b)
        coeffs = [mp.mpf(1)]
        for n in range(1, terms):
            c = gb / mp.gamma(a * n + b)
            coeffs.append(c * (n + 1) if derivative else c)
        return tuple(coeffs)


def mp_normalized(alpha: float, beta: float, z: complex, terms: int = 300, derivative: bool = False) -> complex:
    """Brute-force ``z + sum A_n z^(n+1)`` (or its derivative) at 40 digits."""
    coeffs = _mp_coeffs(float(alpha), float(beta), terms, derivative)
    with mp.workdps(40):
        zz = mp.mpc(z.real, z.imag)
        acc = mp.mpc(0)
        for c in reversed(coeffs):
            acc = acc * zz + c
        if not derivative:
            acc *= zz
        return complex(acc)


def random_disk(n: int, seed: int, radius: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return r * np.exp(1j * t)


@pytest.fixture
def disk_points():
    return random_disk(200, seed=12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
