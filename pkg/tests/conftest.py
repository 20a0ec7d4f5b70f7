import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def naive_signature(n: int) -> dict[int, int]:
    """Repeated-division factorization, independent of the package code."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_norm_inf(n: int) -> int:
    sig = naive_signature(n)
    return max(sig.values(), default=0)


def naive_norm_1(n: int) -> int:
    return sum(naive_signature(n).values())


@pytest.fixture(scope="session")
def norms_1e5() -> np.ndarray:
    """norm_inf for 1..1e5 via the naive oracle, shared across tests."""
    return np.array([naive_norm_inf(m) for m in range(1, 10**5 + 1)], dtype=np.uint8)
