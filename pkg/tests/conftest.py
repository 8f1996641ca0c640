import numpy as np
import pytest


def _available_backends():
    names = ["pure"]
    try:
        from radixsa import _kernels  # noqa: F401
        names.insert(0, "cython")
    except ImportError:
        pass
    return names


BACKENDS = _available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def random_text(rng: np.random.Generator, n: int, sigma: int) -> bytes:
    return bytes(rng.integers(0, sigma, size=n, dtype=np.uint8) + 97) \
        if sigma <= 29 else bytes(rng.integers(0, sigma, size=n,
                                               dtype=np.uint8))
