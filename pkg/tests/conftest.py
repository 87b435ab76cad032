"""Session-wide expansions shared across test modules.

The deep (trace 60) forms are lazy: building them is cheap, and the
per-class memo means expensive coefficients are computed once for the whole
run no matter which test asks first.
"""

import pytest

from siegel2 import cusp_form_10, cusp_form_12, eisenstein

DEEP_TRACE = 60


@pytest.fixture(scope="session")
def e4():
    return eisenstein(4, DEEP_TRACE)


@pytest.fixture(scope="session")
def e6():
    return eisenstein(6, DEEP_TRACE)


@pytest.fixture(scope="session")
def e10():
    return eisenstein(10, DEEP_TRACE)


@pytest.fixture(scope="session")
def e12():
    return eisenstein(12, DEEP_TRACE)


@pytest.fixture(scope="session")
def chi10():
    return cusp_form_10(DEEP_TRACE)


@pytest.fixture(scope="session")
def chi12():
    return cusp_form_12(DEEP_TRACE)
