from __future__ import annotations

from typing import Tuple

import pytest

from qbailey.cyclo import ONE
from qbailey.monomial import Monomial
from qbailey.registry import IdentitySpec, PairSpec, pairs, registry


@pytest.fixture(scope="session")
def identities() -> Tuple[IdentitySpec, ...]:
    return registry()


@pytest.fixture(scope="session")
def bailey_pairs() -> Tuple[PairSpec, ...]:
    return pairs()


@pytest.fixture
def q() -> Monomial:
    return Monomial(ONE, 1)


@pytest.fixture
def a_one() -> Monomial:
    return Monomial(ONE, 0)
