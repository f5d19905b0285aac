from __future__ import annotations

import pytest

from sclcone.chains import FactorSpec, parse_chain


def factors(order_a: int, order_b: int, names: str = "ab") -> tuple[FactorSpec, FactorSpec]:
    return (FactorSpec(names[0], order_a), FactorSpec(names[1], order_b))


def chain(text: str, order_a: int, order_b: int, names: str = "ab"):
    return parse_chain(text, factors(order_a, order_b, names))


@pytest.fixture
def ab_free():
    return factors(0, 0)
