"""Shared fixtures: the witness battery and deterministic generators."""

from __future__ import annotations

import pytest

from frechetlab.parsing import parse_poly
from frechetlab.sampling import Lcg
from frechetlab.witness import Ordinary, Product, Sum, SurdPart


def make_battery():
    """The fixed battery of witnesses used across lemma suites.

    Tuples (name, model, n, declared order m).  Orders are verified
    against declared_order() in the acceptance suite.
    """
    cubic1 = Ordinary(parse_poly("t1^3 + 1/2*t1 - 1", 1))
    cubic2 = Ordinary(parse_poly("t1^2*t2", 2))
    return [
        ("cubic-1d", cubic1, 1, 3),
        ("surd-1d", SurdPart(1), 1, 1),
        ("surd-squared", Product((SurdPart(1), SurdPart(1))), 1, 2),
        ("poly-plus-surd", Sum((Ordinary(parse_poly("t1^2", 1)), SurdPart(1))),
         1, 2),
        ("cubic-2d", cubic2, 2, 3),
        ("surd-2d", SurdPart(2), 2, 1),
        ("mixed-2d", Sum((Product((SurdPart(1), SurdPart(1))),
                          Ordinary(parse_poly("t2^2", 2)))), 2, 2),
        ("product-2d", Product((Ordinary(parse_poly("t1", 1)), SurdPart(2))),
         2, 2),
    ]


@pytest.fixture(scope="session")
def battery():
    return make_battery()


@pytest.fixture()
def rng():
    return Lcg(20240901)
