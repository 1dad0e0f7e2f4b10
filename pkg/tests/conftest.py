import pathlib
import random

import pytest

from fiatcells import (
    make_CA,
    make_hecke,
    make_s2,
    make_sl2_singular,
    random_cartan_data,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def s2():
    return make_s2()


@pytest.fixture(scope="session")
def sl2():
    return make_sl2_singular()


@pytest.fixture(scope="session")
def hecke3():
    return make_hecke(3)


@pytest.fixture(scope="session")
def hecke4():
    return make_hecke(4)


def corpus_cats():
    """The table corpus for the universally quantified property suite."""
    cats = [
        ("s2", make_s2()),
        ("sl2", make_sl2_singular()),
        ("ca_1_2", make_CA([[1]], [[2]])),
        ("ca_2", make_CA([[2]])),
        ("ca_2x2", make_CA([[2, 1], [1, 2]])),
        ("ca_mixed", make_CA([[1, 1], [1, 2]], [[3]])),
        ("hecke2", make_hecke(2)),
        ("hecke3", make_hecke(3)),
        ("hecke4", make_hecke(4)),
    ]
    rng = random.Random(20250810)
    for i in range(6):
        cats.append((f"ca_random_{i}", make_CA(random_cartan_data(rng))))
    return cats


_CORPUS = None


def corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = corpus_cats()
    return _CORPUS
