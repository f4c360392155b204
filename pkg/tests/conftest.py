"""Shared fixtures: the group catalog and the brute-force closure helper."""

import pytest

from fitlen.construct import build, parse_expr

# name -> (expression, order); spans one to four primes, with enough
# oracle-sized members for the cross-check sweeps
CATALOG_EXPRS = {
    "c8": ("C(2,3)", 8),
    "ea9": ("EA(3,2)", 9),
    "d4": ("WR(C(2,1),C(2,1))", 8),
    "c6": ("D(C(2,1),C(3,1))", 6),
    "w32": ("W(C(3,1),C(2,1))", 18),
    "w23": ("W(C(2,1),C(3,1))", 24),
    "w23_2": ("W(W(C(2,1),C(3,1)),C(2,1))", 24 ** 2 * 2),
    "w35": ("W(C(3,1),C(5,1))", 3 ** 5 * 5),
    "d30": ("D(D(C(2,1),C(3,1)),C(5,1))", 30),
    "d120": ("D(W(C(2,1),C(3,1)),C(5,1))", 120),
    "d90": ("D(W(C(3,1),C(2,1)),C(5,1))", 90),
    "ex32a": ("W(C(2,1),W(C(3,1),C(5,1)))", 2 ** 15 * 3 ** 5 * 5),
    "ex32b": ("D(C(2,1),W(C(3,1),C(5,1)))", 2 * 3 ** 5 * 5),
    "ex33": ("W(W(C(2,1),C(3,1)),W(C(5,1),C(3,1)))", 24 ** 15 * 375),
    "d210": ("D(D(C(2,1),C(3,1)),D(C(5,1),C(7,1)))", 210),
    "d840": ("D(W(C(2,1),C(3,1)),D(C(5,1),C(7,1)))", 840),
    "w4big": ("W(D(C(2,1),C(3,1)),D(C(5,1),C(7,1)))", 6 ** 12 * 35),
}

# members small enough for full element enumeration
ORACLE_NAMES = [name for name, (_, order) in CATALOG_EXPRS.items()
                if order <= 2000]


@pytest.fixture(scope="session")
def catalog():
    return {name: build(parse_expr(text))
            for name, (text, _) in CATALOG_EXPRS.items()}


@pytest.fixture(scope="session")
def oracle_catalog(catalog):
    return {name: catalog[name] for name in ORACLE_NAMES}


def brute_force_elements(gens):
    """Plain breadth-first closure over image tuples; the independent
    oracle used to freeze expected orders in the engine tests."""
    degree = len(gens[0])
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = [ident]
    while queue:
        x = queue.pop()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the extended-budget tests (degree 900)")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: extended-budget test, skipped unless --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow (extended budget)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
