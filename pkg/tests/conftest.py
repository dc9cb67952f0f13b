import pytest

from metriclie import connection_of, decompose
from metriclie.catalog import catalog_get, catalog_list


@pytest.fixture(scope="session")
def loaded():
    """name -> (spec, conn) for every catalog entry."""
    out = {}
    for name in catalog_list():
        doc = catalog_get(name).load()
        out[name] = (doc.spec, connection_of(doc.spec))
    return out


@pytest.fixture(scope="session")
def decomposed(loaded):
    """name -> Decomposition, computed once (the searches are the slow part)."""
    return {name: decompose(spec) for name, (spec, _) in loaded.items()}
