import pytest

from etcubic.amalgams import load_catalog
from etcubic.normalsub import normal_subgroups
from etcubic.graphs import coset_graph_at, coset_graph_ss


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


def seeded(spec):
    return (tuple(spec.pres.subgroups["A"]), tuple(spec.pres.subgroups["B"]))


def sweep_graphs(spec, order):
    """All realization graphs of the class at the given quotient order."""
    build = coset_graph_at if spec.kind == "arc-transitive" else coset_graph_ss
    out = []
    for rec in normal_subgroups(spec.pres, order, free_on=seeded(spec)):
        if rec.index != order:
            continue
        try:
            out.append((rec, build(rec, spec)))
        except ValueError:
            pass
    return out


@pytest.fixture(scope="session")
def cage8_sweep(catalog):
    return sweep_graphs(catalog["DjM5"], 1440)


@pytest.fixture(scope="session")
def gray_sweep(catalog):
    return sweep_graphs(catalog["G2^4"], 1296)
