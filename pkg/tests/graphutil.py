"""Shared graph constructions for tests."""

from etcubic.graphs import CubicGraph


def lcf_graph(jumps, reps):
    """Hamiltonian cubic graph from LCF notation."""
    n = len(jumps) * reps
    nbrs = [set() for _ in range(n)]
    for v in range(n):
        nbrs[v].add((v + 1) % n)
        nbrs[(v + 1) % n].add(v)
        w = (v + jumps[v % len(jumps)]) % n
        nbrs[v].add(w)
        nbrs[w].add(v)
    return CubicGraph([tuple(s) for s in nbrs])


def coxeter_graph():
    """Three 7-gons with steps 1, 2, 3 joined by a 7-spoke hub."""
    edges = []
    for i in range(7):
        edges += [(i, (i + 1) % 7),
                  (7 + i, 7 + (i + 2) % 7),
                  (14 + i, 14 + (i + 3) % 7),
                  (21 + i, i), (21 + i, 7 + i), (21 + i, 14 + i)]
    nbrs = [set() for _ in range(28)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return CubicGraph([tuple(s) for s in nbrs])


# LCF forms of the named graphs used as fixed points in tests
HEAWOOD = ([5, -5], 7)
MOEBIUS_KANTOR = ([5, -5], 8)
PAPPUS = ([5, 7, -7, 7, -7, -5], 3)
DESARGUES = ([5, -5, 9, -9], 5)
TUTTE_8_CAGE = ([-13, -9, 7, -7, 9, 13], 5)
GRAY = ([-25, 7, -7, 13, -13, 25], 9)
F026 = ([7, -7], 13)
F090 = ([17, -9, 37, -37, 9, -17], 15)


def k4():
    return CubicGraph([(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)])


def k33():
    return CubicGraph([(3, 4, 5)] * 3 + [(0, 1, 2)] * 3)


def petersen():
    outer = [((i + 1) % 5, (i - 1) % 5, i + 5) for i in range(5)]
    inner = [(5 + (i + 2) % 5, 5 + (i - 2) % 5, i) for i in range(5)]
    return CubicGraph(outer + inner)


def prism():
    return CubicGraph([(1, 2, 3), (0, 2, 4), (0, 1, 5),
                       (4, 5, 0), (3, 5, 1), (3, 4, 2)])


def cube():
    return CubicGraph([tuple(v ^ (1 << b) for b in range(3))
                       for v in range(8)])
