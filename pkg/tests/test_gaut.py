import random

import networkx as nx
import pytest

from etcubic.gaut import automorphism_group, canonical_key, symmetry_kind
from etcubic.graphs import CubicGraph

import graphutil as gu


def brute_aut_count(g):
    """Count adjacency-preserving bijections by plain backtracking."""
    n = g.n
    adj = [set(nbrs) for nbrs in g.adjacency]
    count = 0

    def extend(i, images, used):
        nonlocal count
        if i == n:
            count += 1
            return
        for w in range(n):
            if used[w]:
                continue
            ok = True
            for j in range(i):
                if (j in adj[i]) != (images[j] in adj[w]):
                    ok = False
                    break
            if ok:
                used[w] = True
                images.append(w)
                extend(i + 1, images, used)
                images.pop()
                used[w] = False

    extend(0, [], [False] * n)
    return count


def relabel(g, perm):
    adj = [None] * g.n
    for v in range(g.n):
        adj[perm[v]] = tuple(perm[w] for w in g.adjacency[v])
    return CubicGraph(adj)


def random_cubic(n, seed):
    while True:
        G = nx.random_regular_graph(3, n, seed=seed)
        if nx.is_connected(G):
            G = nx.convert_node_labels_to_integers(G)
            return CubicGraph([tuple(G.neighbors(v)) for v in range(n)])
        seed += 7919


class TestAgainstBruteForce:
    CASES = [gu.k4(), gu.k33(), gu.prism(), gu.cube(), gu.petersen()]

    @pytest.mark.parametrize("g", CASES, ids=lambda g: f"n{g.n}")
    def test_named_small(self, g):
        assert automorphism_group(g).order() == brute_aut_count(g)

    @pytest.mark.parametrize("n,seed", [(8, 0), (10, 1), (10, 2), (12, 3),
                                        (12, 4), (12, 5)])
    def test_random_small(self, n, seed):
        g = random_cubic(n, seed)
        assert automorphism_group(g).order() == brute_aut_count(g)


class TestKnownOrders:
    # (constructor args, |Aut|)
    LCF_CASES = [
        (gu.HEAWOOD, 336),
        (gu.MOEBIUS_KANTOR, 96),
        (gu.PAPPUS, 216),
        (gu.DESARGUES, 240),
        (gu.TUTTE_8_CAGE, 1440),
        (gu.GRAY, 1296),
        (gu.F026, 78),
        (gu.F090, 4320),
    ]

    @pytest.mark.parametrize("form,order", LCF_CASES,
                             ids=[f"n{len(j) * r}" for (j, r), _ in LCF_CASES])
    def test_lcf_graphs(self, form, order):
        assert automorphism_group(gu.lcf_graph(*form)).order() == order

    def test_coxeter(self):
        assert automorphism_group(gu.coxeter_graph()).order() == 336

    def test_generators_preserve_adjacency(self):
        for g in [gu.petersen(), gu.lcf_graph(*gu.GRAY)]:
            edges = set(g.edges())
            for p in automorphism_group(g).gens:
                mapped = {tuple(sorted((p[u], p[v]))) for u, v in edges}
                assert mapped == edges


class TestCanonicalKey:
    def test_relabel_invariant(self):
        random.seed(11)
        for g in [gu.petersen(), gu.lcf_graph(*gu.HEAWOOD),
                  gu.lcf_graph(*gu.GRAY)]:
            key = canonical_key(g)
            for _ in range(4):
                perm = list(range(g.n))
                random.shuffle(perm)
                assert canonical_key(relabel(g, perm)) == key

    def test_distinguishes_nonisomorphic(self):
        graphs = [gu.k4(), gu.k33(), gu.prism(), gu.cube(), gu.petersen(),
                  gu.coxeter_graph(), gu.lcf_graph(*gu.HEAWOOD),
                  gu.lcf_graph(*gu.MOEBIUS_KANTOR)]
        keys = [canonical_key(g) for g in graphs]
        assert len(set(keys)) == len(keys)

    def test_same_order_different_graphs(self):
        # heawood and coxeter both have |Aut| = 336
        assert canonical_key(gu.lcf_graph(*gu.HEAWOOD)) != \
            canonical_key(gu.coxeter_graph())


class TestSymmetryKind:
    def test_arc_transitive(self):
        for g in [gu.k4(), gu.k33(), gu.petersen(),
                  gu.lcf_graph(*gu.TUTTE_8_CAGE)]:
            info = symmetry_kind(g)
            assert info["kind"] == "arc-transitive"
            assert (info["vertex_orbits"], info["edge_orbits"],
                    info["arc_orbits"]) == (1, 1, 1)

    def test_semisymmetric_gray(self):
        g = gu.lcf_graph(*gu.GRAY)
        info = symmetry_kind(g)
        assert info["kind"] == "semisymmetric"
        assert info["vertex_orbits"] == 2
        assert info["edge_orbits"] == 1
        assert info["arc_orbits"] == 2
        # the two vertex orbits are the bipartition parts
        from etcubic.graphs import bipartition_of
        parts = {frozenset(p) for p in bipartition_of(g)}
        orbits = {frozenset(o) for o in info["aut"].orbits()}
        assert orbits == parts

    def test_prism_is_neither(self):
        info = symmetry_kind(gu.prism())
        assert info["kind"] == "neither"
        assert info["vertex_orbits"] == 1
        assert info["edge_orbits"] == 2

    def test_asymmetric_random(self):
        g = random_cubic(60, 17)
        info = symmetry_kind(g)
        assert info["kind"] == "neither"
