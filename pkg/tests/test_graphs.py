import random

import networkx as nx
import pytest

from etcubic.graphs import (CubicGraph, coset_graph_at, coset_graph_ss,
                            invariants, girth, diameter, bipartition_of,
                            is_connected, hamilton_cycle,
                            check_hamilton_cycle, sparse6_encode,
                            sparse6_decode, encode_sparse6, decode_sparse6,
                            write_sparse6_file, read_sparse6_file)
from etcubic.normalsub import normal_subgroups

import graphutil as gu
from conftest import seeded, sweep_graphs
from reference_sparse6 import reference_sparse6


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def from_nx(G):
    G = nx.convert_node_labels_to_integers(G)
    return CubicGraph([tuple(G.neighbors(v))
                       for v in range(G.number_of_nodes())])


def random_cubic(n, seed):
    while True:
        G = nx.random_regular_graph(3, n, seed=seed)
        if nx.is_connected(G):
            return from_nx(G)
        seed += 7919


class TestCubicGraph:
    def test_k4(self):
        g = gu.k4()
        assert g.n == 4
        assert g.edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def test_rejects_wrong_degree(self):
        with pytest.raises(ValueError, match="3 distinct"):
            CubicGraph([(1, 2), (0, 2), (0, 1)])

    def test_rejects_loop(self):
        with pytest.raises(ValueError):
            CubicGraph([(0, 1, 2), (0, 2, 2), (0, 1, 1)])

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            CubicGraph([(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2),
                        (0, 1, 2)])

    def test_rejects_repeated_neighbor(self):
        with pytest.raises(ValueError, match="3 distinct"):
            CubicGraph([(1, 1, 2), (0, 0, 2), (0, 1, 0)])

    def test_bipartition_checked(self):
        adj = gu.k33().adjacency
        g = CubicGraph(adj, bipartition=((0, 1, 2), (3, 4, 5)))
        assert g.bipartition == ((0, 1, 2), (3, 4, 5))
        with pytest.raises(ValueError, match="inside"):
            CubicGraph(adj, bipartition=((0, 1, 3), (2, 4, 5)))
        with pytest.raises(ValueError, match="split"):
            CubicGraph(adj, bipartition=((0, 1), (3, 4, 5)))

    def test_neighbor_order_normalized(self):
        g = CubicGraph([(3, 2, 1), (0, 2, 3), (0, 1, 3), (0, 1, 2)])
        assert g.adjacency[0] == (1, 2, 3)
        assert g == gu.k4()


class TestCosetGraphs:
    # class name, quotient order, vertices, girth, diameter, bipartite
    GOLDEN = [
        ("DjM2^1", 24, 4, 3, 1, False),
        ("DjM3", 72, 6, 4, 2, True),
        ("DjM3", 120, 10, 5, 2, False),
        ("DjM4^1", 336, 14, 6, 3, True),
        ("DjM1", 78, 26, 6, 5, True),
    ]

    @pytest.mark.parametrize("name,order,n,want_girth,diam,bip", GOLDEN)
    def test_small_golden(self, catalog, name, order, n, want_girth,
                          diam, bip):
        built = sweep_graphs(catalog[name], order)
        assert built, f"no graphs at {name}@{order}"
        for rec, g in built:
            assert g.n == n
            inv = invariants(g)
            assert inv == {"girth": want_girth, "diameter": diam,
                           "bipartite": bip, "connected": True}

    def test_tutte_8_cage(self, cage8_sweep):
        assert len(cage8_sweep) == 1
        g = cage8_sweep[0][1]
        assert g.n == 30
        assert girth(g) == 8 and diameter(g) == 4

    def test_gray_graph(self, gray_sweep):
        assert len(gray_sweep) == 1
        g = gray_sweep[0][1]
        assert g.n == 54
        assert girth(g) == 8 and diameter(g) == 6
        assert len(g.bipartition[0]) == 27

    def test_kind_mismatch_rejected(self, catalog):
        at = catalog["DjM1"]
        ss = catalog["G1"]
        recs = normal_subgroups(at.pres, 6)
        with pytest.raises(ValueError, match="not semisymmetric"):
            coset_graph_ss(recs[0], at)
        recs = normal_subgroups(ss.pres, 3)
        with pytest.raises(ValueError, match="not arc-transitive"):
            coset_graph_at(recs[0], ss)

    def test_degenerate_quotients_rejected(self, catalog):
        # small quotients collapse a stabilizer or give loops/multi-edges;
        # every record either builds a valid graph or raises
        spec = catalog["DjM1"]
        rejected = 0
        for rec in normal_subgroups(spec.pres, 12):
            try:
                g = coset_graph_at(rec, spec)
                assert g.n * 3 == rec.index
            except ValueError:
                rejected += 1
        assert rejected > 0

    def test_vertex_zero_is_base_coset(self, catalog):
        # BFS numbering starts at the coset of the identity
        for rec, g in sweep_graphs(catalog["DjM3"], 72):
            assert set(g.adjacency[0]) <= set(range(1, 4))


class TestInvariants:
    @pytest.mark.parametrize("jumps,reps", [
        gu.HEAWOOD, gu.MOEBIUS_KANTOR, gu.PAPPUS, gu.DESARGUES,
        gu.TUTTE_8_CAGE, gu.GRAY, gu.F026,
    ])
    def test_against_networkx_named(self, jumps, reps):
        g = gu.lcf_graph(jumps, reps)
        G = to_nx(g)
        assert girth(g) == nx.girth(G)
        assert diameter(g) == nx.diameter(G)
        assert (bipartition_of(g) is not None) == nx.is_bipartite(G)

    @pytest.mark.parametrize("n,seed", [(8, 1), (10, 2), (12, 3), (14, 4),
                                        (20, 5), (26, 6), (40, 7), (60, 8)])
    def test_against_networkx_random(self, n, seed):
        g = random_cubic(n, seed)
        G = to_nx(g)
        assert girth(g) == nx.girth(G)
        assert diameter(g) == nx.diameter(G)
        assert (bipartition_of(g) is not None) == nx.is_bipartite(G)
        assert is_connected(g)

    def test_bipartition_parts(self):
        parts = bipartition_of(gu.k33())
        assert parts == ((0, 1, 2), (3, 4, 5))


class TestHamilton:
    def test_k4_cycle(self):
        status, cycle = hamilton_cycle(gu.k4())
        assert status == "cycle"
        assert check_hamilton_cycle(gu.k4(), cycle)

    def test_petersen_has_none(self):
        assert hamilton_cycle(gu.petersen()) == ("proven-none", None)

    def test_coxeter_has_none(self):
        assert hamilton_cycle(gu.coxeter_graph()) == ("proven-none", None)

    @pytest.mark.parametrize("jumps,reps", [
        gu.HEAWOOD, gu.DESARGUES, gu.TUTTE_8_CAGE, gu.GRAY, gu.F090,
    ])
    def test_lcf_graphs_are_hamiltonian(self, jumps, reps):
        g = gu.lcf_graph(jumps, reps)
        status, cycle = hamilton_cycle(g)
        assert status == "cycle"
        assert check_hamilton_cycle(g, cycle)

    def test_budget_exhaustion_reported(self):
        g = gu.lcf_graph(*gu.GRAY)
        assert hamilton_cycle(g, budget=3) == ("none-found", None)

    def test_cycle_checker_rejects_bad_input(self):
        g = gu.k4()
        assert not check_hamilton_cycle(g, [0, 1, 2])
        assert not check_hamilton_cycle(g, [0, 1, 2, 2])
        assert check_hamilton_cycle(g, [0, 1, 2, 3])


class TestSparse6:
    def nx_bytes(self, G):
        return nx.to_sparse6_bytes(G, header=False).rstrip(b"\n")

    @pytest.mark.parametrize("seed", range(10))
    def test_random_cubic_bytes_match_networkx(self, seed):
        random.seed(seed)
        for _ in range(20):
            n = random.choice(range(4, 64, 2))
            g = random_cubic(n, random.randrange(10 ** 6))
            mine = sparse6_encode(g)
            assert mine == self.nx_bytes(to_nx(g))
            assert mine == reference_sparse6(g.n, g.edges())

    def test_goldens_roundtrip(self, catalog):
        for name, order in [("DjM2^1", 24), ("DjM3", 72), ("DjM3", 120),
                            ("DjM4^1", 336), ("DjM1", 78)]:
            for rec, g in sweep_graphs(catalog[name], order):
                data = sparse6_encode(g)
                assert data == self.nx_bytes(to_nx(g))
                assert sparse6_decode(data) == g

    @pytest.mark.parametrize("n,edges", [
        (2, [(0, 1)]),
        (4, [(0, 1), (1, 2), (0, 2)]),
        (8, [(0, 1), (2, 6)]),
        (16, [(0, 14)]),
        (16, [(0, 15)]),
        (5, [(0, 1), (2, 3)]),
        (1, []),
        (3, []),
        (63, [(0, 62)]),
        (100, [(i, i + 1) for i in range(99)]),
    ])
    def test_general_graphs_match_networkx(self, n, edges):
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(edges)
        mine = encode_sparse6(n, edges)
        assert mine == self.nx_bytes(G)
        assert mine == reference_sparse6(n, edges)
        n2, e2 = decode_sparse6(mine)
        assert n2 == n
        assert sorted(tuple(sorted(e)) for e in e2) == \
            sorted(tuple(sorted(e)) for e in edges)

    def test_decode_accepts_trailing_newline(self):
        g = gu.petersen()
        assert sparse6_decode(sparse6_encode(g) + b"\n") == g

    def test_header_required(self):
        with pytest.raises(ValueError, match="':'"):
            sparse6_decode(b"Cr")

    def test_out_of_range_byte(self):
        data = bytearray(sparse6_encode(gu.k4()))
        data[2] = 30
        with pytest.raises(ValueError, match="out-of-range"):
            sparse6_decode(bytes(data))

    def test_trailing_garbage(self):
        data = sparse6_encode(gu.petersen()) + b"A?"
        with pytest.raises(ValueError, match="garbage"):
            sparse6_decode(data)

    def test_truncated_stream(self):
        with pytest.raises(ValueError, match="truncated"):
            decode_sparse6(b":")

    def test_loop_rejected(self):
        data = encode_sparse6(4, [(0, 1), (2, 2)])
        with pytest.raises(ValueError, match="loop"):
            sparse6_decode(data)

    def test_multi_edge_rejected(self):
        data = encode_sparse6(4, [(0, 1), (0, 1)])
        with pytest.raises(ValueError, match="multi-edge"):
            sparse6_decode(data)

    def test_file_roundtrip(self, tmp_path):
        graphs = [gu.k4(), gu.k33(), gu.petersen(),
                  gu.lcf_graph(*gu.HEAWOOD)]
        path = tmp_path / "batch.s6"
        write_sparse6_file(path, graphs)
        raw = path.read_bytes()
        assert raw.endswith(b"\n")
        assert raw.count(b"\n") == len(graphs)
        assert read_sparse6_file(path) == graphs
