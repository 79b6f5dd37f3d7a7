import math
from collections import deque

import numpy as np
import pytest

from flagjohnson.graphs import (
    SparseGraph,
    cayley,
    complete_graph,
    dai_isomorphism_check,
    dai_map,
    flag_johnson,
    flag_masks,
    johnson,
    path_graph,
    read_edges,
    schreier_matrix,
)
from flagjohnson.permgroup import all_permutations, gen_prime_set, gen_reducible_set, stab_split
from flagjohnson.spectra import closed_form_Q, closed_form_Qprime


def bfs_connected(g: SparseGraph) -> bool:
    seen = {0}
    todo = deque([0])
    while todo:
        v = todo.popleft()
        for w in g.neighbors(v).tolist():
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == g.vertex_count


class TestSparseGraph:
    def test_dedup_and_symmetry(self):
        g = SparseGraph.from_edges(3, [0, 1, 1], [1, 0, 2])
        assert g.edge_count == 2
        assert g.neighbors(1).tolist() == [0, 2]
        g.check_invariants()

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            SparseGraph.from_edges(2, [0], [0])

    def test_export_roundtrip(self, tmp_path):
        g = cayley(gen_prime_set(4), labels=True)
        g.write_edges(tmp_path / "g.txt")
        g.write_labels(tmp_path / "g.labels")
        lines = (tmp_path / "g.txt").read_text().splitlines()
        assert lines[0] == "p 24 48"
        assert len(lines) == 49
        assert read_edges(tmp_path / "g.txt").same_edges(g)
        labels = (tmp_path / "g.labels").read_text().splitlines()
        assert labels[0] == "0 1234" and labels[-1] == "23 4321"


class TestCayley:
    def test_prime_n4(self):
        g = cayley(gen_prime_set(4))
        assert g.vertex_count == 24
        assert g.regular_degree() == 4
        g.check_invariants()

    def test_plain_n4_connected(self):
        g = cayley(gen_reducible_set(4, 2))
        assert g.vertex_count == 24
        assert g.regular_degree() == 7
        assert bfs_connected(g)
        assert g.is_connected()

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_regular_of_generator_degree(self, n):
        for gens in (gen_prime_set(n), gen_reducible_set(n, 2), gen_reducible_set(n, 1)):
            g = cayley(gens)
            g.check_invariants()
            assert g.regular_degree() == len(gens)

    def test_edge_is_left_multiplication(self):
        perms = all_permutations(4)
        g = cayley(gen_prime_set(4))
        index = {tuple(p): i for i, p in enumerate(perms.tolist())}
        for i, gp in enumerate(perms.tolist()):
            expected = sorted(index[tuple(s.images[x] for x in gp)] for s in gen_prime_set(4))
            assert g.neighbors(i).tolist() == expected

    def test_matching_part(self):
        _, moving = stab_split(gen_prime_set(5), 5)
        g = cayley(moving)
        assert g.edge_count == 60
        assert np.all(g.degrees() == 1)

    def test_too_large(self):
        from flagjohnson.permgroup import GeneratorSet
        with pytest.raises(ValueError):
            cayley(GeneratorSet(9, frozenset()))


class TestSchreier:
    def test_prime_n4(self):
        expected = [[0, 2, 2, 0], [2, 1, 1, 0], [2, 1, 0, 1], [0, 0, 1, 3]]
        assert schreier_matrix(gen_prime_set(4)).tolist() == expected

    @pytest.mark.parametrize("n", range(4, 9))
    def test_prime_corner_entries(self, n):
        q = schreier_matrix(gen_prime_set(n))
        assert q[-1, -1] == n - 1
        assert q[0, 0] == 0

    @pytest.mark.parametrize("n", range(4, 9))
    def test_row_sums_and_symmetry(self, n):
        for gens in (gen_prime_set(n), gen_reducible_set(n, 2)):
            q = schreier_matrix(gens)
            assert np.array_equal(q, q.T)
            assert np.all(q.sum(axis=1) == len(gens))

    @pytest.mark.parametrize("n", range(4, 7))
    def test_matches_closed_forms(self, n):
        assert np.array_equal(schreier_matrix(gen_reducible_set(n, 2)), closed_form_Q(n))
        assert np.array_equal(schreier_matrix(gen_prime_set(n)), closed_form_Qprime(n))


class TestFlagJohnson:
    def test_fj42(self):
        g = flag_johnson(4, 2)
        assert g.vertex_count == 24
        assert g.regular_degree() == len(gen_reducible_set(4, 2)) == 7

    def test_k0_edgeless(self):
        g = flag_johnson(4, 0)
        assert g.vertex_count == 24 and g.edge_count == 0

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_criteria_agree_n5(self, k):
        # oracle: explicit chains of frozensets, common-subset count
        perms = all_permutations(5).tolist()
        chains = [[frozenset(p[: i + 1]) for i in range(5)] for p in perms]
        g = flag_johnson(5, k)
        for a, b in g.edges().tolist()[:400]:
            differ = sum(x != y for x, y in zip(chains[a], chains[b]))
            common = len(set(chains[a]) & set(chains[b]))
            assert differ == k and common == 5 - k

    def test_fj_n1_is_permutahedron_degree(self):
        g = flag_johnson(5, 1)
        assert g.regular_degree() == 4

    def test_masks(self):
        masks = flag_masks(np.array([[2, 0, 1]]))
        assert masks.tolist() == [[0b100, 0b101, 0b111]]


class TestDai:
    @pytest.mark.parametrize("n,k", [(4, 2), (5, 1)] + [(6, k) for k in range(1, 6)])
    def test_isomorphism(self, n, k):
        assert dai_isomorphism_check(n, k)

    def test_identity_map_is_not_an_isomorphism(self):
        cay = cayley(gen_reducible_set(4, 2))
        assert not cay.same_edges(flag_johnson(4, 2))

    def test_map_is_inverse(self):
        perms = all_permutations(4).tolist()
        phi = dai_map(4)
        for i, p in enumerate(perms):
            q = perms[phi[i]]
            assert all(q[p[x]] == x for x in range(4))


class TestSmallFamilies:
    def test_single_vertex_path(self):
        g = path_graph(1)
        assert g.vertex_count == 1 and g.edge_count == 0

    def test_johnson_octahedron(self):
        g = johnson(4, 2)
        assert g.vertex_count == 6
        assert g.regular_degree() == 4
        # octahedron: complement is a perfect matching
        comp = 1 - g.to_dense() - np.eye(6, dtype=int)
        assert np.all(comp.sum(axis=1) == 1)

    def test_johnson_counts(self):
        g = johnson(6, 3)
        assert g.vertex_count == math.comb(6, 3)
        assert g.regular_degree() == 3 * 3

    def test_complete(self):
        assert complete_graph(4).regular_degree() == 3
