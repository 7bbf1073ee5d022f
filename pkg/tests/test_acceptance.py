"""The ten acceptance criteria, each timed and reported as one PASS/FAIL line."""

import json
import random
import resource
import time
from contextlib import contextmanager

import networkx as nx
import pytest
from conftest import ACCEPTANCE, to_graph, to_nx
from oracles import is_chordless_cycle, move_oracle

from digitopo import (
    Graph, apply_move, betti_mod2, canonical_key, class_number, compress, disk_containment_hypothesis,
    euler_characteristic, is_compressed, is_contractible, is_isomorphic, is_n_disk, is_n_manifold,
    is_n_sphere, is_normal_space, join, joint_rim, minimal_sphere, sphere_bounding_hypothesis,
    validate_move,
)
from digitopo.cli import main as cli_main
from digitopo.dtransform import merge_moves, split_moves
from digitopo.generators import corpus, subdivided_sphere, torus16
from digitopo.geometry import (
    brick_tiling_patch, circle, compress_cover, cube_boundary_cover, digitize, grid_cover, is_lcl,
    nerve, plane_patch, refined_sphere_cover, refinement_sequence, sphere, torus_cover_4x4,
)
from digitopo.homotopy import Move, MoveError, reduce

# published class numbers of S1..S4 and the torus
P_S1, P_S2, P_S3, P_S4, P_T2 = 4, 6, 8, 10, 16


@contextmanager
def criterion(k: int, title: str, limit_s: float):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < limit_s
        status = "PASS" if ok and within else "FAIL"
        line = f"criterion {k}: {status} {title} ({dt:.1f}s, limit {limit_s:.0f}s)"
        ACCEPTANCE.append(line)
        print(line)
    assert within, f"criterion {k} took {dt:.1f}s (limit {limit_s}s)"


def test_criterion_01_minimal_spheres(tmp_path, capsys):
    with criterion(1, "minimal spheres n=1..4", 10):
        for n, expected in zip((1, 2, 3, 4), (P_S1, P_S2, P_S3, P_S4)):
            out = tmp_path / f"s{n}.json"
            assert cli_main(["gen", "minimal-sphere", "--n", str(n), "--out", str(out)]) == 0
            g = Graph.from_json(out.read_text())
            assert g.n_vertices == 2 * n + 2 == expected
            assert is_n_manifold(g, n).is_yes
            v = is_n_sphere(g, n)
            assert v.is_yes and v.note == "A=yes B=yes"
            assert is_compressed(g, n).is_yes


def test_criterion_02_compression_oracle():
    with criterion(2, "random subdivided spheres compress to the minimal sphere", 300):
        for n, top, target in ((2, 40, P_S2), (3, 30, P_S3)):
            lo = 2 * n + 3
            for seed in range(30):
                size = lo + (seed * (top - lo)) // 29
                g = subdivided_sphere(n, size, seed=seed)
                assert g.n_vertices == size
                small, trace = compress(g, n, seed=seed)
                assert is_isomorphic(small, minimal_sphere(n)).is_yes, (n, seed)
                assert trace.replay(validate=False) == small
                if seed % 5 == 0:
                    rep = class_number(g, n, runs=3, seed=seed)
                    assert rep.achieved_min_points == target


def test_criterion_03_torus():
    with criterion(3, "T16 invariants, class number and containment counterexample", 120):
        t = torus16()
        assert is_n_manifold(t, 2).is_yes
        assert is_n_sphere(t, 2).is_no
        assert euler_characteristic(t) == 0
        assert tuple(betti_mod2(t)) == (1, 2, 1)
        rep = class_number(t, 2, runs=20)
        assert rep.achieved_min_points == P_T2 and set(rep.sizes) == {16}
        v = disk_containment_hypothesis(t, 1, 2)
        assert v.is_no
        big = v.certificate["counterexamples"]["5"]
        disk = t.induced(big["disk"])
        assert disk.n_vertices >= 5 and is_n_disk(disk, 1).is_yes
        # T16 is compressed, so its 2-disks are vertex balls with one interior
        # point; an interior of three points fits in none of them
        assert is_compressed(t, 2).is_yes and len(big["interior"]) >= 2


def _random_move(g, rng, k):
    vs = list(g.vertices)
    kind = rng.randrange(4)
    if kind == 0:
        return Move.delete_point(rng.choice(vs))
    if kind == 1:
        u = rng.choice(vs)
        nb = list(g.neighbors(u))
        return Move.glue_point(f"r{k}", [u] + rng.sample(nb, rng.randint(0, min(3, len(nb)))))
    if kind == 2:
        return Move.delete_edge(*rng.choice(g.edges))
    return Move.glue_edge(*rng.sample(vs, 2))


def test_criterion_04_invariance():
    with criterion(4, "500 random moves preserve chi and Betti; merges and splits replay", 300):
        rng = random.Random(2024)
        items = corpus()
        kinds: dict[str, int] = {}
        done = k = 0
        while done < 500:
            # a random walk of 25 moves from each corpus member in turn
            _, g, _ = items[(done // 25) % len(items)]
            chi, betti = euler_characteristic(g), tuple(betti_mod2(g))
            for _ in range(25):
                for _ in range(200):
                    k += 1
                    m = _random_move(g, rng, k)
                    try:
                        if validate_move(g, m).is_yes:
                            break
                    except MoveError:  # not applicable here, e.g. an existing edge
                        continue
                else:
                    pytest.fail("no valid move found")
                g = apply_move(g, m, check=False)
                assert euler_characteristic(g) == chi and tuple(betti_mod2(g)) == betti, m
                kinds[m.kind] = kinds.get(m.kind, 0) + 1
                done += 1
        assert len(kinds) == 4, kinds
        for n, size in ((2, 16), (3, 14)):
            for seed in range(3):
                g = subdivided_sphere(n, size, seed=seed)
                small, trace = compress(g, n, seed=seed)
                assert trace.replay(validate=True) == small
        from digitopo.generators import _split_once
        g = minimal_sphere(2)
        for seed in range(10):
            g, trace = _split_once(g, random.Random(seed), "y")
            assert trace.replay(validate=True) == g


def test_criterion_05_join_laws():
    with criterion(5, "join laws and joint-rim dimension law", 60):
        for a in range(3):
            for b in range(3):
                assert canonical_key(join(minimal_sphere(a), minimal_sphere(b))) == \
                    canonical_key(minimal_sphere(a + b + 1))
        for name, g, n in corpus():
            G = to_nx(g)
            for c in nx.enumerate_all_cliques(G):
                if len(c) > n:
                    break
                assert is_normal_space(joint_rim(g, c), n - len(c)).is_yes, (name, c)


def test_criterion_06_nerve_correspondence():
    with criterion(6, "cube covers, t >= 2n+2, merge_cover commutes down to 2n+2", 120):
        for n in (1, 2, 3):
            c = cube_boundary_cover(n)
            assert is_lcl(c).is_yes
            assert is_isomorphic(nerve(c), minimal_sphere(n)).is_yes
        closed = [(cube_boundary_cover(n), n) for n in (1, 2, 3)]
        closed += [(refined_sphere_cover(n, k), n) for n in (1, 2, 3) for k in (2, 3)]
        closed += [(torus_cover_4x4(), 2)]
        for c, n in closed:
            assert is_lcl(c, n).is_yes and is_n_manifold(nerve(c), n).is_yes
            assert len(c) >= 2 * n + 2
        for n, k in ((1, 4), (2, 3), (3, 3)):
            c = refined_sphere_cover(n, k)
            assert len(c) >= 14
            # merge_cover raises unless the merged nerve equals the nerve merge
            small, log = compress_cover(c, n)
            assert len(small) == 2 * n + 2 and log
            assert all(step["lcl"] == "yes" for step in log)


def test_criterion_07_contractible_nerves():
    with criterion(7, "brick patch and grid-cube nerves contract with traces", 60):
        covers = [brick_tiling_patch(2, 4)]
        covers += [grid_cover([(0, "1.3"), ("0.2", "1.1")], h) for h in ("1/2", "1/4")]
        for c in covers:
            g = nerve(c)
            v = is_contractible(g)
            assert v.is_yes
            assert v.witness.replay(validate=True).n_vertices == 1


def test_criterion_08_digitization():
    with criterion(8, "sphere, circle and plane digitizations stabilise", 300):
        rep = refinement_sequence(sphere(), "0.5", 3)
        assert [lv["h"] for lv in rep["levels"]] == ["0.5", "0.25", "0.125"]
        assert all((lv["chi"], lv["betti"]) == (2, [1, 0, 1]) for lv in rep["levels"])
        _, g = digitize(circle(), "0.25")
        assert is_n_sphere(reduce(g)[0], 1).is_yes
        _, g = digitize(plane_patch(), "0.25")
        assert reduce(g)[0].n_vertices == 1
        peak_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
        assert peak_mb < 2048


def test_criterion_09_hypothesis_checkers():
    with criterion(9, "octahedron and minimal 3-sphere satisfy both hypotheses", 120):
        v = sphere_bounding_hypothesis(minimal_sphere(2), 2, max_len=6)
        assert v.is_yes and len(v.witness) == 3
        assert all(len(w["interior"]) == 1 for w in v.witness)
        assert disk_containment_hypothesis(minimal_sphere(3), 2, 3).is_yes


def test_criterion_10_oracle_equivalence():
    with criterion(10, "contractibility and 1-sphere recognition match brute force", 600):
        oracle = move_oracle()
        atlas = nx.graph_atlas_g()[1:]
        for G in atlas[:52]:
            if nx.is_connected(G):
                v = is_contractible(to_graph(G))
                assert not v.is_unknown and v.is_yes == oracle.is_contractible(G)
        checked = 0
        for G in atlas:
            assert is_n_sphere(to_graph(G), 1).is_yes == is_chordless_cycle(G)
            checked += 1
            if G.number_of_nodes() == 7:
                # every graph on 8 points is a 7-point graph plus one point
                names = [str(v) for v in G.nodes]
                base = [(str(a), str(b)) for a, b in G.edges]
                for s in range(128):
                    nb = [names[i] for i in range(7) if s >> i & 1]
                    H = G.copy()
                    H.add_edges_from((int(x), 7) for x in nb)
                    H.add_node(7)
                    g = Graph(names + ["7"], base + [(x, "7") for x in nb])
                    assert is_n_sphere(g, 1).is_yes == is_chordless_cycle(H)
                    checked += 1
        assert checked > 130_000
