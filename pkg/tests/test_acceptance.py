"""One test per acceptance criterion; each records a PASS/FAIL line that is
printed in the terminal summary (and immediately, under ``-s``)."""

import json
import time
from contextlib import contextmanager

import pytest

from gatex.cli import main
from gatex.forbidden import enumerate_graphs, load_catalog, mine_forbidden
from gatex.graph import brute_force_invariants, complement
from gatex.modules import build_mdt
from gatex.network import explain, random_galled_tree
from gatex.pvr import build_pvr_network
from gatex.recognition import is_gatex, recognize_gatex_forbidden, recognize_gatex_structural
from gatex.cographs import is_cograph
from gatex.solvers import (clique_number, independence_number,
                           is_clique, is_independent, is_proper_coloring, perfect_order_coloring,
                           solve, transitive_orientation)
from gatex.twinwidth import build_one_contraction_sequence, verify_sequence

from helpers import gatex_corpus, induced_cycle_lengths, random_graph_corpus

RESULTS = {}


@contextmanager
def criterion(k, title):
    info = {}
    try:
        yield info
    except BaseException:
        line = f"FAIL criterion {k:2d}: {title}"
        RESULTS[k] = line + (f" ({info['detail']})" if "detail" in info else "")
        print(RESULTS[k])
        raise
    line = f"PASS criterion {k:2d}: {title}"
    RESULTS[k] = line + (f" ({info['detail']})" if "detail" in info else "")
    print(RESULTS[k])


_small = {}


def small_gatex():
    """All GaTEx graphs on at most 8 vertices, up to isomorphism."""
    if not _small:
        _small["graphs"] = [g for n in range(1, 9) for g in enumerate_graphs(n) if is_gatex(g)]
    return _small["graphs"]


def roundtrip_networks():
    out = []
    for seed in range(1000):
        net, labels = random_galled_tree(1 + seed % 40, 50000 + seed, cycle_prob=(0.3, 0.6, 0.9)[seed % 3])
        out.append((net, labels))
    return out


def accepted_instances():
    graphs = list(small_gatex()) + list(gatex_corpus())
    graphs += [g for g in random_graph_corpus() if is_gatex(g)]
    graphs += [explain(*nl) for nl in roundtrip_networks()[::5]]
    return graphs


def test_criterion_01_catalog_regeneration(tmp_path, capsys):
    with criterion(1, "mine 5..8 scans 13580 graphs, emits 25, complement-closed, one self-complementary") as info:
        out = tmp_path / "catalog.json"
        t = time.perf_counter()
        assert main(["mine", "--min", "5", "--max", "8", "--output", str(out)]) == 0
        elapsed = time.perf_counter() - t
        capsys.readouterr()
        data = json.loads(out.read_text())
        assert data["scanned_total"] == 13580
        assert data["size"] == 25
        ids = {e["id"] for e in data["catalog"]}
        assert all(e["complement_partner_id"] in ids for e in data["catalog"])
        assert sum(e["self_complementary"] for e in data["catalog"]) == 1
        assert [e["graph6"] for e in data["catalog"]] == load_catalog().graph6_lines()
        assert elapsed < 15 * 60
        info["detail"] = f"{elapsed:.1f}s"


@pytest.mark.slow
def test_criterion_02_nine_vertices():
    with criterion(2, "mining through n=9 adds no members") as info:
        t = time.perf_counter()
        cat = mine_forbidden(5, 9)
        elapsed = time.perf_counter() - t
        assert cat.scanned[9] == 274668
        assert cat.sizes().get(9, 0) == 0
        assert cat.graph6_lines() == load_catalog().graph6_lines()
        info["detail"] = f"{elapsed:.0f}s"


def test_criterion_03_backend_agreement():
    with criterion(3, "structural and forbidden backends agree (all n<=8, 10000 random n<=14)") as info:
        bad = 0
        total = 0
        for n in range(1, 9):
            for g in enumerate_graphs(n):
                total += 1
                bad += recognize_gatex_structural(g).accepted != recognize_gatex_forbidden(g).accepted
        for g in random_graph_corpus(10000, 14, 0):
            total += 1
            bad += recognize_gatex_structural(g).accepted != recognize_gatex_forbidden(g).accepted
        info["detail"] = f"{total} graphs, {bad} discrepancies"
        assert bad == 0


def test_criterion_04_explain_roundtrip():
    with criterion(4, "explain -> recognize -> pvr -> explain roundtrip on 1000 galled-trees") as info:
        cycles = 0
        for net, labels in roundtrip_networks():
            g = explain(net, labels)
            v = recognize_gatex_structural(g)
            assert v.accepted
            pvr = build_pvr_network(g)
            assert explain(pvr.net, pvr.labels) == g
            assert len(pvr.net.cycles()) == len(build_mdt(g).prime_nodes())
            cycles += len(pvr.cycles)
        info["detail"] = f"{cycles} cycles"


def test_criterion_05_solver_exactness():
    with criterion(5, "omega, chi, alpha equal brute force on corpus instances n<=12; stub gives 275") as info:
        from gatex.solvers import cycle_clique_dp
        stub = cycle_clique_dp(1, [[(0, (200, 2)), (1, (100, 4))],
                                   [(0, (75, 8)), (1, (50, 16)), (0, (25, 32))]], (50, 1))
        assert stub[0] == 275
        graphs = list(small_gatex()) + list(gatex_corpus())
        graphs += [g for g in random_graph_corpus() if g.n <= 12 and is_gatex(g)]
        for g in graphs:
            ref = brute_force_invariants(g)
            pvr = build_pvr_network(g)
            assert clique_number(g, pvr)[0] == ref["omega"]
            order, col = perfect_order_coloring(g, pvr)
            assert max(col, default=-1) + 1 == ref["chi"]
            assert independence_number(g, pvr)[0] == ref["alpha"]
            assert clique_number(complement(g))[0] == ref["alpha"]
        info["detail"] = f"{len(graphs)} instances"


def test_criterion_06_perfection_witnessed():
    with criterion(6, "greedy colours == omega; witnesses re-verify") as info:
        graphs = accepted_instances()
        for g in graphs:
            pvr = build_pvr_network(g)
            s = solve(g, pvr)
            order, col = perfect_order_coloring(g, pvr)
            assert max(col) + 1 == s.omega == s.chi
            assert is_proper_coloring(g, col) and is_proper_coloring(g, s.coloring)
            assert len(s.clique) == s.omega and is_clique(g, s.clique)
            assert len(s.independent_set) == s.alpha and is_independent(g, s.independent_set)
        info["detail"] = f"{len(graphs)} instances"


def test_criterion_07_orientation():
    with criterion(7, "transitive orientation passes the all-triples check") as info:
        graphs = accepted_instances()
        for g in graphs:
            o = transitive_orientation(g)
            assert o.is_orientation_of(g)
            out = o.out
            for a in range(g.n):
                for b in range(g.n):
                    if out[a] >> b & 1:
                        for c in range(g.n):
                            if out[b] >> c & 1:
                                assert out[a] >> c & 1
        info["detail"] = f"{len(graphs)} instances"


def test_criterion_08_twin_width():
    with criterion(8, "sequences verify at d=1; d=0 exactly for cographs") as info:
        graphs = accepted_instances()
        cographs = 0
        for g in graphs:
            seq = build_one_contraction_sequence(g)
            assert verify_sequence(g, seq, 1).ok
            at0 = verify_sequence(g, seq, 0).ok
            assert at0 == is_cograph(g)
            cographs += at0
        info["detail"] = f"{len(graphs)} instances, {cographs} cographs"


def test_criterion_09_hole_free():
    with criterion(9, "no accepted graph with n<=8 has a hole or anti-hole") as info:
        graphs = small_gatex()
        for g in graphs:
            assert not induced_cycle_lengths(g, 5)
            assert not induced_cycle_lengths(complement(g), 5)
        info["detail"] = f"{len(graphs)} graphs"


def test_criterion_10_solve_benchmark():
    with criterion(10, "solve on n=10000 galled-tree graphs under 1s each, recognition excluded") as info:
        times = []
        for seed in range(3):
            g = explain(*random_galled_tree(10000, seed))
            pvr = build_pvr_network(g)
            t = time.perf_counter()
            s = solve(g, pvr)
            times.append(time.perf_counter() - t)
            assert s.chi == s.omega
        info["detail"] = "max %.2fs" % max(times)
        assert max(times) < 1.0
