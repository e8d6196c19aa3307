import os
import subprocess

import pytest

import capcover as cc

TRIANGLE = "cvc 3 3\nv 1 1\nv 2 1\nv 3 1\ne 1 2\ne 2 3\ne 1 3\n"


def test_triangle_all_solvers():
    g = cc.parse_instance(TRIANGLE)
    assert g.num_vertices == 3 and g.num_edges == 3
    results = [
        cc.solve_exact(g),
        cc.solve_cutdp(g),
        cc.solve_cutdp(g, order=[3, 1, 2]),
        cc.solve_vi_min(g),
        cc.solve_fes(g),
    ]
    for r in results:
        assert r.min_size == 3
        rep = cc.verify_orientation(g, r.certificate)
        assert rep.feasible and rep.size == 3


def test_infeasible_and_decision():
    g = cc.parse_instance(TRIANGLE)
    g.set_capacity(1, 0)
    assert cc.solve_exact(g).min_size is None
    assert cc.solve_exact(g).certificate is None
    h = cc.parse_instance(TRIANGLE)
    assert cc.solve_pruned(h, 3).yes
    assert not cc.solve_pruned(h, 2).yes
    assert not cc.solve_vi(h, 2).yes


def test_build_graph_and_violations():
    g = cc.Graph(3)
    g.add_edge(1, 2)
    g.add_edge(2, 3)
    g.set_capacity(2, 1)
    o = cc.Orientation([2, 2])
    rep = cc.verify_orientation(g, o)
    assert not rep.feasible
    assert rep.violations[0].vertex == 2 and rep.violations[0].indegree == 2
    assert cc.solve_exact(g).min_size is None
    g.set_capacity(1, 1)
    g.set_capacity(3, 1)
    assert cc.solve_exact(g).min_size == 2


def test_errors_are_python_exceptions():
    with pytest.raises(cc.ParseError):
        cc.parse_instance("cvc 1 1\nv 1 1\ne 1 1\n")
    g = cc.Graph(2)
    g.add_edge(1, 2)
    with pytest.raises(cc.StructuralError):
        g.add_edge(2, 1)
    assert issubclass(cc.CapExceeded, ValueError)


@pytest.mark.parametrize("seed", range(12))
def test_random_agreement(seed):
    g = cc.random_gnp(7, 0.5, seed)
    want = cc.solve_exact(g).min_size
    assert cc.solve_cutdp(g, exact=True).min_size == want
    assert cc.solve_vi_min(g).min_size == want
    assert cc.solve_fes(g).min_size == want


def test_reductions():
    r = cc.reduce_smc("smc 1 1 1 1\nset 1 1\n")
    assert cc.solve_pruned(r.graph, r.k).yes == cc.smc_brute_force("smc 1 1 1 1\nset 1 1\n")
    cnf = "p cnf 3 1\n1 2 3 0\n"
    cw = cc.reduce_sat_cw(cnf)
    assert cw.verify_expression()
    assert cc.solve_canonical(cw.graph, cw.meta, cw.k).yes == cc.one_in_three_brute_force(cnf)
    nat = cc.reduce_sat_natural(cnf)
    assert cc.solve_canonical(nat.graph, nat.meta, nat.k).yes
    td = cc.reduce_mcc_td("mcc 2 2\nclass 1 1 2\nclass 2 3 4\ne 2 3\n")
    assert td.gamma == 12
    assert td.witness_depth() is not None
    assert cc.solve_canonical(td.graph, td.meta, td.k).yes


def test_detecting():
    fam = cc.build_family(4, 2)
    assert cc.is_detecting(4, fam, 2)
    assert len(fam) == 3
    assert not cc.is_detecting(2, [[1, 2]], 2)


@pytest.mark.skipif("CAPCOVER_CLI" not in os.environ, reason="cli path not provided")
def test_cli_solve(tmp_path):
    path = tmp_path / "tri.cvc"
    path.write_text(TRIANGLE)
    out = subprocess.run([os.environ["CAPCOVER_CLI"], "solve", "--input", str(path)],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout == "MINSIZE 3\n"
