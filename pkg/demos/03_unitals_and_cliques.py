"""Unitals in PG(2, q^2), their tangent graphs, and maximal-clique censuses.

The classical unital gives back NU(3, q^2).  A Buekenhout-Metz unital gives
a graph with the same parameters whose clique census differs.
"""
from hermsrg.constructions import (build_gamma_u, build_unital_bm, build_unital_classical,
                                   check_unital, find_dual_onan, valid_bm_params)
from hermsrg.graphcore import check_srg, maximal_cliques

q = 3
classical = build_unital_classical(q)
bm = build_unital_bm(q, valid_bm_params(q)[0])
for name, U in (("classical", classical), ("Buekenhout-Metz", bm)):
    rep = check_unital(U)
    G = build_gamma_u(U)
    cl = maximal_cliques(G)
    onan = find_dual_onan(U)
    print(f"{name}: {rep.n_points} points, {rep.n_tangent} tangents, {rep.n_secant} secants")
    print(f"  graph {check_srg(G).as_tuple()}, maximal cliques by size {dict(sorted(cl.counts.items()))}")
    print(f"  O'Nan configuration in the dual: {'none' if onan is None else onan.lines}")
