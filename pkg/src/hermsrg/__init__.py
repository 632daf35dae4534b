"""Hermitian strongly regular graphs: exact constructions, switching and checks.

Subpackages and modules:

* ``gf`` finite fields GF(q^2) as lookup tables
* ``projgeom`` projective spaces, Hermitian varieties, Baer sublines, pencils
* ``graphcore`` bitset graphs, SRG checks, triple and clique censuses, isomorphism, graph6
* ``constructions`` NU(n+1, q^2) tangent graphs, unitals and their Gamma_U graphs
* ``switching`` the two-line switching that produces cospectral mates
* ``oracles`` brute-force checks of the counting lemmas, invariant certificates
"""
__version__ = "0.1.0"

from .constructions import (BMParams, Unital, UnitalError, build_gamma_u, build_nu,
                            build_unital_bm, build_unital_bm_alt, build_unital_bt,
                            build_unital_classical, check_unital, dual_unital, find_dual_onan,
                            find_onan, read_unital, valid_bm_params, validate_unital, write_unital)
from .gf import FieldElement, FieldTable, gf_q2, make_field
from .graphcore import (Graph, SRGParams, check_srg, export_graph6, gamma_u_params, import_graph6,
                        is_isomorphic, maximal_cliques, nu_params, triple_census)
from .projgeom import HermitianGeometry, hermitian_geometry, projective_space
from .switching import SwitchingConfig, build_switched, choose_config, special_triples

__all__ = [
    "BMParams", "FieldTable", "Graph", "HermitianGeometry", "SRGParams", "SwitchingConfig",
    "Unital", "UnitalError", "__version__", "build_gamma_u", "build_nu", "build_switched",
    "build_unital_bm", "build_unital_bm_alt", "build_unital_bt", "build_unital_classical",
    "check_srg", "check_unital", "choose_config", "dual_unital", "export_graph6", "find_dual_onan",
    "FieldElement", "find_onan", "gamma_u_params", "gf_q2", "make_field", "hermitian_geometry", "import_graph6", "is_isomorphic",
    "maximal_cliques", "nu_params", "projective_space", "read_unital", "special_triples",
    "triple_census", "valid_bm_params", "validate_unital", "write_unital",
]
