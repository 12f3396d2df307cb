"""Exact computations for the dihedral quotient singularities C^2/D_{n,q}.

Layers, each usable on its own:

* ``contfrac``  Hirzebruch-Jung expansions and their i, j, l, b series
* ``groupdata`` everything derived from (n, q), including characters
* ``polyexact`` exact sparse polynomials, relative invariance, row reduction
* ``invgen``    invariant ring generators and a bounded-degree certificate
* ``specials``  rank one special modules, the auxiliary quiver and its cycles
* ``reconalg``  the reconstruction algebra: quiver, relations, labels
* ``moduli``    the charts of the minimal resolution and their gluing
"""

from .contfrac import DomainError, compute_series, dual_expand, duality_failures, evaluate, hj_expand
from .groupdata import (
    Character,
    GroupData,
    UnsupportedCase,
    W,
    build_group_data,
    char_hom,
    character_of,
    dual_graph,
    laufer_cycle,
    series_failures,
    valid_pairs,
)
from .invgen import Basis, invariant_generators, verify_generation
from .moduli import (
    Chart,
    GlueMap,
    build_chart,
    chart_exponents,
    charts,
    coordinate_ratios,
    glue_maps,
    smoothness_check,
    verify_chart_on_ratios,
    verify_glues,
)
from .polyexact import BiPoly, DivisionError, RatFunc, SparsePoly, is_relative_invariant, relative_invariant_dim
from .reconalg import (
    Presentation,
    build_quiver,
    ext2_expected,
    label_arrows,
    lambda_variant,
    relations,
    verify_relations,
)
from .specials import (
    assign_vertices,
    build_aux_quiver,
    special_generators,
    verify_cycle_realization,
    verify_two_generation,
)

group = build_group_data

__all__ = [name for name in dir() if not name.startswith("_")]
