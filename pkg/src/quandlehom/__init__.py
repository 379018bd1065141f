"""Exact homology of finite quandles and the invariants built on it."""

from .errors import (
    ElementMismatchError,
    GaussCodeError,
    InvalidModulusError,
    NotAGroupError,
    NotAQuandleError,
    NotAQuasigroupError,
    NotOddOrderError,
    QuandleHomError,
    ResourceLimitError,
    SpecParseError,
)
from .groups import (
    ExtSquare,
    FinAbGroup,
    FiniteGroup,
    cyclic,
    direct_product,
    from_mult_table,
    g4_27,
    group_from_json,
    heisenberg3,
    make_group,
    parse_group_spec,
)
from .homology import (
    Chain,
    HomologyGroup,
    boundary,
    boundary_matrix,
    boundary_of_chain,
    chain_basis,
    class_in_ext_square,
    cohomology2_dim,
    h2_presentation_quasigroup,
    homology,
    wedge_to_cycle,
)
from .cocycle import (
    CocycleFailure,
    TwoCocycle,
    central_extension,
    coboundary,
    generator_cocycle,
    is_coboundary,
    validate,
)
from .intlinalg import SmithResult, SparseIntMatrix, matmul, nullspace_mod_p, rank_mod_p, smith
from .links import (
    VirtualLinkDiagram,
    colorings,
    diagram_class,
    generator_diagram,
    parse_gauss,
    state_sum,
    two_chain,
)
from .quandle import (
    AxiomReport,
    FiniteQuandle,
    core,
    dihedral,
    parse_quandle_spec,
    quandle_from_json,
    takasaki,
    verify_axioms,
)

__version__ = "0.1.0"
