"""Letter-linking invariants on free-group words, the graph calculus that
organizes them, and the free differential calculus for cross-checks."""

from .errors import (
    InconsistentSystem,
    InvalidEdge,
    InvalidSymbol,
    LabelMismatch,
    LetterLinkError,
    MixedGrading,
    NoValidOrder,
    NonzeroCount,
    NotATree,
    NotInGamma,
    ParseError,
    SameGenerator,
    SingularMatrix,
    TooLarge,
    UndefinedInvariant,
    UndefinedReduction,
    UnknownGenerator,
)
from .words import (
    Letter,
    Word,
    commutator,
    free_reduce,
    invert,
    multiply,
    parse_word,
    random_gamma_element,
    relabel,
    word,
)
from .symbols import (
    Symbol,
    SymbolSum,
    equivalent,
    leibniz_terms,
    parse_symbol,
    preimages_of_symbol,
    relabel_symbol,
    symbol,
)
from .linking import (
    Cobounding,
    List,
    count,
    enumerate_coboundings,
    eval_symbol,
    eval_symbol_sum,
    link,
    link_via_cobounding,
    prefix_potential,
    standard_list,
    symbol_list,
)
from .eil import (
    GraphSum,
    SymbolGraph,
    canonicalize,
    default_order,
    distinct_reduce,
    enumerate_distinct_vertex_graphs,
    eval_graph,
    graph_of_symbol,
    parse_graph,
    reduce_at,
    reduce_full,
)
from .lie import (
    BracketTree,
    LieElement,
    configuration_pairing,
    extended_pairing,
    lie_coordinates,
    lie_image_of_bracket_word,
    lyndon_basis,
    parse_lie,
)
from .fox import (
    GroupRingElement,
    augmentation,
    fox_derivative,
    fox_eval,
    iterated_fox,
)

__version__ = "0.1.0"
