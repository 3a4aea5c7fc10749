"""Sequentially Cohen-Macaulay modules over polynomial rings: exact decision procedures."""

__version__ = "0.1.0"

from .algebra import QQ, CoordinateChange, Element, Field, FreeModule, MonomialOrder, ring  # noqa: E402
from .analysis import (  # noqa: E402
    RouteDisagreement, edepth, edepth_gin_equiv, is_filter_regular, is_i_scm, is_scm, is_scm_gin,
    is_scm_peskine, is_scm_schenzel, is_strictly_filter_regular, lex_comparison,
)
from .groebner import DegreeCapExceeded, GinDisagreement, buchberger, gin, gin_r  # noqa: E402
from .hilbert import HilbertSeries, LCHilbert  # noqa: E402
from .homological import GradedModule, free_resolution  # noqa: E402
from .monomial import (  # noqa: E402
    MonomialIdeal, MonomialModule, MonomialPrime, associated_primes, bracket, dimension_filtration,
    is_weakly_stable, lex_ideal, weakly_stable_filtration,
)
from .simplicial import (  # noqa: E402
    SimplicialComplex, alexander_dual, hochster_lc, is_cm, is_componentwise_linear, is_scm_duval,
    pure_skeleton, reduced_homology, stanley_reisner_ideal,
)
