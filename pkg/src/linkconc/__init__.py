"""Alexander modules, lift classes and a concordance obstruction for links.

Diagrams come in as PD codes. For a component ``K`` the Wirtinger
presentation of its exterior gives the Alexander module ``A(K)`` over
``Q[t, t^-1]`` via Fox calculus, and the other components give classes in it.
When those classes generate ``A(K)`` and ``K`` is slice, the link cannot be
concordant to one whose ``K``-component has coprime Alexander polynomial.
"""

from .diagram import (Crossing, DiagramError, LinkDiagram, connected_sum, insert_knot,
                      insert_twists, linking_matrix, linking_number, mirror, parse_pd,
                      reverse, sublink)
from .laurent import (AlgebraError, LaurentPoly, canonicalize, fox_milnor_check,
                      format_poly, gcd, parse_poly)
from .modules import (LaurentMatrix, ModuleElement, ModulePresentation, alexander_polynomial,
                      alexander_presentation, generates, is_trivial, lift_class, snf)
from .obstruction import (INCONCLUSIVE, OBSTRUCTED, ObstructionReport, PolynomialSet,
                          SlicenessAssertion, assert_slice, check_boundary, check_corollary,
                          find_twist_parameter, full_scan)
from .wirtinger import FreeWord, WirtingerData, abelianize, fox_derivative, wirtinger

__version__ = "0.1.0"
