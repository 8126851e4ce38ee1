"""Finitely presented commutative monoids and the fine faces of their charts.

The modules build on each other bottom-up: ``presentation`` (data model),
``rewriting`` (Groebner bases), ``lattice`` (integer linear algebra and
cones), ``structure`` (units, primes, faces, groupification), ``intsat``
(integralization and saturation), ``extcone`` (extended cones) and
``pipeline`` (fine and fs faces of charts and pushout charts).
"""

from .errors import (
    BudgetError,
    CombinatorialBlowupError,
    ContainmentError,
    DimensionError,
    InvalidMapError,
    InvalidPrimeError,
    MonoidError,
    NotIntegralError,
    OracleTooLargeError,
    ValidationError,
    VolumeCapError,
)
from .extcone import extend, extend_map, extended_fiber_product, theorem_c_check
from .intsat import ideal_quotient, integralize, localize, saturate, saturate_in_lattice
from .lattice import (
    Cone,
    cone_fiber_product,
    dual_description,
    hermite_normal_form,
    hilbert_basis,
    smith_normal_form,
)
from .pipeline import Diagram, fine_faces, fine_faces_of_diagram
from .presentation import MonoidMap, MonomialOrder, Presentation, compare, pushout, validate_map
from .rewriting import (
    buchberger,
    congruent,
    groebner,
    is_groebner,
    normal_form,
    oracle_closure,
    reduce_basis,
)
from .structure import enumerate_primes, face_presentation, groupify, is_integral, units

__version__ = "0.1.0"
