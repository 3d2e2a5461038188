"""Exact verification of the unramified Sp(2n) x GL(1) zeta integral."""
from .characters import (
    CharacterCache,
    alternant,
    character_oracle,
    hom_sym,
    weyl_character,
    weyl_dimension,
)
from .euler import SatakeData, factorization_check, numeric_local_zeta, partial_l
from .rootdata import Weight, build_root_datum, is_dominant, pairing2, weyl_orbit_terms
from .symalg import (
    LaurentPoly,
    TruncSeries,
    lp_eval_numeric,
    lp_exact_div,
    lp_mul,
    parse,
    serialize,
    series_inverse,
    series_mul,
)
from .whittaker import WhittakerValue, cs_whittaker_value, modulus_half_exponent
from .zeta import (
    VerificationReport,
    abelian_lfactor_poly,
    local_zeta_series,
    standard_lfactor_poly,
    verify_gln_identity,
    verify_sl2_identity,
    verify_sp2n_identity,
)

__version__ = "0.1.0"
