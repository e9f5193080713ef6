"""Artin-Schreier-Witt symbols, conductors and the duality pairing over F_q((t))."""
from .algebra import FqElem, FqField, finite_field, fq_arith, fq_trace, lift, reduce_lift
from .asw import (ASWClass, conductor_dual, conductor_fil, enumerate_reduced, fil_level,
                  fil_log_level, filagree_report, matsuda_level, orthogonality_report,
                  reduce_class, sw_pair)
from .localfield import UnitQuot, build_unit_quot, order_identity_check, project_unit, unit_decompose
from .series import Laurent, LaurentRing, dlog, frobenius_series, parse_laurent, residue
from .witt import (WittVec, frobenius_witt, ghost, ghost_inverse, parse_witt, teichmuller,
                   universal_polys, verschiebung, wittvec_trace)

__version__ = "0.1.0"
