"""Exact computations with urSp(2g), its congruence subgroups and the handlebody group."""

from .congruence import (MembershipError, ObstructionUnresolved, conjugator_to_E12, factor_elementary,
                         factor_gamma2, factor_gammad, is_in_gamma)
from .freegroup import FreeGroupAutomorphism, is_IA
from .linalg import (DimensionError, IntegerMatrix, MatrixFormatError, NotUnimodularError, Symbol,
                     SymbolError, UrSpElement, determinant, embed_gl, format_matrix, is_in_level,
                     is_symplectic, is_unimodular, is_ursp, make_generator, multiply, parse_matrix,
                     reduce_mod, standard_form, symplectic_pairing, unimodular_inverse)
from .surface import (CurveTable, EtaUnresolvable, HomologyClass, Membership, calibrate_curve_table,
                      decompose_level_d, eta, eta_homology, lift_ursp_to_mcg, membership, psi,
                      twist_matrix, verify_relation)
from .symplectic import SgElement, factor_Sg, factor_ursp_level, is_in_Sg, verify_factorization
from .words import (ConjLetter, ConjugacyWord, Word, WordSyntaxError, evaluate_word, format_word,
                    parse_conjugacy_word, parse_word)

__version__ = "0.1.0"
