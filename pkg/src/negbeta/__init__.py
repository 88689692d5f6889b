"""Negative-base numeration: (-beta)-integers, their tiling anti-morphism and gap structure."""
__version__ = "0.1.0"

from .antimorphism import (Letter, PsiSystem, TwoSidedFixedPoint, fixed_point_view,
                           fixed_point_window, format_word, length, letter, parse_word, psi,
                           psi_power, psi_system, psi_word, y_position)
from .diagnostics import (DeloneReport, decay_witnesses, delone_report, gap_extremes,
                          large_gap_witnesses, small_gap_witnesses, ud_condition_probe)
from .named import NAMES, named_base, named_context, named_sequence
from .numeric import (AlgebraicReal, FieldElement, NoSignChange, NotIsolating,
                      RequiresAlgebraicMode, RootNotGreaterThanOne, StreamedReal,
                      UndecidableAtPrecision, equals, floor_of, largest_real_root, make_algebraic,
                      make_field, sign)
from .orbit import INF, BetaContext, OutOfDomain, iota, is_yrrap, orbit_extend, t_map
from .pointset import (BetaTooSmall, GapMorphism, LetterBudgetExceeded, PointSetWindow,
                       TooFewPoints, brute_force_oracle, derive_gap_morphism, gap_census,
                       gap_distances, gap_labels, y_enumerate, y_window, z_enumerate)
from .sequences import (SIGMA1, SIGMA2, DigitSequence, Morphism, SequenceFormatError,
                        builtin_sequences, parse_morphism, parse_sequence)
from .solver import (PreconditionFailed, alt_compare, alt_compare_strict, residual, solve_beta,
                     validate_admissibility, validate_expansion, validate_gora)
