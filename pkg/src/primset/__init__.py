"""Primitivity of finite sets of nonnegative matrices.

Exact decision by semigroup search, the polynomial block-structure test for
sets without zero rows or columns, synchronizing automata, and the instance
families (3-SAT gadgets, coprime cycles, the extremal pair) used to probe
them.
"""
from .core import (BoolMatrix, DimensionError, MatrixSet, WordError, bool_product,
                   has_zero_row_or_col, is_positive, reach_sets, single_matrix_primitive,
                   transpose_set, word_product)
from .semigroup import (INF, LimitExceeded, ResourceLimits, Verdict, certify_not_primitive_closure,
                        decide_primitive_exact, shortest_positive_length)
from .pvstruct import (AssumptionViolated, NzVerdict, Outcome, Partition, check_assumption,
                       decide_primitive_nz, find_block_permutation_partition,
                       union_strongly_connected, verify_partition)
from .automata import (Automaton, SyncResult, bound_f_default, cerny_automaton,
                       construct_positive_product, extract_automaton, is_automaton,
                       is_synchronizing, positive_product_bound, shortest_sync_word)
from .generators import (CnfFormula, GadgetLayout, extremal_primitive_set, parse_dimacs,
                         prime_cycle_predicted_length, prime_cycle_set, sat_equivalence_check,
                         sat_gadgets, sat_witness_sequence)

__version__ = "0.1.0"
