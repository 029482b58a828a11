"""Active learning of deterministic real-time one-counter automata.

The package combines an L*-style observation table with counter-value
queries, a SAT-backed minimal separating DFA miner, and bounded
equivalence checks that return length-lex-minimal counterexamples.
"""

from .automata import (Configuration, Dfa, Droca, RunTrace, doubled,
                       doubled_alphabet, pretty_encoded, sgn, undouble,
                       validate)
from .equivalence import (ACCEPT_MISMATCH, COUNTER_DESYNC, Counterexample,
                          Verdict, brute_force_equiv, check_sync_equiv,
                          reach_witness, voca_check_equiv)
from .errors import (ConstructionConflict, GenerationFailure, InvalidInput,
                     LearnTimeout, ParseError, SampleConflict, SolverError,
                     SolverTimeout, TableIncomplete, WorkbenchError)
from .generate import GenConfig, derive_seed, generate_droca, reachable_count, splitmix64
from .io import load, load_file, store, store_file
from .learning import (LearnConfig, SimulatedTeacher, Stats, Teacher,
                       actions_vector, construct_droca, learn,
                       simulated_teacher)
from .minsepdfa import (Apta, SampleSet, build_apta, build_samples,
                        encode_size_n, find_min_sep_dfa, strip_operations)
from .sat import CnfInstance, SolverConfig, sat_solve, solve_builtin
from .table import ActionsVector, ObservationTable, similar
from .bench import BenchConfig, CSV_HEADER, run_benchmark

__all__ = [name for name in dir() if not name.startswith("_")]
