"""Poset representations of groups.

Builds the two-level Cayley poset P(G, S) and its relatives, decides
representation properties with an exact poset-automorphism engine, and
bundles reproduction scenarios for the classification results: girth
certificates for large-girth generator pairs, exhaustive non-existence
proofs on small groups, small cancellation checks on random
presentations, and layered windows over extensions of the integers.
"""

__version__ = "0.1.0"

from .groups import (Group, CyclicGroup, IntegerGroup, SymmetricGroup,
                     DihedralGroup, QuaternionGroup, SL2Group, FreeGroup,
                     DirectProductGroup, GroupAutomorphism, make_group,
                     parse_group, parse_element, group_automorphisms,
                     margulis_generators, identity_automorphism,
                     negation_automorphism)
from .words import (Word, reduce_word, cyclic_reduce, inverse_word, concat,
                    evaluate, parse_word, format_word, stallings_rank,
                    combine_words, StallingsGraph)
from .posets import (FinitePoset, LabeledDigraph, CayleySpec,
                     build_cayley_poset, build_haar_graph, build_drr_digraph,
                     build_babai_poset, complement_connection,
                     connection_generates)
from .cayley import (CayleyGraph, GirthResult, girth, neighborhood, affinity,
                     bfs_ball, BfsBall, ball_signature)
from .autos import (AutGroup, RepresentationVerdict, automorphism_group,
                    stabilizer_is_trivial, classify_action, left_action,
                    is_poset_automorphism, format_permutation)
from .search import (SearchReport, ThreeOrbitReport, search_cayley,
                     is_cayley_representation, reproduce_contraejemplos,
                     enumerate_three_orbit)
from .certificate import (MainTheoremCertificate, certify, f2_reference_table,
                          f2_neighborhood_tree, margulis_prime_scan,
                          margulis_girth_bound, cross_validate_small)
from .smallcancel import (Presentation, CancellationReport, parse_presentation,
                          max_piece_length, check_c_lambda,
                          count_cyclically_reduced, sample_few_relators,
                          sample_density)
from .extensions import (ExtensionGroupH, WindowedPoset, h_group, build_window,
                         check_action_on_window, gradedness,
                         rank_epimorphism_check, integer_window_poset,
                         maximal_chains_between)

__all__ = [name for name in dir() if not name.startswith("_")]
