"""Factorization graphs of finite groups.

Construct finite groups as explicit multiplication tables, enumerate their
subgroup lattices, build the graphs whose vertices are non-Frattini proper
subgroups with adjacency H ~ K iff G = HK, analyze forbidden structures
(isolated vertices, odd cycles, claws, K_{1,4}, induced squares), and verify
the corresponding classification statements over a generated corpus.
"""

__version__ = "0.1.0"

from .errors import (CapExceeded, CertificateError, EnumerationCapped,
                     FactGraphError, ParseError, ValidationError)
from .groups import (GroupTable, PermutationGenerators, StructureSummary,
                     abelian_invariants, direct_product, group_from_permutations,
                     quotient_group, semidirect_product, structure_probe)
from .presentations import (CosetTable, Presentation, coset_enumerate,
                            group_from_presentation, parse_presentation,
                            satisfies_presentation)
from .catalog import catalog_group, catalog_presentation
from .subgroups import (ProductProfile, Subgroup, SubgroupLattice,
                        enumerate_subgroups, frattini_subgroup, is_factorizable,
                        normal_structure, product_profile)
from .factor_graph import (FactorizationGraph, build_graph, export_graph,
                           quotient_graph_embedding, reduce_graph)
from .graph_analysis import (SimpleGraph, bipartite_structure, components,
                             equals_complement_of, find_induced)
from .verify import (CorpusConfig, TheoremReport, TheoremVerdict, are_isomorphic,
                     check_bipartite_theorem, check_claw_corollary,
                     check_connectivity_theorem, check_k14_theorem,
                     check_square_lemma, check_squarefree_theorem,
                     frobenius_status, run_corpus)
