"""Lattice and knot lattice homology for negative-definite plumbing forests,
with the chain-level dual-knot/involutive surgery formula."""

from .complexes import (CellMap, FilteredCubeComplex, a_star,
                        build_knot_complex, build_lattice_complex, p1, p2,
                        point_complex, shift, shift2, sigma_swap, tensor)
from .family import (KnotComplexFamily, family_from_graph, family_from_line,
                     family_from_points, flip_Gamma, involution_I,
                     involution_J, tensor_families)
from .grading import (KnotSpinCSystem, SpinC, SpinCSystem, SurgerySpinC, a_hat,
                      spinc_orbits,
                      canonical_char, char_square, conjugate_index,
                      descend_to_kt, grading_shift, grf_value,
                      translated_conjugate_index)
from .homology import (alexander_range, assoc_graded_homology, d_invariant,
                       top_alexander_rank, total_homology)
from .plumbing import (GraphError, IntersectionForm, PlumbingGraph,
                       cocore_self_pairing, determinant, is_negative_definite,
                       minimal_cycle, minimal_cycles_per_component, parse_graph,
                       seifert_framing, sigma0, sigma0_squared)
from .reduction import (BoxCertificate, CalibrationError, CertificateError,
                        FilteredLine, TauFunction, alpha_gamma, ar_line,
                        brieskorn_core_graph, brieskorn_fiber_graph,
                        calibrated_tau, certify_box, is_subcontractible_knot,
                        simplify_line, tau_lattice_oracle)
from .surgery import (SurgeryDiagram, assemble, build_diagram,
                      dual_knot_filtration, surgered_family,
                      transport_involutions, verify_surgery)

__all__ = [name for name in dir() if not name.startswith("_")]
