"""Central numeric tolerances.

Every magic constant used by the analysis modules lives in one frozen
record so that tests and the command line can reference or override them
symbolically instead of re-stating literals.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # root finding
    root_tol: float = 1e-13            # relative step tolerance of the simultaneous iteration
    root_max_iter: int = 200
    newton_polish_steps: int = 5
    cluster_radius_factor: float = 1e-7  # times (1 + Cauchy bound); merges multiple roots

    # curvature
    formula_agreement: float = 1e-9    # holomorphic route vs Hessian route, relative
    nonpositivity_slack: float = 1e-12
    grid_cell_cap: int = 16_777_216    # 4096 x 4096 samples

    # critical points and hulls
    degeneracy: float = 1e-8           # times (1 + max |second derivative coefficient|)
    collinearity: float = 1e-12        # times point spread, as a distance
    containment_slack: float = 1e-8    # absolute distance for hull membership

    # level-set topology
    level_equality: float = 1e-9       # times (1 + max |critical value|)
    band_width_factor: float = 1.5     # times max |gradient| times cell diagonal
    band_cover_limit: float = 0.9      # band may cover at most this fraction of the grid

    # curvature-equality decision
    unit_modulus: float = 1e-9
    coeff_match: float = 1e-9          # relative to the largest coefficient magnitude
    witness_threshold: float = 1e-6    # absolute, same-degree witnesses
    degree_witness_rel: float = 1e-3   # relative, different-degree circle witnesses
    witness_radius: float = 10.0       # smallest circle radius for degree witnesses
    loop_invariance: float = 1e-12


DEFAULT = Tolerances()
