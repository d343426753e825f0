"""Exact-arithmetic symplectic genus, minimal genus and sphere-class
orbits on the cohomology lattices of rational and ruled 4-manifolds."""

from .lattice import (
    S2XS2,
    CohClass,
    ClassSyntaxError,
    Model,
    canonical_k0,
    class_type,
    coh,
    divisibility,
    e_class,
    format_class,
    gram_matrix,
    hyperbolic_complement,
    is_characteristic,
    model_from_spec,
    pair,
    parse_class,
    rational,
    ruled,
    square,
)
from .moves import (
    AutoWord,
    Move,
    apply_move,
    apply_word,
    compose,
    flip_e,
    identity_word,
    invert,
    is_realizable_reflection,
    make_word,
    neg_id,
    reflect,
    reflection,
    swap_e,
    verify_isometry,
    word_from_json,
    word_to_json,
)
from .reduction import (
    ReductionResult,
    classify_exceptional,
    cremona2_step,
    cremona_step,
    exceptional_class,
    is_reduced,
    normalize,
    reduce_class,
    ruled_step,
)
from .genus import (
    EtaResult,
    GenusReport,
    eta_k0,
    genus_sign_sq_minus2,
    minimal_genus,
    multiple_genus,
    symplectic_genus,
)
from .spheres import SphericalVerdict, is_spherical, spherical_verdict
from .orbits import OrbitCensus, OrbitRep, canonical_rep, invariant_triple, orbit_census, same_orbit
from .cones import (
    PairingCheck,
    PcellVerdict,
    exceptional_k0_classes,
    in_pcell_k0,
    reduced_pairing_check,
)
from .oracle import (
    OracleReport,
    bfs_orbit,
    generator_inventory,
    iter_classes,
    verify_orbit_reps,
    verify_reduction,
)

__version__ = "0.1.0"
