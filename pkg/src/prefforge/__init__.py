"""prefforge: statistical cultures for ordinal and approval elections,
swap-distance metrics, and MDS maps of elections."""

from .approval import (
    EUCLIDEAN_RADIUS_PRESETS,
    RESAMPLING_RECOMMENDED_P,
    RESAMPLING_RECOMMENDED_PHI,
    BallotRule,
    NoiseSpec,
    PartyListSpec,
    ResamplingSpec,
    sample_euclidean_approval,
    sample_interval,
    sample_noise,
    sample_p_ic,
    sample_party_list,
    sample_resampling,
    truncate_to_approval,
)
from .cartography import (
    MAP_DEFAULT_SIZE,
    MICROSCOPE_DEFAULT_SIZE,
    Embedding,
    map_distance_matrix,
    map_layout,
    mds_embed,
    microscope_layout,
)
from .core import (
    ApprovalElection,
    GSTree,
    OrdinalElection,
    StructureWitness,
    validate_structure,
)
from .metrics import (
    ballot_distance,
    election_distance_exact,
    election_distance_heuristic,
    swap_distance,
    vote_distance_matrix,
)
from .ordinal import (
    EuclideanSample,
    MallowsMixtureSpec,
    MallowsSpec,
    SpaceSpec,
    UrnSpec,
    balanced_two_mallows,
    expected_swap_distance,
    iac_spec,
    phi_from_norm_phi,
    reference_election,
    sample_conitzer_single_peaked,
    sample_euclidean,
    sample_group_separable,
    sample_impartial,
    sample_mallows,
    sample_single_crossing,
    sample_spoc,
    sample_urn,
    sample_walsh_single_peaked,
)
from .pabulib import PabulibFile, parse_pabulib, serialize_pabulib
from .preflib import ParseError, PreflibFile, parse_preflib, serialize_preflib
from .registry import CULTURES, SampleResult, sample
from .regimes import REGIMES, SizeRegime, sample_regime

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
