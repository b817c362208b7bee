"""Name-based dispatch to every sampling culture.

One entry point, ``sample(culture, m, n, seed, **params)``, shared by the
command line and any external bindings, so both surfaces resolve
parameters identically.  The returned record carries the election, the
structure witness (if the culture has one), the sampled points (Euclidean
cultures) and the fully resolved parameters for the manifest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import approval as app
from . import ordinal as ord_
from .core import OrdinalElection, StructureWitness


@dataclass(frozen=True)
class SampleResult:
    election: "OrdinalElection | ApprovalElection"
    resolved: dict[str, Any]
    witness: StructureWitness | None = None
    voter_points: np.ndarray | None = None
    candidate_points: np.ndarray | None = None

    @property
    def is_ordinal(self) -> bool:
        return isinstance(self.election, OrdinalElection)


def _mallows_spec(m: int, params: dict) -> ord_.MallowsSpec:
    phi = params.pop("phi", None)
    norm_phi = params.pop("norm_phi", None)
    central = params.pop("central", None)
    return ord_.MallowsSpec(phi=phi, norm_phi=norm_phi, central=central)


def _space_spec(params: dict) -> ord_.SpaceSpec:
    return ord_.SpaceSpec(
        dimension=int(params.pop("dim", 2)),
        shape=params.pop("shape", "cube"),
        candidate_shape=params.pop("candidate_shape", None),
        voter_shape=params.pop("voter_shape", None),
    )


def _ballot_rule(m: int, params: dict) -> app.BallotRule:
    rule = params.pop("rule", "top")
    if rule == "top":
        if "top_x_range" in params:
            lo, hi = params.pop("top_x_range")
            return app.BallotRule.top_uniform(int(lo), int(hi))
        if "top_normal" in params:
            mu, sigma = params.pop("top_normal")
            return app.BallotRule.top_normal(mu, sigma)
        return app.BallotRule.top(int(params.pop("top_x", max(1, m // 2))))
    if rule == "radius":
        if "radius_range" in params:
            lo, hi = params.pop("radius_range")
            return app.BallotRule.radius_uniform(lo, hi)
        if "radius_multiple" in params:
            return app.BallotRule.radius_nearest_multiple(
                params.pop("radius_multiple")
            )
        dim = int(params.get("dim", 2))
        default = app.EUCLIDEAN_RADIUS_PRESETS.get(dim, 0.2)
        return app.BallotRule.radius(params.pop("radius", default))
    if rule == "candidate-top":
        return app.BallotRule.candidate_top(int(params.pop("top_x", 1)))
    raise ValueError(f"unknown ballot rule {rule!r}")


def sample(culture: str, m: int, n: int, seed: int, **params) -> SampleResult:
    """Sample an election from the named culture.

    Unknown cultures and leftover (misspelled) parameters raise
    ValueError; everything consumed is echoed back in ``resolved``.
    """
    culture = culture.lower().replace("_", "-")
    params = dict(params)
    resolved: dict[str, Any] = {"culture": culture, "m": m, "n": n, "seed": seed}
    witness = None
    points = (None, None)

    if culture == "ic":
        election = ord_.sample_impartial(m, n, seed)
    elif culture == "iac":
        election = ord_.sample_urn(m, n, ord_.iac_spec(m), seed)
        resolved["alpha"] = 1.0 / math.factorial(m)
    elif culture == "urn":
        alpha = float(params.pop("alpha", 0.5))
        election = ord_.sample_urn(m, n, ord_.UrnSpec(alpha=alpha), seed)
        resolved["alpha"] = alpha
    elif culture == "urn-gamma":
        shape = float(params.pop("gamma_shape", 0.8))
        scale = float(params.pop("gamma_scale", 1.0))
        election = ord_.sample_urn(
            m, n, ord_.UrnSpec(alpha_gamma=(shape, scale)), seed
        )
        resolved.update(gamma_shape=shape, gamma_scale=scale)
    elif culture == "mallows":
        spec = _mallows_spec(m, params)
        central, phi = spec.resolve(m)
        election = ord_.sample_mallows(m, n, spec, seed)
        resolved.update(
            phi=phi, norm_phi=spec.norm_phi, central=[int(c) for c in central]
        )
    elif culture == "balanced-two-mallows":
        phi = params.pop("phi", None)
        norm_phi = params.pop("norm_phi", None)
        spec = ord_.balanced_two_mallows(m, phi=phi, norm_phi=norm_phi)
        election = ord_.sample_mallows(m, n, spec, seed)
        resolved.update(phi=phi, norm_phi=norm_phi)
    elif culture == "euclidean":
        space = _space_spec(params)
        election, voters, cands = ord_.sample_euclidean(m, n, space, seed)
        points = (voters, cands)
        resolved.update(dim=space.dimension, shapes=list(space.shapes))
    elif culture == "walsh":
        election, witness = ord_.sample_walsh_single_peaked(m, n, seed)
    elif culture == "conitzer":
        election, witness = ord_.sample_conitzer_single_peaked(m, n, seed)
    elif culture == "spoc":
        election, witness = ord_.sample_spoc(m, n, seed)
    elif culture == "single-crossing":
        election, witness = ord_.sample_single_crossing(m, n, seed)
    elif culture == "group-separable":
        tree = params.pop("tree", "balanced")
        election, witness = ord_.sample_group_separable(m, n, tree, seed)
        resolved["tree"] = tree
    elif culture in ("id", "an", "un"):
        election = ord_.reference_election(culture.upper(), m, n, seed)
    elif culture == "p-ic":
        p = float(params.pop("p", 0.5))
        per_voter = bool(params.pop("per_voter", False))
        election = app.sample_p_ic(m, n, p, seed, per_voter=per_voter)
        resolved.update(p=p, per_voter=per_voter)
    elif culture == "resampling":
        spec = app.ResamplingSpec(
            p=float(params.pop("p", 0.25)), phi=float(params.pop("phi", 0.75))
        )
        election = app.sample_resampling(m, n, spec, seed)
        resolved.update(p=spec.p, phi=spec.phi)
    elif culture == "noise":
        spec = app.NoiseSpec(
            p=float(params.pop("p", 0.25)),
            phi=float(params.pop("phi", 0.75)),
            metric=params.pop("metric", "hamming"),
        )
        election = app.sample_noise(m, n, spec, seed)
        resolved.update(p=spec.p, phi=spec.phi, metric=spec.metric)
    elif culture == "euclidean-approval":
        rule = _ballot_rule(m, params)
        space = _space_spec(params)
        election, voters, cands = app.sample_euclidean_approval(
            m, n, space, rule, seed
        )
        points = (voters, cands)
        resolved.update(
            dim=space.dimension,
            shapes=list(space.shapes),
            rule={k: v for k, v in rule.__dict__.items() if v is not None},
        )
    elif culture in ("ci", "vi"):
        election, witness = app.sample_interval(m, n, culture.upper(), seed)
    elif culture == "party-list-urn":
        spec = app.PartyListSpec(
            variant="urn_parties",
            parties=int(params.pop("parties", 2)),
            alpha=float(params.pop("alpha", 0.5)),
        )
        election = app.sample_party_list(m, n, spec, seed)
        resolved.update(parties=spec.parties, alpha=spec.alpha)
    elif culture == "party-list-groups":
        spec = app.PartyListSpec(
            variant="uniform_groups",
            group_size=tuple(params.pop("group_size", (5, 20))),
            party_candidates=tuple(params.pop("party_candidates", (10, 30))),
        )
        election = app.sample_party_list(m, n, spec, seed)
        resolved.update(
            group_size=list(spec.group_size),
            party_candidates=list(spec.party_candidates),
        )
    elif culture == "truncated":
        base = params.pop("base", "ic")
        rule = _ballot_rule(m, params)
        inner = sample(base, m, n, seed, **params)
        params.clear()
        if not inner.is_ordinal:
            raise ValueError(f"truncation base {base!r} must be ordinal")
        election = app.truncate_to_approval(inner.election, rule, seed)
        resolved.update(
            base=inner.resolved,
            rule={k: v for k, v in rule.__dict__.items() if v is not None},
        )
    else:
        raise ValueError(f"unknown culture {culture!r}")

    if params:
        raise ValueError(f"unused parameters for {culture}: {sorted(params)}")
    if witness is not None:
        resolved["witness_variant"] = witness.variant
    return SampleResult(
        election,
        resolved,
        witness=witness,
        voter_points=points[0],
        candidate_points=points[1],
    )


ORDINAL_CULTURES = (
    "ic",
    "iac",
    "urn",
    "urn-gamma",
    "mallows",
    "balanced-two-mallows",
    "euclidean",
    "walsh",
    "conitzer",
    "spoc",
    "single-crossing",
    "group-separable",
    "id",
    "an",
    "un",
)

APPROVAL_CULTURES = (
    "p-ic",
    "resampling",
    "noise",
    "euclidean-approval",
    "ci",
    "vi",
    "party-list-urn",
    "party-list-groups",
    "truncated",
)

CULTURES = ORDINAL_CULTURES + APPROVAL_CULTURES
