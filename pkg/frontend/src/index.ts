/**
 * Thin TypeScript client for the prefforge CLI: sampling, distances and
 * embeddings run in the CLI process (exact parity with the library); the
 * client only converts to and from native arrays.  Stateless: every
 * sampling call requires a seed.
 */

import {
  ApprovalElection,
  Election,
  OrdinalElection,
  approval,
  ordinal,
} from "./formats.js";
import { rpc, runCli } from "./runner.js";

export * from "./formats.js";
export { runCli } from "./runner.js";

export interface Witness {
  variant: string;
  order?: number[];
  tree?: { kind: string; root: unknown };
}

export interface SampleOutcome {
  election: Election;
  /** parameters as the sampler resolved them (for manifests) */
  resolved: Record<string, unknown>;
  witness?: Witness;
}

interface RawSample {
  election: { m: number; votes?: number[][]; ballots?: number[][] };
  resolved: Record<string, unknown>;
  witness?: Witness;
}

/** Sample an election from a named culture; params mirror the CLI flags. */
export async function sample(
  culture: string,
  m: number,
  n: number,
  seed: number,
  params: Record<string, unknown> = {},
): Promise<SampleOutcome> {
  const raw = await rpc<RawSample>({ op: "sample", culture, m, n, seed, params });
  const election: Election = raw.election.votes
    ? ordinal(raw.election.m, raw.election.votes)
    : approval(raw.election.m, raw.election.ballots ?? []);
  return { election, resolved: raw.resolved, witness: raw.witness };
}

/** Kendall tau / swap distance between two rankings. */
export function swapDistance(u: number[], v: number[]): Promise<number> {
  return rpc<number>({ op: "swap_distance", u, v });
}

export function ballotDistance(
  u: number[],
  v: number[],
  metric: "hamming" | "jaccard" = "hamming",
): Promise<number> {
  return rpc<number>({ op: "ballot_distance", u, v, metric });
}

export interface ElectionDistanceOptions {
  method?: "exact" | "heuristic";
  restarts?: number;
  seed?: number;
}

function wire(e: OrdinalElection): { m: number; votes: number[][] } {
  return { m: e.m, votes: e.votes };
}

/** Isomorphic swap distance; the heuristic method returns an upper bound. */
export function electionDistance(
  e1: OrdinalElection,
  e2: OrdinalElection,
  options: ElectionDistanceOptions = {},
): Promise<number> {
  return rpc<number>({
    op: "election_distance",
    e1: wire(e1),
    e2: wire(e2),
    method: options.method ?? "exact",
    restarts: options.restarts ?? 20,
    seed: options.seed ?? 0,
  });
}

export interface VoteDistanceMatrix {
  matrix: number[][];
  multiplicities: number[];
}

export function voteDistanceMatrix(
  e: OrdinalElection,
  deduplicate = true,
): Promise<VoteDistanceMatrix> {
  return rpc<VoteDistanceMatrix>({
    op: "vote_distance_matrix",
    election: wire(e),
    deduplicate,
  });
}

export interface EmbedOptions {
  dims?: number;
  seed?: number;
  maxIter?: number;
  relTol?: number;
  nInit?: number;
}

export interface EmbedResult {
  coordinates: number[][];
  stress: number;
  kruskalStress: number;
  nIter: number;
}

/** SMACOF embedding of a symmetric distance matrix. */
export async function mdsEmbed(
  matrix: number[][],
  options: EmbedOptions = {},
): Promise<EmbedResult> {
  const raw = await rpc<{
    coordinates: number[][];
    stress: number;
    kruskal_stress: number;
    n_iter: number;
  }>({
    op: "mds_embed",
    matrix,
    dims: options.dims ?? 2,
    seed: options.seed ?? 0,
    max_iter: options.maxIter ?? 1000,
    rel_tol: options.relTol ?? 1e-6,
    n_init: options.nInit ?? 4,
  });
  return {
    coordinates: raw.coordinates,
    stress: raw.stress,
    kruskalStress: raw.kruskal_stress,
    nIter: raw.n_iter,
  };
}
