/**
 * Election file formats, byte-compatible with the CLI's canonical writers:
 * PrefLib soc (strict complete orders), PrefLib toi (approval sets as one
 * tied top group) and Pabulib .pb.
 */

export interface OrdinalElection {
  kind: "ordinal";
  m: number;
  /** one row per voter, candidate indices 0..m-1, most-preferred first */
  votes: number[][];
}

export interface ApprovalElection {
  kind: "approval";
  m: number;
  /** one row per voter, approved candidate indices sorted ascending */
  ballots: number[][];
}

export type Election = OrdinalElection | ApprovalElection;

export function ordinal(m: number, votes: number[][]): OrdinalElection {
  for (const vote of votes) {
    if (vote.length !== m || [...vote].sort((a, b) => a - b).some((c, i) => c !== i)) {
      throw new Error(`vote [${vote}] is not a permutation of 0..${m - 1}`);
    }
  }
  return { kind: "ordinal", m, votes: votes.map((v) => [...v]) };
}

export function approval(m: number, ballots: number[][]): ApprovalElection {
  const clean = ballots.map((ballot) => {
    const sorted = [...new Set(ballot)].sort((a, b) => a - b);
    if (sorted.some((c) => c < 0 || c >= m)) {
      throw new Error(`ballot [${ballot}] outside 0..${m - 1}`);
    }
    return sorted;
  });
  return { kind: "approval", m, ballots: clean };
}

// --------------------------------------------------------------------------
// writers (canonical, deterministic)

function aggregateRows(rows: string[]): Array<[number, string]> {
  const out: Array<[number, string]> = [];
  for (const row of rows) {
    const last = out[out.length - 1];
    if (last && last[1] === row) {
      last[0] += 1;
    } else {
      out.push([1, row]);
    }
  }
  return out;
}

function preflibBody(kind: string, m: number, n: number, rows: string[]): string {
  const aggregated = aggregateRows(rows);
  const unique = new Set(aggregated.map(([, row]) => row)).size;
  const lines = [
    `# FILE NAME: election.${kind}`,
    `# TITLE: election`,
    `# DATA TYPE: ${kind}`,
    `# NUMBER ALTERNATIVES: ${m}`,
    `# NUMBER VOTERS: ${n}`,
    `# NUMBER UNIQUE ORDERS: ${unique}`,
  ];
  for (let i = 1; i <= m; i += 1) {
    lines.push(`# ALTERNATIVE NAME ${i}: ${i}`);
  }
  for (const [count, row] of aggregated) {
    lines.push(`${count}: ${row}`);
  }
  return lines.join("\n") + "\n";
}

export function writeSoc(e: OrdinalElection): string {
  const rows = e.votes.map((vote) => vote.map((c) => c + 1).join(","));
  return preflibBody("soc", e.m, e.votes.length, rows);
}

export function writeToi(e: ApprovalElection): string {
  const rows = e.ballots.map((ballot) => {
    if (ballot.length === 0) return "";
    const inner = ballot.map((c) => c + 1).join(",");
    return ballot.length === 1 ? inner : `{${inner}}`;
  });
  return preflibBody("toi", e.m, e.ballots.length, rows);
}

export function writePb(e: ApprovalElection): string {
  const lines = [
    "META",
    "key;value",
    "description;synthetic approval election",
    "vote_type;approval",
    `num_projects;${e.m}`,
    `num_votes;${e.ballots.length}`,
    "PROJECTS",
    "project_id;cost",
  ];
  for (let i = 1; i <= e.m; i += 1) {
    lines.push(`${i};1`);
  }
  lines.push("VOTES", "voter_id;vote");
  e.ballots.forEach((ballot, i) => {
    lines.push(`${i + 1};${ballot.map((c) => c + 1).join(",")}`);
  });
  return lines.join("\n") + "\n";
}

export function writeElection(e: Election, format: "soc" | "toi" | "pb"): string {
  if (format === "soc") {
    if (e.kind !== "ordinal") throw new Error("soc files hold ordinal votes");
    return writeSoc(e);
  }
  if (e.kind !== "approval") throw new Error(`${format} files hold approval ballots`);
  return format === "toi" ? writeToi(e) : writePb(e);
}

// --------------------------------------------------------------------------
// parsers

interface PreflibRow {
  count: number;
  groups: number[][];
}

function parsePreflib(text: string): { m: number; n: number; rows: PreflibRow[] } {
  let m: number | undefined;
  let n: number | undefined;
  const rows: PreflibRow[] = [];
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trim();
    if (!line) continue;
    if (line.startsWith("#")) {
      const body = line.replace(/^#+\s*/, "");
      const sep = body.indexOf(":");
      if (sep < 0) throw new Error(`bad metadata line: ${line}`);
      const key = body.slice(0, sep).trim().toUpperCase();
      const value = body.slice(sep + 1).trim();
      if (key === "NUMBER ALTERNATIVES") m = Number(value);
      if (key === "NUMBER VOTERS") n = Number(value);
      continue;
    }
    const sep = line.indexOf(":");
    if (sep < 0) throw new Error(`expected 'count: ranking', got: ${line}`);
    const count = Number(line.slice(0, sep).trim());
    if (!Number.isInteger(count) || count < 0) {
      throw new Error(`bad count in: ${line}`);
    }
    const groups: number[][] = [];
    const ranking = line.slice(sep + 1).trim();
    let i = 0;
    while (i < ranking.length) {
      if (ranking[i] === ",") {
        i += 1;
      } else if (ranking[i] === "{") {
        const end = ranking.indexOf("}", i);
        if (end < 0) throw new Error(`unterminated tie group in: ${line}`);
        const members = ranking
          .slice(i + 1, end)
          .split(",")
          .filter((t) => t.trim())
          .map((t) => Number(t.trim()) - 1);
        groups.push(members);
        i = end + 1;
      } else {
        let end = ranking.indexOf(",", i);
        if (end < 0) end = ranking.length;
        groups.push([Number(ranking.slice(i, end).trim()) - 1]);
        i = end;
      }
    }
    rows.push({ count, groups });
  }
  if (m === undefined || n === undefined) {
    throw new Error("missing NUMBER ALTERNATIVES / NUMBER VOTERS header");
  }
  const total = rows.reduce((acc, row) => acc + row.count, 0);
  if (total !== n) {
    throw new Error(`NUMBER VOTERS is ${n} but vote counts sum to ${total}`);
  }
  return { m, n, rows };
}

export function parseSoc(text: string): OrdinalElection {
  const { m, rows } = parsePreflib(text);
  const votes: number[][] = [];
  for (const { count, groups } of rows) {
    if (groups.some((g) => g.length !== 1) || groups.length !== m) {
      throw new Error("soc rows must be strict complete orders");
    }
    const vote = groups.map((g) => g[0]);
    for (let k = 0; k < count; k += 1) votes.push([...vote]);
  }
  return ordinal(m, votes);
}

export function parseToi(text: string): ApprovalElection {
  const { m, rows } = parsePreflib(text);
  const ballots: number[][] = [];
  for (const { count, groups } of rows) {
    if (groups.length > 2) {
      throw new Error("toi approval rows carry at most two tie groups");
    }
    const ballot = groups.length ? groups[0] : [];
    for (let k = 0; k < count; k += 1) ballots.push([...ballot]);
  }
  return approval(m, ballots);
}

export function parsePb(text: string): ApprovalElection {
  let section = "";
  let sawHeader = false;
  const projectIds: string[] = [];
  const voteFields: string[] = [];
  let voteColumn = -1;
  let idColumn = -1;
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trimEnd();
    if (!line.trim()) continue;
    const upper = line.trim().toUpperCase();
    if (upper === "META" || upper === "PROJECTS" || upper === "VOTES") {
      section = upper;
      sawHeader = false;
      continue;
    }
    if (!section) throw new Error("content before the META section");
    const cells = line.split(";");
    if (!sawHeader) {
      sawHeader = true;
      if (section === "PROJECTS") idColumn = cells.indexOf("project_id");
      if (section === "VOTES") voteColumn = cells.indexOf("vote");
      continue;
    }
    if (section === "PROJECTS") {
      projectIds.push(cells[idColumn].trim());
    } else if (section === "VOTES") {
      voteFields.push(voteColumn >= 0 ? (cells[voteColumn] ?? "") : "");
    }
  }
  if (projectIds.length === 0) throw new Error("missing or empty PROJECTS section");
  const index = new Map(projectIds.map((id, i) => [id, i]));
  const ballots = voteFields.map((field) => {
    const ballot: number[] = [];
    for (const token of field.split(",")) {
      const id = token.trim();
      if (!id) continue;
      const at = index.get(id);
      if (at === undefined) throw new Error(`vote references unknown project ${id}`);
      ballot.push(at);
    }
    return ballot;
  });
  return approval(projectIds.length, ballots);
}

export function parseElection(text: string, format: "soc" | "toi" | "pb"): Election {
  if (format === "soc") return parseSoc(text);
  if (format === "toi") return parseToi(text);
  return parsePb(text);
}
