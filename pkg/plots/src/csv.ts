/**
 * Strict reader for the sweep harness CSV.
 *
 * The schema is fixed; a file whose header deviates is rejected with an
 * error naming every missing column. Fields never contain separators or
 * quotes, so rows split on commas directly.
 */

export const EXPECTED_HEADER = [
  "model",
  "alpha",
  "u",
  "n_agents",
  "n_edges",
  "run",
  "seed",
  "steps",
  "effective_events",
  "sim_time",
  "absorb_reason",
  "minority_frac_final",
  "n_components",
  "fragmented",
  "wallclock_ms",
] as const;

export interface SweepRow {
  model: string;
  alpha: number;
  u: number;
  nAgents: number;
  nEdges: number;
  run: number;
  seed: string; // 64-bit; keep textual
  steps: number;
  effectiveEvents: number;
  simTime: number | null;
  absorbReason: string;
  minorityFracFinal: number;
  nComponents: number;
  fragmented: boolean;
  wallclockMs: number;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty file: expected the sweep CSV header");
  }
  const header = lines[0].split(",");
  const missing = EXPECTED_HEADER.filter((col) => !header.includes(col));
  if (missing.length > 0) {
    throw new Error(`CSV schema mismatch; missing columns: ${missing.join(", ")}`);
  }
  const index = new Map<string, number>();
  header.forEach((col, i) => index.set(col, i));
  const col = (fields: string[], name: string): string =>
    fields[index.get(name)!];

  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== header.length) {
      throw new Error(`row ${i + 1}: expected ${header.length} fields, got ${fields.length}`);
    }
    const simTimeRaw = col(fields, "sim_time");
    rows.push({
      model: col(fields, "model"),
      alpha: Number(col(fields, "alpha")),
      u: Number(col(fields, "u")),
      nAgents: Number(col(fields, "n_agents")),
      nEdges: Number(col(fields, "n_edges")),
      run: Number(col(fields, "run")),
      seed: col(fields, "seed"),
      steps: Number(col(fields, "steps")),
      effectiveEvents: Number(col(fields, "effective_events")),
      simTime: simTimeRaw === "" ? null : Number(simTimeRaw),
      absorbReason: col(fields, "absorb_reason"),
      minorityFracFinal: Number(col(fields, "minority_frac_final")),
      nComponents: Number(col(fields, "n_components")),
      fragmented: col(fields, "fragmented") === "true",
      wallclockMs: Number(col(fields, "wallclock_ms")),
    });
  }
  return rows;
}
