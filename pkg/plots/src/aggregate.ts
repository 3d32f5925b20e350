/**
 * Per-configuration aggregates of the sweep rows: one series per distinct
 * initial opinion fraction u, one point per alpha.
 *
 * Means accumulate in file row order, so an independent reader that sums
 * the same column the same way reproduces them bit for bit.
 */

import type { SweepRow } from "./csv.js";

export interface AggregatePoint {
  alpha: number;
  n: number;
  mean: number;
  stddev: number;
  min: number;
  max: number;
  values: number[];
}

export interface Series {
  u: number;
  points: AggregatePoint[];
}

export interface Sidecar {
  input: string;
  aggregation: "scatter" | "mean";
  logX: boolean;
  series: {
    u: number;
    points: Omit<AggregatePoint, "values">[];
  }[];
}

export function aggregate(rows: SweepRow[]): Series[] {
  const byU = new Map<number, Map<number, number[]>>();
  for (const row of rows) {
    let byAlpha = byU.get(row.u);
    if (!byAlpha) {
      byAlpha = new Map();
      byU.set(row.u, byAlpha);
    }
    let values = byAlpha.get(row.alpha);
    if (!values) {
      values = [];
      byAlpha.set(row.alpha, values);
    }
    values.push(row.minorityFracFinal);
  }
  const series: Series[] = [];
  for (const u of [...byU.keys()].sort((a, b) => a - b)) {
    const byAlpha = byU.get(u)!;
    const points: AggregatePoint[] = [];
    for (const alpha of [...byAlpha.keys()].sort((a, b) => a - b)) {
      const values = byAlpha.get(alpha)!;
      let sum = 0;
      for (const v of values) sum += v;
      const mean = sum / values.length;
      let sq = 0;
      for (const v of values) sq += (v - mean) * (v - mean);
      const stddev = values.length > 1 ? Math.sqrt(sq / (values.length - 1)) : 0;
      points.push({
        alpha,
        n: values.length,
        mean,
        stddev,
        min: Math.min(...values),
        max: Math.max(...values),
        values,
      });
    }
    series.push({ u, points });
  }
  return series;
}

export function buildSidecar(
  input: string,
  aggregation: "scatter" | "mean",
  logX: boolean,
  series: Series[],
): Sidecar {
  return {
    input,
    aggregation,
    logX,
    series: series.map((s) => ({
      u: s.u,
      points: s.points.map(({ alpha, n, mean, stddev, min, max }) => ({
        alpha,
        n,
        mean,
        stddev,
        min,
        max,
      })),
    })),
  };
}
