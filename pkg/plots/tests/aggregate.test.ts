import { describe, expect, it } from "vitest";

import { aggregate, buildSidecar } from "../src/aggregate.js";
import { EXPECTED_HEADER, parseSweepCsv } from "../src/csv.js";

const HEADER = EXPECTED_HEADER.join(",");

function row(alpha: number, u: number, minority: number, run: number): string {
  return `dtmc,${alpha},${u},10,20,${run},1,5,5,,no_discordant,${minority},1,false,0`;
}

describe("aggregate", () => {
  it("groups by u then alpha, both ascending", () => {
    const text = [
      HEADER,
      row(0.5, 0.5, 0.1, 0),
      row(0.1, 0.5, 0.2, 0),
      row(0.1, 0.2, 0.3, 0),
    ].join("\n");
    const series = aggregate(parseSweepCsv(text));
    expect(series.map((s) => s.u)).toEqual([0.2, 0.5]);
    expect(series[1].points.map((p) => p.alpha)).toEqual([0.1, 0.5]);
  });

  it("computes mean, stddev, extremes per configuration", () => {
    const text = [
      HEADER,
      row(0.1, 0.5, 0.1, 0),
      row(0.1, 0.5, 0.3, 1),
      row(0.1, 0.5, 0.2, 2),
    ].join("\n");
    const [s] = aggregate(parseSweepCsv(text));
    const p = s.points[0];
    expect(p.n).toBe(3);
    expect(p.mean).toBeCloseTo(0.2, 15);
    expect(p.stddev).toBeCloseTo(0.1, 12);
    expect(p.min).toBe(0.1);
    expect(p.max).toBe(0.3);
    expect(p.values).toEqual([0.1, 0.3, 0.2]); // file row order
  });

  it("single-run points have zero stddev", () => {
    const [s] = aggregate(parseSweepCsv([HEADER, row(0.1, 0.5, 0.4, 0)].join("\n")));
    expect(s.points[0].stddev).toBe(0);
  });

  it("sidecar drops raw values but keeps every aggregate", () => {
    const series = aggregate(
      parseSweepCsv([HEADER, row(0.1, 0.5, 0.4, 0), row(0.3, 0.5, 0.2, 0)].join("\n")),
    );
    const sidecar = buildSidecar("x.csv", "mean", false, series);
    expect(sidecar.series).toHaveLength(1);
    expect(sidecar.series[0].points.map((p) => p.alpha)).toEqual([0.1, 0.3]);
    expect((sidecar.series[0].points[0] as Record<string, unknown>).values).toBeUndefined();
    expect(sidecar.aggregation).toBe("mean");
  });
});
