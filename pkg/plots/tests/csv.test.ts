import { describe, expect, it } from "vitest";

import { EXPECTED_HEADER, parseSweepCsv } from "../src/csv.js";

const HEADER = EXPECTED_HEADER.join(",");

describe("parseSweepCsv", () => {
  it("parses a well-formed row", () => {
    const text =
      HEADER +
      "\n" +
      "ctmc-weighted,0.3,0.5,100,400,2,123,50,50,1.25,no_discordant,0.12,2,true,0\n";
    const rows = parseSweepCsv(text);
    expect(rows).toHaveLength(1);
    const r = rows[0];
    expect(r.model).toBe("ctmc-weighted");
    expect(r.alpha).toBe(0.3);
    expect(r.u).toBe(0.5);
    expect(r.run).toBe(2);
    expect(r.simTime).toBe(1.25);
    expect(r.minorityFracFinal).toBe(0.12);
    expect(r.fragmented).toBe(true);
  });

  it("maps an empty sim_time (round-based model) to null", () => {
    const text =
      HEADER +
      "\n" +
      "dtmc,0.3,0.5,10,20,0,7,5,5,,no_discordant,0.0,1,false,0\n";
    expect(parseSweepCsv(text)[0].simTime).toBeNull();
  });

  it("accepts a header-only file", () => {
    expect(parseSweepCsv(HEADER + "\n")).toEqual([]);
  });

  it("names every missing column", () => {
    const broken = HEADER.replace("alpha,", "").replace("fragmented,", "");
    expect(() => parseSweepCsv(broken + "\n")).toThrow(
      /missing columns: alpha, fragmented/,
    );
  });

  it("rejects an empty file", () => {
    expect(() => parseSweepCsv("")).toThrow(/header/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseSweepCsv(HEADER + "\nctmc-weighted,0.3\n")).toThrow(
      /row 2/,
    );
  });
});
