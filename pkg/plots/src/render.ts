/**
 * CLI: render a sweep CSV to an SVG figure plus a sidecar JSON holding the
 * plotted aggregates (the machine-checkable output; tests target it).
 *
 * Usage:
 *   render --in sweep.csv --out fig.svg [--agg mean|scatter] [--log-x]
 *
 * The sidecar lands next to the image at "<out>.json".
 */

import { readFile, writeFile } from "fs/promises";

import { aggregate, buildSidecar } from "./aggregate.js";
import { parseSweepCsv } from "./csv.js";
import { renderChart } from "./svg.js";

export interface RenderSpec {
  input: string;
  output: string;
  aggregation: "scatter" | "mean";
  logX: boolean;
}

export function parseArgs(argv: string[]): RenderSpec {
  let input: string | undefined;
  let output: string | undefined;
  let aggregation: "scatter" | "mean" = "scatter";
  let logX = false;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in") {
      input = argv[++i];
    } else if (arg === "--out") {
      output = argv[++i];
    } else if (arg === "--agg") {
      const value = argv[++i];
      if (value !== "scatter" && value !== "mean") {
        throw new Error(`--agg must be "scatter" or "mean", got ${value}`);
      }
      aggregation = value;
    } else if (arg === "--log-x") {
      logX = true;
    } else {
      throw new Error(`unknown argument: ${arg}`);
    }
  }
  if (!input || !output) {
    throw new Error("usage: render --in sweep.csv --out fig.svg [--agg mean|scatter] [--log-x]");
  }
  return { input, output, aggregation, logX };
}

export async function render(spec: RenderSpec): Promise<{ svgPath: string; sidecarPath: string }> {
  const text = await readFile(spec.input, "utf-8");
  const rows = parseSweepCsv(text);
  const series = aggregate(rows);
  const svg = renderChart(series, {
    aggregation: spec.aggregation,
    logX: spec.logX,
  });
  const sidecar = buildSidecar(spec.input, spec.aggregation, spec.logX, series);
  const sidecarPath = spec.output + ".json";
  await writeFile(spec.output, svg, "utf-8");
  await writeFile(sidecarPath, JSON.stringify(sidecar, null, 2) + "\n", "utf-8");
  return { svgPath: spec.output, sidecarPath };
}

export async function main(argv: string[]): Promise<number> {
  let spec: RenderSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  try {
    const { svgPath, sidecarPath } = await render(spec);
    console.log(`wrote ${svgPath} and ${sidecarPath}`);
    return 0;
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
}

const entry = process.argv[1];
if (entry && (entry.endsWith("render.js") || entry.endsWith("render.ts"))) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
