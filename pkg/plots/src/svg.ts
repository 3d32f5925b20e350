/**
 * Hand-rolled SVG chart: final minority fraction on the y-axis against
 * alpha on the x-axis, one marker series per initial opinion fraction u.
 *
 * Everything is a pure function of the aggregates and options, so a given
 * CSV renders to byte-identical SVG. Numbers are fixed-precision to keep
 * the output stable.
 */

import type { Series } from "./aggregate.js";

export interface ChartOptions {
  aggregation: "scatter" | "mean";
  logX: boolean;
  title?: string;
}

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 40, right: 150, bottom: 52, left: 64 };

const COLORS = ["#4361ee", "#e05263", "#2d6a4f", "#b5179e", "#f77f00"];
const MARKERS = ["circle", "square", "diamond", "triangle"] as const;

function fmt(x: number): string {
  return Number(x.toFixed(3)).toString();
}

function marker(kind: string, x: number, y: number, r: number,
                color: string, opacity: number): string {
  const o = opacity < 1 ? ` fill-opacity="${opacity}"` : "";
  switch (kind) {
    case "square":
      return `<rect x="${fmt(x - r)}" y="${fmt(y - r)}" width="${fmt(2 * r)}" height="${fmt(2 * r)}" fill="${color}"${o}/>`;
    case "diamond":
      return `<path d="M ${fmt(x)} ${fmt(y - r * 1.3)} L ${fmt(x + r * 1.3)} ${fmt(y)} L ${fmt(x)} ${fmt(y + r * 1.3)} L ${fmt(x - r * 1.3)} ${fmt(y)} Z" fill="${color}"${o}/>`;
    case "triangle":
      return `<path d="M ${fmt(x)} ${fmt(y - r * 1.2)} L ${fmt(x + r * 1.2)} ${fmt(y + r)} L ${fmt(x - r * 1.2)} ${fmt(y + r)} Z" fill="${color}"${o}/>`;
    default:
      return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}" fill="${color}"${o}/>`;
  }
}

function ticks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const out: number[] = [];
  for (let i = 0; i <= count; i++) out.push(lo + ((hi - lo) * i) / count);
  return out;
}

export function renderChart(series: Series[], opts: ChartOptions): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  );
  const title = opts.title ??
    (opts.aggregation === "mean"
      ? "Final minority fraction vs alpha (mean ± stddev)"
      : "Final minority fraction vs alpha (all runs)");
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${title}</text>`,
  );

  const alphas = series.flatMap((s) => s.points.map((p) => p.alpha));
  if (alphas.length === 0) {
    parts.push(
      `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
      `<text x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle" font-size="13" fill="#666">no data</text>`,
      `</svg>`,
    );
    return parts.join("\n") + "\n";
  }
  if (opts.logX && alphas.some((a) => a <= 0)) {
    throw new Error("--log-x requires every alpha to be positive");
  }

  const xOf = (a: number) => (opts.logX ? Math.log10(a) : a);
  let xLo = Math.min(...alphas.map(xOf));
  let xHi = Math.max(...alphas.map(xOf));
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  const pad = (xHi - xLo) * 0.05;
  xLo -= pad;
  xHi += pad;
  const yMax = Math.max(
    0.5,
    ...series.flatMap((s) =>
      s.points.map((p) =>
        opts.aggregation === "mean" ? p.mean + p.stddev : p.max)),
  );
  const yHi = Math.min(1, yMax * 1.05);

  const px = (a: number) =>
    MARGIN.left + ((xOf(a) - xLo) / (xHi - xLo)) * plotW;
  const py = (v: number) => MARGIN.top + plotH - (v / yHi) * plotH;

  // frame and ticks
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );
  for (const t of ticks(0, yHi, 5)) {
    const y = py(t);
    parts.push(
      `<line x1="${MARGIN.left - 4}" y1="${fmt(y)}" x2="${MARGIN.left}" y2="${fmt(y)}" stroke="#333"/>`,
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + plotW}" y2="${fmt(y)}" stroke="#ddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">${fmt(t)}</text>`,
    );
  }
  const xTickVals = opts.logX
    ? [...new Set(alphas)].sort((a, b) => a - b)
    : ticks(Math.min(...alphas), Math.max(...alphas),
            Math.min(6, new Set(alphas).size - 1 || 1));
  for (const a of xTickVals) {
    const x = px(a);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top + plotH}" x2="${fmt(x)}" y2="${MARGIN.top + plotH + 4}" stroke="#333"/>`,
      `<text x="${fmt(x)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">${fmt(a)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="12">alpha${opts.logX ? " (log scale)" : ""}</text>`,
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">final minority fraction</text>`,
  );

  // series
  series.forEach((s, si) => {
    const color = COLORS[si % COLORS.length];
    const kind = MARKERS[si % MARKERS.length];
    if (opts.aggregation === "mean") {
      const path = s.points
        .map((p, i) => `${i === 0 ? "M" : "L"} ${fmt(px(p.alpha))} ${fmt(py(p.mean))}`)
        .join(" ");
      parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="1.2"/>`);
      for (const p of s.points) {
        const x = px(p.alpha);
        const lo = py(Math.max(0, p.mean - p.stddev));
        const hi = py(Math.min(1, p.mean + p.stddev));
        parts.push(
          `<line x1="${fmt(x)}" y1="${fmt(lo)}" x2="${fmt(x)}" y2="${fmt(hi)}" stroke="${color}" stroke-width="1"/>`,
          marker(kind, x, py(p.mean), 4, color, 1),
        );
      }
    } else {
      for (const p of s.points) {
        for (const v of p.values) {
          parts.push(marker(kind, px(p.alpha), py(v), 2.4, color, 0.45));
        }
      }
    }
    // legend
    const lx = MARGIN.left + plotW + 16;
    const ly = MARGIN.top + 10 + si * 20;
    parts.push(
      marker(kind, lx, ly, 4, color, 1),
      `<text x="${lx + 10}" y="${ly + 4}" font-size="12">u = ${s.u}</text>`,
    );
  });

  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
