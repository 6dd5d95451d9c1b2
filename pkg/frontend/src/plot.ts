/** Self-contained SVG histogram writer (no browser or canvas needed). */

import * as fs from "node:fs";

import type { DatasetSummary } from "./summary.js";

const W = 640;
const H = 400;
const MARGIN = { top: 24, right: 16, bottom: 48, left: 56 };

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function histogramSvg(summary: DatasetSummary, title = "and_count distribution"): string {
  const { binEdges, counts } = summary.andCountHistogram;
  const plotW = W - MARGIN.left - MARGIN.right;
  const plotH = H - MARGIN.top - MARGIN.bottom;
  const maxCount = Math.max(...counts, 1);
  const lo = binEdges[0];
  const hi = binEdges[binEdges.length - 1];
  const xOf = (v: number) => MARGIN.left + ((v - lo) / (hi - lo || 1)) * plotW;
  const yOf = (c: number) => MARGIN.top + plotH - (c / maxCount) * plotH;

  const bars = counts
    .map((c, i) => {
      const x0 = xOf(binEdges[i]);
      const x1 = xOf(binEdges[i + 1]);
      const y = yOf(c);
      return `<rect x="${x0.toFixed(1)}" y="${y.toFixed(1)}" width="${Math.max(x1 - x0 - 1, 1).toFixed(1)}" height="${(MARGIN.top + plotH - y).toFixed(1)}" fill="#4878a8"/>`;
    })
    .join("\n  ");

  const xticks = binEdges
    .filter((_, i) => i % Math.max(1, Math.floor(binEdges.length / 8)) === 0)
    .map(
      (v) =>
        `<text x="${xOf(v).toFixed(1)}" y="${H - MARGIN.bottom + 18}" font-size="11" text-anchor="middle">${Math.round(v)}</text>`,
    )
    .join("\n  ");
  const yticks = [0, 0.25, 0.5, 0.75, 1]
    .map((f) => {
      const c = Math.round(maxCount * f);
      return `<text x="${MARGIN.left - 8}" y="${(yOf(c) + 4).toFixed(1)}" font-size="11" text-anchor="end">${c}</text>`;
    })
    .join("\n  ");

  return `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">
  <rect width="${W}" height="${H}" fill="white"/>
  <text x="${W / 2}" y="16" font-size="14" text-anchor="middle">${esc(title)} (n=${summary.count})</text>
  ${bars}
  <line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${W - MARGIN.right}" y2="${MARGIN.top + plotH}" stroke="black"/>
  <line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + plotH}" stroke="black"/>
  ${xticks}
  ${yticks}
  <text x="${MARGIN.left + plotW / 2}" y="${H - 8}" font-size="12" text-anchor="middle">and_count</text>
  <text x="14" y="${MARGIN.top + plotH / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 ${MARGIN.top + plotH / 2})">frequency</text>
</svg>
`;
}

export function plotHistogram(summary: DatasetSummary, path: string, title?: string): void {
  fs.writeFileSync(path, histogramSvg(summary, title));
}
