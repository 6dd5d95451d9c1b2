/** Label-distribution summaries over a loaded dataset. */

import { EmptyDataset } from "./errors.js";
import type { GraphSample, LabelRecord } from "./loader.js";

export interface FieldStats {
  min: number;
  max: number;
  mean: number;
  std: number;
}

export interface Histogram {
  binEdges: number[]; // length bins + 1
  counts: number[];
}

export interface DatasetSummary {
  count: number;
  labels: Record<string, FieldStats>;
  andCountHistogram: Histogram;
}

const FIELDS: (keyof LabelRecord)[] = ["and_count", "level", "lut_count", "lut_depth"];

function stats(values: number[]): FieldStats {
  const n = values.length;
  const mean = values.reduce((a, b) => a + b, 0) / n;
  const variance = values.reduce((a, b) => a + (b - mean) * (b - mean), 0) / n;
  return {
    min: Math.min(...values),
    max: Math.max(...values),
    mean,
    std: Math.sqrt(variance),
  };
}

export function histogram(values: number[], bins: number): Histogram {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const width = hi > lo ? (hi - lo) / bins : 1;
  const counts = new Array(bins).fill(0);
  for (const v of values) {
    let k = Math.floor((v - lo) / width);
    if (k >= bins) k = bins - 1; // the max lands in the last bin
    counts[k] += 1;
  }
  const binEdges = Array.from({ length: bins + 1 }, (_, i) => lo + i * width);
  return { binEdges, counts };
}

export function summarize(dataset: GraphSample[]): DatasetSummary {
  if (dataset.length === 0) {
    throw new EmptyDataset("cannot summarize an empty dataset");
  }
  const labels: Record<string, FieldStats> = {};
  for (const f of FIELDS) {
    labels[f] = stats(dataset.map((s) => s.label[f]));
  }
  const bins = Math.ceil(Math.sqrt(dataset.length));
  const andCounts = dataset.map((s) => s.label.and_count);
  return {
    count: dataset.length,
    labels,
    andCountHistogram: histogram(andCounts, bins),
  };
}
