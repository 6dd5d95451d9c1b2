/** Dataset directory loader: manifest.json + labels.csv + sample_*.el. */

import * as fs from "node:fs";
import * as path from "node:path";

import { featureMatrix, parseEdgelist, vocabOf, type Flavor } from "./edgelist.js";
import { FeatureWidthMismatch, MissingManifest } from "./errors.js";

export interface LabelRecord {
  sample_id: number;
  seed: number;
  and_count: number;
  level: number;
  lut_count: number;
  lut_depth: number;
}

export interface GraphSample {
  sampleId: number;
  file: string;
  flavor: Flavor;
  /** [sources, targets] over dense node ids 0..N-1 */
  edgeIndex: [number[], number[]];
  nodeFeatures: number[][];
  /** dense id -> original token from the edgelist */
  originalIds: string[];
  label: LabelRecord;
}

export interface Manifest {
  design: string;
  n: number;
  base_seed: number;
  samples: { id: number; file: string; and_count: number; level: number }[];
}

export function readManifest(dir: string): Manifest {
  const p = path.join(dir, "manifest.json");
  if (!fs.existsSync(p)) {
    throw new MissingManifest(`no manifest.json in ${dir}`);
  }
  return JSON.parse(fs.readFileSync(p, "utf-8")) as Manifest;
}

export function readLabels(dir: string): Map<number, LabelRecord> {
  const p = path.join(dir, "labels.csv");
  if (!fs.existsSync(p)) {
    throw new MissingManifest(`no labels.csv in ${dir}`);
  }
  const lines = fs.readFileSync(p, "utf-8").trim().split("\n");
  const header = lines[0].split(",");
  const expected = ["sample_id", "seed", "and_count", "level", "lut_count", "lut_depth"];
  if (header.join(",") !== expected.join(",")) {
    throw new Error(`labels.csv header mismatch: ${lines[0]}`);
  }
  const out = new Map<number, LabelRecord>();
  for (const line of lines.slice(1)) {
    if (!line.trim()) continue;
    const [sample_id, seed, and_count, level, lut_count, lut_depth] = line
      .split(",")
      .map(Number);
    out.set(sample_id, { sample_id, seed, and_count, level, lut_count, lut_depth });
  }
  return out;
}

export function loadDataset(dir: string): GraphSample[] {
  const manifest = readManifest(dir);
  const labels = readLabels(dir);
  const samples: GraphSample[] = [];
  let featureWidth: number | null = null;
  for (const meta of manifest.samples) {
    const label = labels.get(meta.id);
    if (!label) {
      throw new Error(`labels.csv has no row for sample_id ${meta.id}`);
    }
    const file = path.join(dir, meta.file);
    const graph = parseEdgelist(fs.readFileSync(file, "utf-8"), meta.file);
    const vocab = graph.flavor === "mapped" ? sidecarVocab(dir, meta.file) ?? vocabOf(graph) : undefined;
    const features = featureMatrix(graph, vocab);
    const width = features.length ? features[0].length : 0;
    if (featureWidth === null) {
      featureWidth = width;
    } else if (featureWidth !== width) {
      throw new FeatureWidthMismatch(
        `sample ${meta.id} has feature width ${width}, expected ${featureWidth}`,
      );
    }
    samples.push({
      sampleId: meta.id,
      file: meta.file,
      flavor: graph.flavor,
      edgeIndex: graph.edgeIndex,
      nodeFeatures: features,
      originalIds: graph.nodes,
      label,
    });
  }
  return samples;
}

/** Optional `<sample>.features.csv` sidecar carrying a `# vocab:` header. */
function sidecarVocab(dir: string, sampleFile: string): string[] | undefined {
  const p = path.join(dir, sampleFile.replace(/\.el$/, ".features.csv"));
  if (!fs.existsSync(p)) return undefined;
  const first = fs.readFileSync(p, "utf-8").split("\n", 1)[0];
  if (!first.startsWith("# vocab: ")) return undefined;
  return first.slice("# vocab: ".length).trim().split(",");
}
