/**
 * Parser for the line-oriented edgelist format.
 *
 * AIG flavor lines:
 *   <ext> <node> Pi 00     one per input
 *   <src> <dst> AIG <ff>   two per gate; <ff> is the gate's 2-bit inverter embedding
 *   <node> <ext> Po 00     one per output
 *
 * Mapped flavor replaces AIG lines with `<fanins...> <dst> <cellname>`.
 */

import { EdgelistParseError } from "./errors.js";

export type Flavor = "aig" | "mapped";

export interface ParsedGraph {
  flavor: Flavor;
  /** tokens in first-appearance order; index = dense node id */
  nodes: string[];
  /** original token -> dense id */
  idOf: Map<string, number>;
  /** [sources, targets], dense ids, one entry per line */
  edgeIndex: [number[], number[]];
  /** dense id -> "ff" feature (aig flavor) or cell name (mapped flavor) */
  gateFeature: Map<number, string>;
  inputIds: number[];
  outputIds: number[];
}

export function parseEdgelist(text: string, file = "<memory>"): ParsedGraph {
  const nodes: string[] = [];
  const idOf = new Map<string, number>();
  const src: number[] = [];
  const dst: number[] = [];
  const gateFeature = new Map<number, string>();
  const inputIds: number[] = [];
  const outputIds: number[] = [];
  let flavor: Flavor | null = null;

  const intern = (token: string): number => {
    let id = idOf.get(token);
    if (id === undefined) {
      id = nodes.length;
      nodes.push(token);
      idOf.set(token, id);
    }
    return id;
  };

  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line || line.startsWith("#")) continue;
    const parts = line.split(/\s+/);
    if (parts.length < 3) {
      throw new EdgelistParseError(`short line: '${line}'`, file, i + 1);
    }
    if (parts.length === 4 && (parts[2] === "Pi" || parts[2] === "Po")) {
      if (parts[3] !== "00") {
        throw new EdgelistParseError(`${parts[2]} line must carry feature 00`, file, i + 1);
      }
      const a = intern(parts[0]);
      const b = intern(parts[1]);
      src.push(a);
      dst.push(b);
      if (parts[2] === "Pi") inputIds.push(b);
      else outputIds.push(b);
    } else if (parts.length === 4 && parts[2] === "AIG") {
      if (flavor === "mapped") {
        throw new EdgelistParseError("AIG line inside a mapped document", file, i + 1);
      }
      flavor = "aig";
      if (!/^[01]{2}$/.test(parts[3])) {
        throw new EdgelistParseError(`bad AIG feature '${parts[3]}'`, file, i + 1);
      }
      const a = intern(parts[0]);
      const b = intern(parts[1]);
      src.push(a);
      dst.push(b);
      const prev = gateFeature.get(b);
      if (prev !== undefined && prev !== parts[3]) {
        throw new EdgelistParseError(
          `gate ${parts[1]} carries features ${prev} and ${parts[3]}`,
          file,
          i + 1,
        );
      }
      gateFeature.set(b, parts[3]);
    } else {
      if (flavor === "aig") {
        throw new EdgelistParseError("cell line inside an AIG document", file, i + 1);
      }
      flavor = "mapped";
      const cell = parts[parts.length - 1];
      const out = intern(parts[parts.length - 2]);
      for (const tok of parts.slice(0, -2)) {
        src.push(intern(tok));
        dst.push(out);
      }
      gateFeature.set(out, cell);
    }
  }
  return {
    flavor: flavor ?? "aig",
    nodes,
    idOf,
    edgeIndex: [src, dst],
    gateFeature,
    inputIds,
    outputIds,
  };
}

/**
 * Node feature matrix. AIG flavor: 2 columns from the inverter embedding,
 * zero rows for everything that is not a gate (inputs and the external
 * marker nodes stay visible to models as all-zero rows). Mapped flavor:
 * one-hot over `vocab` (first-appearance order when not supplied).
 */
export function featureMatrix(graph: ParsedGraph, vocab?: string[]): number[][] {
  if (graph.flavor === "aig") {
    return graph.nodes.map((_, id) => {
      const ff = graph.gateFeature.get(id);
      return ff ? [Number(ff[0]), Number(ff[1])] : [0, 0];
    });
  }
  const names = vocab ?? vocabOf(graph);
  const hot = new Map(names.map((n, i) => [n, i]));
  return graph.nodes.map((_, id) => {
    const row = new Array(names.length).fill(0);
    const cell = graph.gateFeature.get(id);
    if (cell !== undefined) {
      const k = hot.get(cell);
      if (k === undefined) {
        throw new FeatureVocabError(cell);
      }
      row[k] = 1;
    }
    return row;
  });
}

export function vocabOf(graph: ParsedGraph): string[] {
  const seen: string[] = [];
  const have = new Set<string>();
  // gateFeature insertion order follows the document
  for (const cell of graph.gateFeature.values()) {
    if (!have.has(cell)) {
      have.add(cell);
      seen.push(cell);
    }
  }
  return seen;
}

export class FeatureVocabError extends Error {
  constructor(cell: string) {
    super(`cell '${cell}' is not in the feature vocabulary`);
  }
}
