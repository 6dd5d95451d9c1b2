#!/usr/bin/env node
/** Summarize a generated dataset directory and optionally plot its histogram. */

import { loadDataset } from "./loader.js";
import { plotHistogram } from "./plot.js";
import { summarize } from "./summary.js";

function main(argv: string[]): number {
  if (argv.length === 0 || argv[0] === "-h" || argv[0] === "--help") {
    console.log("usage: aigkit-dataset <dir> [-o histogram.svg]");
    return argv.length === 0 ? 2 : 0;
  }
  const dir = argv[0];
  let outPath: string | null = null;
  for (let i = 1; i < argv.length; i++) {
    if (argv[i] === "-o" && i + 1 < argv.length) {
      outPath = argv[++i];
    } else {
      console.error(`unknown argument ${argv[i]}`);
      return 2;
    }
  }
  const dataset = loadDataset(dir);
  const summary = summarize(dataset);
  console.log(`samples: ${summary.count}`);
  for (const [field, s] of Object.entries(summary.labels)) {
    console.log(
      `${field}: min=${s.min} max=${s.max} mean=${s.mean.toFixed(2)} std=${s.std.toFixed(2)}`,
    );
  }
  if (outPath) {
    plotHistogram(summary, outPath);
    console.log(`histogram written to ${outPath}`);
  }
  return 0;
}

process.exit(main(process.argv.slice(2)));
