export { parseEdgelist, featureMatrix, vocabOf } from "./edgelist.js";
export type { ParsedGraph, Flavor } from "./edgelist.js";
export { loadDataset, readManifest, readLabels } from "./loader.js";
export type { GraphSample, LabelRecord, Manifest } from "./loader.js";
export { summarize, histogram } from "./summary.js";
export type { DatasetSummary, FieldStats, Histogram } from "./summary.js";
export { plotHistogram, histogramSvg } from "./plot.js";
export { MissingManifest, FeatureWidthMismatch, EmptyDataset, EdgelistParseError } from "./errors.js";
