export class MissingManifest extends Error {}

export class FeatureWidthMismatch extends Error {}

export class EmptyDataset extends Error {}

export class EdgelistParseError extends Error {
  constructor(message: string, readonly file: string, readonly line: number) {
    super(`${file}:${line}: ${message}`);
  }
}
