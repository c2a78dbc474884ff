/**
 * Reader for the pipeline's corpus interchange format: UTF-8 text, one pair
 * per line, three tab-separated columns (source, target, origin). Pair ids
 * are positional, starting at 0, matching how the scoring side assigns them.
 */

import * as fs from "node:fs";

export interface CorpusRow {
  pairId: number;
  source: string;
  target: string;
  origin: string;
}

export class MalformedTsv extends Error {
  readonly code = "MALFORMED_TSV";
}

export function readCorpusTsv(path: string): CorpusRow[] {
  const text = fs.readFileSync(path, "utf-8");
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop(); // final newline, not an empty row
  }
  return lines.map((line, i) => {
    const columns = line.split("\t");
    if (columns.length !== 3) {
      throw new MalformedTsv(
        `${path}: line ${i + 1}: expected 3 tab-separated columns, found ${columns.length}`,
      );
    }
    return {
      pairId: i,
      source: columns[0],
      target: columns[1],
      origin: columns[2] === "" ? "OTHER" : columns[2],
    };
  });
}
