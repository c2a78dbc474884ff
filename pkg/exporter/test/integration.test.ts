/**
 * Round trip against the Python scoring pipeline: vectors exported here must
 * load there with full coverage. Skips when python3 or the bitextkit package
 * is not on this machine.
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { runExport } from "../src/export.js";

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import bitextkit"], { encoding: "utf-8" });
  return probe.status === 0;
}

const haveScorer = pythonAvailable();

let dir: string;

beforeEach(() => {
  dir = fs.mkdtempSync(path.join(os.tmpdir(), "roundtrip-"));
});

afterEach(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

describe.skipIf(!haveScorer)("export -> python scoring round trip", () => {
  it("covers all 50 pairs and scores the duplicated sentence identically", async () => {
    const rows: string[] = [];
    for (let i = 0; i < 49; i++) {
      rows.push(`frase española número ${i} con texto\tenglish sentence number ${i} with text\tECDC`);
    }
    rows.push(rows[0]); // pair 49 repeats pair 0 on both sides
    const corpus = path.join(dir, "corpus.tsv");
    fs.writeFileSync(corpus, rows.join("\n") + "\n", "utf-8");

    const srcOut = path.join(dir, "src.embf");
    const tgtOut = path.join(dir, "tgt.embf");
    for (const [side, out] of [["source", srcOut], ["target", tgtOut]] as const) {
      const result = await runExport({
        corpusPath: corpus,
        side,
        encoderName: "hash-unigram-64",
        batchSize: 16,
        outPath: out,
      });
      expect(result.count).toBe(50);
    }

    const outDir = path.join(dir, "scored");
    const proc = spawnSync(
      "python3",
      [
        "-m", "bitextkit.cli", "score",
        "--input", corpus,
        "--method", "precomputed",
        "--source-embeddings", srcOut,
        "--target-embeddings", tgtOut,
        "--strict",
        "--output-dir", outDir,
      ],
      { encoding: "utf-8" },
    );
    expect(proc.stderr).toBe("");
    expect(proc.status).toBe(0); // strict mode: zero missing embeddings

    const scoreLines = fs
      .readFileSync(path.join(outDir, "scores.tsv"), "utf-8")
      .trim()
      .split("\n");
    expect(scoreLines).toHaveLength(50);
    expect(fs.readFileSync(path.join(outDir, "uncovered.txt"), "utf-8")).toBe("");

    const scores = new Map(
      scoreLines.map((line) => {
        const [id, value] = line.split("\t");
        return [Number(id), Number(value)] as const;
      }),
    );
    expect(scores.get(49)).toBeCloseTo(scores.get(0)!, 6);
  });
});
