/**
 * The export job: read a corpus TSV, encode one side in batches, and write an
 * EMBF file (plus a ".meta" sidecar naming the encoder, its version, and the
 * dimension). Output order follows pair ids, so the file is sorted by
 * construction.
 */

import { readCorpusTsv } from "./corpus.js";
import { EmbfRecord, writeEmbf, writeSidecar } from "./embf.js";
import { Encoder, resolveEncoder } from "./encoders.js";

export type Side = "source" | "target";

export interface ExportJob {
  corpusPath: string;
  side: Side;
  encoderName: string;
  batchSize: number;
  outPath: string;
}

export interface ExportResult {
  count: number;
  dim: number;
  encoder: string;
  encoderVersion: string;
}

export class OomBatch extends Error {
  readonly code = "OOM_BATCH";
}

function looksLikeOom(err: unknown): boolean {
  if (err instanceof RangeError) return true;
  const message = err instanceof Error ? err.message : String(err);
  return /out of memory|allocation failed|OOM/i.test(message);
}

export async function runExport(job: ExportJob): Promise<ExportResult> {
  if (!Number.isInteger(job.batchSize) || job.batchSize < 1) {
    throw new RangeError(`batch size must be an integer >= 1, got ${job.batchSize}`);
  }
  const rows = readCorpusTsv(job.corpusPath);
  const texts = rows.map((row) => (job.side === "source" ? row.source : row.target));
  const encoder: Encoder = await resolveEncoder(job.encoderName);

  const records: EmbfRecord[] = [];
  for (let start = 0; start < texts.length; start += job.batchSize) {
    const batch = texts.slice(start, start + job.batchSize);
    let vectors: Float32Array[];
    try {
      vectors = await encoder.encode(batch);
    } catch (err) {
      if (looksLikeOom(err)) {
        throw new OomBatch(
          `encoder ran out of memory on a batch of ${batch.length}; retry with a smaller --batch-size`,
        );
      }
      throw err;
    }
    vectors.forEach((vector, i) => {
      records.push({ pairId: rows[start + i].pairId, vector });
    });
  }

  writeEmbf(job.outPath, encoder.dim, records);
  writeSidecar(job.outPath, {
    encoder: encoder.name,
    version: encoder.version,
    dim: encoder.dim,
    count: records.length,
    side: job.side,
  });
  return {
    count: records.length,
    dim: encoder.dim,
    encoder: encoder.name,
    encoderVersion: encoder.version,
  };
}
