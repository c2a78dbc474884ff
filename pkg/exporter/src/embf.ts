/**
 * EMBF binary writer.
 *
 * Layout (all integers little-endian):
 *   magic   4 bytes  "EMBF"
 *   version u16      1
 *   dim     u32      vector dimension
 *   count   u64      number of records
 *   records count times: pair_id u64, then dim float32 components
 *
 * Records must be sorted by strictly increasing pair_id. Writes go to a
 * temporary file in the same directory followed by a rename, so readers never
 * observe a half-written file.
 */

import * as fs from "node:fs";
import * as path from "node:path";

export const EMBF_MAGIC = "EMBF";
export const EMBF_VERSION = 1;
const HEADER_BYTES = 4 + 2 + 4 + 8;

export interface EmbfRecord {
  pairId: number;
  vector: Float32Array;
}

export class WriteFailed extends Error {
  readonly code = "WRITE_FAILED";
}

function buildBuffer(dim: number, records: EmbfRecord[]): Buffer {
  const recordBytes = 8 + 4 * dim;
  const buf = Buffer.alloc(HEADER_BYTES + recordBytes * records.length);
  buf.write(EMBF_MAGIC, 0, "ascii");
  buf.writeUInt16LE(EMBF_VERSION, 4);
  buf.writeUInt32LE(dim, 6);
  buf.writeBigUInt64LE(BigInt(records.length), 10);

  let offset = HEADER_BYTES;
  let previousId = -1;
  for (const record of records) {
    if (!Number.isInteger(record.pairId) || record.pairId < 0) {
      throw new WriteFailed(`pair id must be a non-negative integer, got ${record.pairId}`);
    }
    if (record.pairId <= previousId) {
      throw new WriteFailed(
        `pair ids must be strictly increasing (${record.pairId} after ${previousId})`,
      );
    }
    previousId = record.pairId;
    if (record.vector.length !== dim) {
      throw new WriteFailed(
        `vector for pair ${record.pairId} has ${record.vector.length} components, expected ${dim}`,
      );
    }
    buf.writeBigUInt64LE(BigInt(record.pairId), offset);
    offset += 8;
    for (const component of record.vector) {
      if (!Number.isFinite(component)) {
        throw new WriteFailed(`non-finite component in vector for pair ${record.pairId}`);
      }
      buf.writeFloatLE(component, offset);
      offset += 4;
    }
  }
  return buf;
}

/** Write records atomically: temp file in the target directory, then rename. */
export function writeEmbf(outPath: string, dim: number, records: EmbfRecord[]): void {
  const buf = buildBuffer(dim, records);
  const tmpPath = path.join(
    path.dirname(outPath),
    `.${path.basename(outPath)}.tmp-${process.pid}`,
  );
  try {
    fs.writeFileSync(tmpPath, buf);
    fs.renameSync(tmpPath, outPath);
  } catch (err) {
    try {
      fs.rmSync(tmpPath, { force: true });
    } catch {
      /* best-effort cleanup */
    }
    if (err instanceof WriteFailed) throw err;
    throw new WriteFailed(`cannot write ${outPath}: ${(err as Error).message}`);
  }
}

/** Sidecar description written next to the EMBF file (".meta" suffix). */
export function writeSidecar(
  outPath: string,
  fields: { encoder: string; version: string; dim: number; count: number; side: string },
): void {
  const text =
    [
      `encoder: ${fields.encoder}`,
      `encoder_version: ${fields.version}`,
      `dim: ${fields.dim}`,
      `count: ${fields.count}`,
      `side: ${fields.side}`,
    ].join("\n") + "\n";
  try {
    fs.writeFileSync(outPath + ".meta", text, "utf-8");
  } catch (err) {
    throw new WriteFailed(`cannot write sidecar for ${outPath}: ${(err as Error).message}`);
  }
}
