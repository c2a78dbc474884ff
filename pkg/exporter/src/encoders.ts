/**
 * Sentence encoders, referenced by name on the command line.
 *
 * Two families:
 *  - "hash-unigram-<dim>": a deterministic feature-hashing encoder with no
 *    model download. Identical sentences always map to identical vectors, so
 *    it exercises the full export/score round trip offline. Not a semantic
 *    model; meant for pipeline plumbing and tests.
 *  - published model ids containing "/" (e.g. "Xenova/multilingual-e5-small"):
 *    loaded through @xenova/transformers with mean pooling. The package is an
 *    optional dependency; if it is missing or the model cannot be fetched,
 *    the export fails with ENCODER_UNAVAILABLE.
 */

import { createRequire } from "node:module";

export interface Encoder {
  readonly name: string;
  readonly version: string;
  readonly dim: number;
  encode(texts: string[]): Promise<Float32Array[]>;
}

export class EncoderUnavailable extends Error {
  readonly code = "ENCODER_UNAVAILABLE";
}

const FNV_OFFSET = 0xcbf29ce484222325n;
const FNV_PRIME = 0x100000001b3n;
const MASK64 = (1n << 64n) - 1n;

function fnv1a64(text: string): bigint {
  let hash = FNV_OFFSET;
  for (const byte of Buffer.from(text, "utf-8")) {
    hash ^= BigInt(byte);
    hash = (hash * FNV_PRIME) & MASK64;
  }
  return hash;
}

/** Feature hashing: each lowercase whitespace token adds +/-1 to one bucket. */
export function hashUnigramEncoder(dim: number): Encoder {
  if (!Number.isInteger(dim) || dim < 2) {
    throw new EncoderUnavailable(`hash-unigram dimension must be an integer >= 2, got ${dim}`);
  }
  return {
    name: `hash-unigram-${dim}`,
    version: "1",
    dim,
    async encode(texts: string[]): Promise<Float32Array[]> {
      return texts.map((text) => {
        const acc = new Float64Array(dim);
        const tokens = text.toLowerCase().split(/\s+/).filter((t) => t.length > 0);
        for (const token of tokens) {
          const hash = fnv1a64(token);
          const bucket = Number(hash % BigInt(dim));
          const sign = (hash >> 63n) & 1n ? -1 : 1;
          acc[bucket] += sign;
        }
        let norm = 0;
        for (const component of acc) norm += component * component;
        norm = Math.sqrt(norm);
        const vec = new Float32Array(dim);
        if (norm === 0) {
          vec[0] = 1; // empty or fully cancelled sentence: fixed unit vector
        } else {
          for (let i = 0; i < dim; i++) vec[i] = acc[i] / norm;
        }
        return vec;
      });
    },
  };
}

/** Load a published encoder through @xenova/transformers (mean pooling). */
export async function hubEncoder(modelId: string): Promise<Encoder> {
  // Computed specifier: the package is optional, so the import must stay a
  // runtime lookup instead of a compile-time dependency.
  const packageName = "@xenova/transformers";
  let transformers: any;
  try {
    transformers = await import(packageName);
  } catch {
    throw new EncoderUnavailable(
      "@xenova/transformers is not installed; add it or use a hash-unigram encoder",
    );
  }
  let version = "unknown";
  try {
    const require = createRequire(import.meta.url);
    version = require(`${packageName}/package.json`).version;
  } catch {
    /* version stays "unknown" */
  }

  let extractor: any;
  try {
    extractor = await transformers.pipeline("feature-extraction", modelId);
  } catch (err) {
    throw new EncoderUnavailable(
      `cannot load encoder ${modelId}: ${(err as Error).message}`,
    );
  }

  let dim = 0;
  const encode = async (texts: string[]): Promise<Float32Array[]> => {
    const output = await extractor(texts, { pooling: "mean", normalize: false });
    const [batch, vectorSize] = output.dims as [number, number];
    const flat: Float32Array = output.data;
    const vectors: Float32Array[] = [];
    for (let i = 0; i < batch; i++) {
      vectors.push(new Float32Array(flat.subarray(i * vectorSize, (i + 1) * vectorSize)));
    }
    return vectors;
  };

  // One probe call tells us the native dimension before the real batches run.
  const probe = await encode(["dimension probe"]);
  dim = probe[0].length;

  return { name: modelId, version, dim, encode };
}

export async function resolveEncoder(name: string): Promise<Encoder> {
  const hashed = /^hash-unigram-(\d+)$/.exec(name);
  if (hashed) {
    return hashUnigramEncoder(Number(hashed[1]));
  }
  if (name.includes("/")) {
    return hubEncoder(name);
  }
  throw new EncoderUnavailable(
    `unknown encoder ${name}; use hash-unigram-<dim> or a published model id like org/model`,
  );
}
