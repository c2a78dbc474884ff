#!/usr/bin/env node
/**
 * embf-exporter export --corpus PATH --side source|target --encoder NAME
 *                      --batch-size N --out PATH
 *
 * Exit codes: 0 success, 2 usage error, 3 runtime error (one "CODE: message"
 * line on stderr: ENCODER_UNAVAILABLE, OOM_BATCH, WRITE_FAILED, ...).
 */

import { runExport, Side } from "./export.js";

const USAGE =
  "usage: embf-exporter export --corpus PATH --side source|target " +
  "--encoder NAME --batch-size N --out PATH";

function parseArgs(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`expected --flag value pairs, got ${key}`);
    }
    flags.set(key.slice(2), value);
  }
  return flags;
}

function required(flags: Map<string, string>, name: string): string {
  const value = flags.get(name);
  if (value === undefined) {
    throw new Error(`missing required flag --${name}`);
  }
  return value;
}

async function main(): Promise<number> {
  const [command, ...rest] = process.argv.slice(2);
  if (command !== "export") {
    console.error(command ? `unknown command: ${command}` : USAGE);
    console.error(USAGE);
    return 2;
  }

  let flags: Map<string, string>;
  let side: Side;
  let batchSize: number;
  try {
    flags = parseArgs(rest);
    const sideValue = required(flags, "side");
    if (sideValue !== "source" && sideValue !== "target") {
      throw new Error(`--side must be source or target, got ${sideValue}`);
    }
    side = sideValue;
    batchSize = Number(flags.get("batch-size") ?? "32");
    if (!Number.isInteger(batchSize) || batchSize < 1) {
      throw new Error(`--batch-size must be an integer >= 1, got ${flags.get("batch-size")}`);
    }
    required(flags, "corpus");
    required(flags, "encoder");
    required(flags, "out");
  } catch (err) {
    console.error(`CONFIG_ERROR: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }

  try {
    const result = await runExport({
      corpusPath: flags.get("corpus")!,
      side,
      encoderName: flags.get("encoder")!,
      batchSize,
      outPath: flags.get("out")!,
    });
    console.log(
      `wrote ${flags.get("out")} (${result.count} vectors, dim ${result.dim}, ` +
        `encoder ${result.encoder}@${result.encoderVersion})`,
    );
    return 0;
  } catch (err) {
    const code = (err as { code?: string }).code ?? "ERROR";
    console.error(`${code}: ${(err as Error).message}`);
    return 3;
  }
}

main().then((code) => {
  process.exitCode = code;
});
