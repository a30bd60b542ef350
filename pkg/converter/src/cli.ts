#!/usr/bin/env node
/**
 * waymo2rgsf --input <tfrecord files> --out <dir> [--limit N]
 *
 * Converts motion-dataset TFRecord segments into RGSF v1 scenario files
 * consumable by `rulegauge analyze`, writing a manifest.json alongside
 * them. Exit codes: 0 converted something, 1 nothing converted, 2 usage.
 */

import { parseArgs } from 'node:util';

import { convertFiles } from './convert';

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        input: { type: 'string', multiple: true },
        out: { type: 'string' },
        limit: { type: 'string' },
      },
      allowPositionals: false,
    });
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const inputs = parsed.values.input ?? [];
  const out = parsed.values.out;
  if (inputs.length === 0 || !out) {
    console.error('usage: waymo2rgsf --input <tfrecord>... --out <dir> [--limit N]');
    return 2;
  }
  let limit: number | undefined;
  if (parsed.values.limit !== undefined) {
    limit = Number(parsed.values.limit);
    if (!Number.isInteger(limit) || limit < 1) {
      console.error(`usage error: --limit must be a positive integer, got ${parsed.values.limit}`);
      return 2;
    }
  }

  try {
    const manifest = convertFiles(inputs, out, {
      limit,
      onDiagnostic: (line) => console.error(line),
    });
    console.error(
      `converted ${manifest.records_converted}/${manifest.records_seen} record(s), ` +
        `${manifest.records_failed} failed`
    );
    return manifest.records_converted > 0 ? 0 : 1;
  } catch (err) {
    console.error(`fatal: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
