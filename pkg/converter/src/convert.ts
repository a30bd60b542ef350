/**
 * File-level conversion: TFRecord segments in, one RGSF scenario file per
 * record out, plus a manifest mapping sources to outputs with drop
 * counts.
 */

import * as fs from 'fs';
import * as path from 'path';

import { buildDocument, ConversionStats, RgsfDocument } from './rgsf';
import { DecodeError, readRecords } from './tfrecord';
import { decodeScenario } from './waymo';
import { WireError } from './protowire';

export interface ManifestEntry {
  source: string;
  record_index: number;
  scenario_id: string;
  output: string;
  frames: number;
  vehicle_tracks: number;
  dropped_tracks: number;
  lanes: number;
  dropped_lanes: number;
  coerced_invalid_states: number;
}

export interface Manifest {
  generated_by: string;
  records_seen: number;
  records_converted: number;
  records_failed: number;
  drop_totals: {
    tracks: number;
    lanes: number;
    coerced_invalid_states: number;
  };
  entries: ManifestEntry[];
}

export interface ConvertOptions {
  limit?: number;
  onDiagnostic?: (line: string) => void;
}

export function convertRecord(payload: Uint8Array): {
  doc: RgsfDocument;
  stats: ConversionStats;
  diagnostics: string[];
} {
  try {
    return buildDocument(decodeScenario(payload));
  } catch (err) {
    if (err instanceof WireError) {
      throw new DecodeError(`scenario protobuf: ${err.message}`);
    }
    throw err;
  }
}

function outputName(scenarioId: string, source: string, index: number): string {
  const base =
    scenarioId.replace(/[^A-Za-z0-9_-]/g, '_') ||
    `${path.basename(source).replace(/[^A-Za-z0-9_-]/g, '_')}_${index}`;
  return `${base}.rgsf.json`;
}

export function convertFiles(
  inputs: string[],
  outDir: string,
  options: ConvertOptions = {}
): Manifest {
  const diag = options.onDiagnostic ?? (() => undefined);
  fs.mkdirSync(outDir, { recursive: true });
  const manifest: Manifest = {
    generated_by: 'waymo2rgsf 0.1.0',
    records_seen: 0,
    records_converted: 0,
    records_failed: 0,
    drop_totals: { tracks: 0, lanes: 0, coerced_invalid_states: 0 },
    entries: [],
  };

  let remaining = options.limit ?? Infinity;
  for (const source of inputs) {
    if (remaining <= 0) break;
    const buf = fs.readFileSync(source);
    let index = 0;
    for (const payload of readRecords(buf)) {
      if (remaining <= 0) break;
      manifest.records_seen += 1;
      try {
        const { doc, stats, diagnostics } = convertRecord(payload);
        for (const line of diagnostics) diag(`${source}[${index}]: ${line}`);
        const name = outputName(doc.scenario_id, source, index);
        fs.writeFileSync(path.join(outDir, name), JSON.stringify(doc) + '\n');
        manifest.records_converted += 1;
        manifest.drop_totals.tracks += stats.droppedTracks;
        manifest.drop_totals.lanes += stats.droppedLanes;
        manifest.drop_totals.coerced_invalid_states += stats.coercedInvalidStates;
        manifest.entries.push({
          source,
          record_index: index,
          scenario_id: doc.scenario_id,
          output: name,
          frames: stats.frames,
          vehicle_tracks: stats.vehicleTracks,
          dropped_tracks: stats.droppedTracks,
          lanes: stats.lanes,
          dropped_lanes: stats.droppedLanes,
          coerced_invalid_states: stats.coercedInvalidStates,
        });
        remaining -= 1;
      } catch (err) {
        if (err instanceof DecodeError) {
          manifest.records_failed += 1;
          diag(`${source}[${index}]: ${err.message}`);
        } else {
          throw err;
        }
      }
      index += 1;
    }
  }

  fs.writeFileSync(path.join(outDir, 'manifest.json'), JSON.stringify(manifest, null, 2) + '\n');
  return manifest;
}
