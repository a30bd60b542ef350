/**
 * RGSF v1 document builder: maps a decoded source scenario onto the
 * neutral JSON scenario format consumed by the rulegauge toolkit.
 *
 * Policy choices live here:
 *  - only vehicle-type tracks are carried; everything else is dropped
 *  - speed limits convert from mph to m/s with the exact 0.44704 factor
 *  - the native frame rate is preserved (subsampling is the analyzer's
 *    job); it is derived from the timestamp span
 *  - headings wrap into [-pi, pi] (float32 pi from the source can sit
 *    just outside the double-precision interval)
 *  - lanes with fewer than two centerline points cannot form a polyline
 *    and are dropped, counted in the stats
 */

import { OBJECT_TYPE_VEHICLE, WaymoScenario } from './waymo';

export const MPH_TO_MPS = 0.44704;
const DEFAULT_RATE_HZ = 10.0;

export interface RgsfVehicle {
  id: string;
  x: number;
  y: number;
  heading_rad: number;
  vx: number;
  vy: number;
  length_m: number;
  width_m: number;
  valid: boolean;
}

export interface RgsfLane {
  lane_id: string;
  speed_limit_mps: number | null;
  polyline: Array<[number, number]>;
}

export interface RgsfFrame {
  frame_index: number;
  time_s: number;
  vehicles: RgsfVehicle[];
}

export interface RgsfDocument {
  schema_version: 1;
  scenario_id: string;
  sample_rate_hz: number;
  lanes: RgsfLane[];
  frames: RgsfFrame[];
}

export interface ConversionStats {
  frames: number;
  vehicleTracks: number;
  droppedTracks: number;
  lanes: number;
  droppedLanes: number;
  coercedInvalidStates: number;
}

export interface ConversionResult {
  doc: RgsfDocument;
  stats: ConversionStats;
  diagnostics: string[];
}

function wrapAngle(h: number): number {
  if (h >= -Math.PI && h <= Math.PI) return h;
  let w = h % (2 * Math.PI);
  if (w > Math.PI) w -= 2 * Math.PI;
  else if (w < -Math.PI) w += 2 * Math.PI;
  return w;
}

function allFinite(...values: number[]): boolean {
  return values.every(Number.isFinite);
}

function sampleRate(timestamps: number[]): number {
  if (timestamps.length < 2) return DEFAULT_RATE_HZ;
  const span = timestamps[timestamps.length - 1] - timestamps[0];
  if (!(span > 0)) return DEFAULT_RATE_HZ;
  return (timestamps.length - 1) / span;
}

export function buildDocument(scenario: WaymoScenario): ConversionResult {
  const diagnostics: string[] = [];
  const stats: ConversionStats = {
    frames: scenario.timestamps.length,
    vehicleTracks: 0,
    droppedTracks: 0,
    lanes: 0,
    droppedLanes: 0,
    coercedInvalidStates: 0,
  };

  const vehicles = scenario.tracks.filter((t) => t.objectType === OBJECT_TYPE_VEHICLE);
  stats.vehicleTracks = vehicles.length;
  stats.droppedTracks = scenario.tracks.length - vehicles.length;

  const lanes: RgsfLane[] = [];
  for (const lane of scenario.lanes) {
    if (lane.polyline.length < 2) {
      stats.droppedLanes += 1;
      diagnostics.push(
        `lane ${lane.featureId}: centerline has ${lane.polyline.length} point(s), dropped`
      );
      continue;
    }
    lanes.push({
      lane_id: lane.featureId,
      speed_limit_mps: lane.speedLimitMph === null ? null : lane.speedLimitMph * MPH_TO_MPS,
      polyline: lane.polyline,
    });
  }
  stats.lanes = lanes.length;
  if (lanes.length === 0) {
    diagnostics.push(`scenario ${scenario.scenarioId || '(unnamed)'}: no lane features in map data`);
  }

  const frames: RgsfFrame[] = scenario.timestamps.map((time, t) => ({
    frame_index: t,
    time_s: time,
    vehicles: vehicles.map((track) => {
      const state = track.states[t];
      if (!state) {
        stats.coercedInvalidStates += 1;
        return emptyState(String(track.id));
      }
      let valid = state.valid;
      if (
        valid &&
        (!allFinite(
          state.centerX,
          state.centerY,
          state.heading,
          state.velocityX,
          state.velocityY,
          state.length,
          state.width
        ) ||
          state.length <= 0 ||
          state.width <= 0)
      ) {
        // degenerate source state: cannot stand as a valid observation
        stats.coercedInvalidStates += 1;
        valid = false;
      }
      if (!valid) {
        const v = emptyState(String(track.id));
        // carry whatever finite values exist; zero out the rest
        v.x = Number.isFinite(state.centerX) ? state.centerX : 0;
        v.y = Number.isFinite(state.centerY) ? state.centerY : 0;
        v.heading_rad = Number.isFinite(state.heading) ? wrapAngle(state.heading) : 0;
        v.vx = Number.isFinite(state.velocityX) ? state.velocityX : 0;
        v.vy = Number.isFinite(state.velocityY) ? state.velocityY : 0;
        v.length_m = Number.isFinite(state.length) ? state.length : 0;
        v.width_m = Number.isFinite(state.width) ? state.width : 0;
        return v;
      }
      return {
        id: String(track.id),
        x: state.centerX,
        y: state.centerY,
        heading_rad: wrapAngle(state.heading),
        vx: state.velocityX,
        vy: state.velocityY,
        length_m: state.length,
        width_m: state.width,
        valid: true,
      };
    }),
  }));

  return {
    doc: {
      schema_version: 1,
      scenario_id: scenario.scenarioId,
      sample_rate_hz: sampleRate(scenario.timestamps),
      lanes,
      frames,
    },
    stats,
    diagnostics,
  };
}

function emptyState(id: string): RgsfVehicle {
  return {
    id,
    x: 0,
    y: 0,
    heading_rad: 0,
    vx: 0,
    vy: 0,
    length_m: 0,
    width_m: 0,
    valid: false,
  };
}
