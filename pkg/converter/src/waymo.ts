/**
 * Decoders for the subset of the Waymo Open Motion `Scenario` protobuf
 * this converter consumes. Field numbers follow the published
 * waymo_open_dataset protos (scenario.proto / map.proto); unknown fields
 * are skipped, so newer dataset revisions remain readable.
 */

import {
  FieldMap,
  decodeMessage,
  firstDouble,
  firstFloat,
  firstString,
  firstVarint,
  messages,
  repeatedDoubles,
} from './protowire';

// Scenario
const SCENARIO_TIMESTAMPS_SECONDS = 1; // repeated double
const SCENARIO_TRACKS = 2; // repeated Track
const SCENARIO_ID = 5; // string
const SCENARIO_MAP_FEATURES = 8; // repeated MapFeature

// Track
const TRACK_ID = 1; // int32
const TRACK_OBJECT_TYPE = 2; // enum
const TRACK_STATES = 3; // repeated ObjectState

// Track.ObjectType
export const OBJECT_TYPE_VEHICLE = 1;

// ObjectState
const STATE_CENTER_X = 2; // double
const STATE_CENTER_Y = 3; // double
const STATE_LENGTH = 5; // float
const STATE_WIDTH = 6; // float
const STATE_HEADING = 8; // float
const STATE_VELOCITY_X = 9; // float
const STATE_VELOCITY_Y = 10; // float
const STATE_VALID = 11; // bool

// MapFeature
const FEATURE_ID = 1; // int64
const FEATURE_LANE = 3; // LaneCenter (oneof feature_data)

// LaneCenter
const LANE_SPEED_LIMIT_MPH = 1; // double
const LANE_POLYLINE = 8; // repeated MapPoint

// MapPoint
const POINT_X = 1; // double
const POINT_Y = 2; // double

export interface WaymoObjectState {
  centerX: number;
  centerY: number;
  length: number;
  width: number;
  heading: number;
  velocityX: number;
  velocityY: number;
  valid: boolean;
}

export interface WaymoTrack {
  id: number;
  objectType: number;
  states: WaymoObjectState[];
}

export interface WaymoLane {
  featureId: string;
  speedLimitMph: number | null;
  polyline: Array<[number, number]>;
}

export interface WaymoScenario {
  scenarioId: string;
  timestamps: number[];
  tracks: WaymoTrack[];
  lanes: WaymoLane[];
}

function decodeObjectState(data: Uint8Array): WaymoObjectState {
  const f = decodeMessage(data);
  return {
    centerX: firstDouble(f, STATE_CENTER_X) ?? 0,
    centerY: firstDouble(f, STATE_CENTER_Y) ?? 0,
    length: firstFloat(f, STATE_LENGTH) ?? 0,
    width: firstFloat(f, STATE_WIDTH) ?? 0,
    heading: firstFloat(f, STATE_HEADING) ?? 0,
    velocityX: firstFloat(f, STATE_VELOCITY_X) ?? 0,
    velocityY: firstFloat(f, STATE_VELOCITY_Y) ?? 0,
    valid: (firstVarint(f, STATE_VALID) ?? 0n) !== 0n,
  };
}

function decodeTrack(data: Uint8Array): WaymoTrack {
  const f = decodeMessage(data);
  return {
    id: Number(firstVarint(f, TRACK_ID) ?? 0n),
    objectType: Number(firstVarint(f, TRACK_OBJECT_TYPE) ?? 0n),
    states: messages(f.get(TRACK_STATES)).map(decodeObjectState),
  };
}

function decodeLane(featureId: string, data: Uint8Array): WaymoLane {
  const f = decodeMessage(data);
  const limit = firstDouble(f, LANE_SPEED_LIMIT_MPH);
  const polyline: Array<[number, number]> = messages(f.get(LANE_POLYLINE)).map((point) => {
    const p = decodeMessage(point);
    return [firstDouble(p, POINT_X) ?? 0, firstDouble(p, POINT_Y) ?? 0];
  });
  return {
    featureId,
    speedLimitMph: limit !== undefined && limit > 0 ? limit : null,
    polyline,
  };
}

function decodeFeatureLanes(fields: FieldMap): WaymoLane[] {
  const lanes: WaymoLane[] = [];
  for (const feature of messages(fields.get(SCENARIO_MAP_FEATURES))) {
    const f = decodeMessage(feature);
    const laneEntries = f.get(FEATURE_LANE);
    if (!laneEntries || laneEntries.length === 0) continue; // not a lane feature
    const id = (firstVarint(f, FEATURE_ID) ?? 0n).toString();
    lanes.push(decodeLane(id, messages(laneEntries)[laneEntries.length - 1]));
  }
  return lanes;
}

export function decodeScenario(payload: Uint8Array): WaymoScenario {
  const fields = decodeMessage(payload);
  return {
    scenarioId: firstString(fields, SCENARIO_ID) ?? '',
    timestamps: repeatedDoubles(fields.get(SCENARIO_TIMESTAMPS_SECONDS)),
    tracks: messages(fields.get(SCENARIO_TRACKS)).map(decodeTrack),
    lanes: decodeFeatureLanes(fields),
  };
}
