export { crc32c, maskedCrc32c } from './crc32c';
export { DecodeError, readRecords, writeRecord } from './tfrecord';
export { WireError, decodeMessage, repeatedDoubles } from './protowire';
export { decodeScenario, OBJECT_TYPE_VEHICLE } from './waymo';
export type { WaymoScenario, WaymoTrack, WaymoLane, WaymoObjectState } from './waymo';
export { buildDocument, MPH_TO_MPS } from './rgsf';
export type { RgsfDocument, ConversionStats } from './rgsf';
export { convertFiles, convertRecord } from './convert';
export type { Manifest, ManifestEntry } from './convert';
