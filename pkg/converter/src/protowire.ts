/**
 * Minimal protobuf wire-format reader: just enough to walk proto2
 * messages field by field, skipping anything unknown. Group wire types
 * are not supported (absent from the schemas this tool reads).
 */

export class WireError extends Error {}

export const WIRE_VARINT = 0;
export const WIRE_FIXED64 = 1;
export const WIRE_LEN = 2;
export const WIRE_FIXED32 = 5;

export interface WireValue {
  wire: number;
  /** varint payload (wire 0) */
  varint?: bigint;
  /** raw bytes (wire 1: 8 bytes, wire 2: length-delimited, wire 5: 4 bytes) */
  bytes?: Uint8Array;
}

export type FieldMap = Map<number, WireValue[]>;

export function readVarint(data: Uint8Array, offset: number): [bigint, number] {
  let result = 0n;
  let shift = 0n;
  let pos = offset;
  for (;;) {
    if (pos >= data.length) throw new WireError(`varint runs past end at byte ${offset}`);
    const byte = data[pos];
    result |= BigInt(byte & 0x7f) << shift;
    pos += 1;
    if ((byte & 0x80) === 0) return [result, pos];
    shift += 7n;
    if (shift > 63n) throw new WireError(`varint longer than 64 bits at byte ${offset}`);
  }
}

/** Parse one message into field number -> occurrences, in wire order. */
export function decodeMessage(data: Uint8Array): FieldMap {
  const fields: FieldMap = new Map();
  let off = 0;
  while (off < data.length) {
    const [key, afterKey] = readVarint(data, off);
    const fieldNumber = Number(key >> 3n);
    const wire = Number(key & 7n);
    if (fieldNumber === 0) throw new WireError(`field number 0 at byte ${off}`);
    off = afterKey;
    let value: WireValue;
    switch (wire) {
      case WIRE_VARINT: {
        const [v, next] = readVarint(data, off);
        value = { wire, varint: v };
        off = next;
        break;
      }
      case WIRE_FIXED64: {
        if (off + 8 > data.length) throw new WireError(`fixed64 past end at byte ${off}`);
        value = { wire, bytes: data.subarray(off, off + 8) };
        off += 8;
        break;
      }
      case WIRE_LEN: {
        const [len, next] = readVarint(data, off);
        const length = Number(len);
        if (next + length > data.length) {
          throw new WireError(`length-delimited field past end at byte ${off}`);
        }
        value = { wire, bytes: data.subarray(next, next + length) };
        off = next + length;
        break;
      }
      case WIRE_FIXED32: {
        if (off + 4 > data.length) throw new WireError(`fixed32 past end at byte ${off}`);
        value = { wire, bytes: data.subarray(off, off + 4) };
        off += 4;
        break;
      }
      default:
        throw new WireError(`unsupported wire type ${wire} at byte ${off}`);
    }
    const bucket = fields.get(fieldNumber);
    if (bucket) bucket.push(value);
    else fields.set(fieldNumber, [value]);
  }
  return fields;
}

function view(bytes: Uint8Array): DataView {
  return new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
}

export function asDouble(value: WireValue): number {
  if (value.wire !== WIRE_FIXED64 || !value.bytes) throw new WireError('expected fixed64');
  return view(value.bytes).getFloat64(0, true);
}

export function asFloat(value: WireValue): number {
  if (value.wire !== WIRE_FIXED32 || !value.bytes) throw new WireError('expected fixed32');
  return view(value.bytes).getFloat32(0, true);
}

/** Repeated double field: accepts both packed and unpacked encodings. */
export function repeatedDoubles(values: WireValue[] | undefined): number[] {
  if (!values) return [];
  const out: number[] = [];
  for (const value of values) {
    if (value.wire === WIRE_FIXED64) {
      out.push(asDouble(value));
    } else if (value.wire === WIRE_LEN && value.bytes) {
      if (value.bytes.length % 8 !== 0) {
        throw new WireError('packed double field length not a multiple of 8');
      }
      const dv = view(value.bytes);
      for (let i = 0; i < value.bytes.length; i += 8) {
        out.push(dv.getFloat64(i, true));
      }
    } else {
      throw new WireError('expected double encoding');
    }
  }
  return out;
}

export function messages(values: WireValue[] | undefined): Uint8Array[] {
  if (!values) return [];
  return values.map((v) => {
    if (v.wire !== WIRE_LEN || !v.bytes) throw new WireError('expected length-delimited message');
    return v.bytes;
  });
}

export function firstVarint(fields: FieldMap, tag: number): bigint | undefined {
  const values = fields.get(tag);
  if (!values || values.length === 0) return undefined;
  const last = values[values.length - 1]; // proto2: last occurrence wins
  if (last.wire !== WIRE_VARINT || last.varint === undefined) {
    throw new WireError(`field ${tag} is not a varint`);
  }
  return last.varint;
}

export function firstDouble(fields: FieldMap, tag: number): number | undefined {
  const values = fields.get(tag);
  if (!values || values.length === 0) return undefined;
  return asDouble(values[values.length - 1]);
}

export function firstFloat(fields: FieldMap, tag: number): number | undefined {
  const values = fields.get(tag);
  if (!values || values.length === 0) return undefined;
  return asFloat(values[values.length - 1]);
}

export function firstString(fields: FieldMap, tag: number): string | undefined {
  const values = fields.get(tag);
  if (!values || values.length === 0) return undefined;
  const last = values[values.length - 1];
  if (last.wire !== WIRE_LEN || !last.bytes) throw new WireError(`field ${tag} is not bytes`);
  return Buffer.from(last.bytes).toString('utf8');
}
