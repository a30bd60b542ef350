import { describe, expect, it } from 'vitest';

import {
  decodeMessage,
  firstDouble,
  firstFloat,
  firstString,
  firstVarint,
  messages,
  readVarint,
  repeatedDoubles,
  WireError,
} from '../src/protowire';
import { ProtoWriter } from './helpers/encode';

describe('varint', () => {
  it.each([0n, 1n, 127n, 128n, 300n, 2n ** 32n, 2n ** 53n, 2n ** 63n])(
    'round-trips %s',
    (value) => {
      const bytes = new ProtoWriter().varint(value).finish();
      const [decoded, next] = readVarint(bytes, 0);
      expect(decoded).toBe(value);
      expect(next).toBe(bytes.length);
    }
  );

  it('rejects unterminated varints', () => {
    expect(() => readVarint(Uint8Array.from([0x80, 0x80]), 0)).toThrow(WireError);
  });
});

describe('decodeMessage', () => {
  it('reads scalar field types', () => {
    const data = new ProtoWriter()
      .int(1, 42)
      .double(2, 2.5)
      .float(3, 1.5)
      .string(4, 'hello')
      .finish();
    const fields = decodeMessage(data);
    expect(firstVarint(fields, 1)).toBe(42n);
    expect(firstDouble(fields, 2)).toBe(2.5);
    expect(firstFloat(fields, 3)).toBe(1.5);
    expect(firstString(fields, 4)).toBe('hello');
    expect(firstVarint(fields, 9)).toBeUndefined();
  });

  it('keeps repeated occurrences in order and last-wins for scalars', () => {
    const data = new ProtoWriter().int(7, 1).int(7, 2).int(7, 3).finish();
    const fields = decodeMessage(data);
    expect(fields.get(7)!.length).toBe(3);
    expect(firstVarint(fields, 7)).toBe(3n);
  });

  it('parses nested messages', () => {
    const data = new ProtoWriter()
      .message(5, (w) => w.int(1, 9).string(2, 'inner'))
      .finish();
    const inner = decodeMessage(messages(decodeMessage(data).get(5))[0]);
    expect(firstVarint(inner, 1)).toBe(9n);
    expect(firstString(inner, 2)).toBe('inner');
  });

  it('skips unknown fields without failing', () => {
    const data = new ProtoWriter()
      .int(90, 5)
      .double(91, 1.0)
      .bytes(92, Buffer.from('junk'))
      .int(1, 7)
      .finish();
    expect(firstVarint(decodeMessage(data), 1)).toBe(7n);
  });

  it('rejects truncated fields', () => {
    const data = new ProtoWriter().double(2, 2.5).finish();
    expect(() => decodeMessage(data.subarray(0, data.length - 1))).toThrow(WireError);
  });
});

describe('repeatedDoubles', () => {
  const values = [0.0, 0.1, 0.2, 0.30000000000000004, -7.25];

  it('reads unpacked encoding', () => {
    const w = new ProtoWriter();
    for (const v of values) w.double(1, v);
    expect(repeatedDoubles(decodeMessage(w.finish()).get(1))).toEqual(values);
  });

  it('reads packed encoding', () => {
    const data = new ProtoWriter().packedDoubles(1, values).finish();
    expect(repeatedDoubles(decodeMessage(data).get(1))).toEqual(values);
  });

  it('rejects ragged packed payloads', () => {
    const data = new ProtoWriter().bytes(1, new Uint8Array(7)).finish();
    expect(() => repeatedDoubles(decodeMessage(data).get(1))).toThrow(WireError);
  });

  it('missing field decodes to empty', () => {
    expect(repeatedDoubles(undefined)).toEqual([]);
  });
});
