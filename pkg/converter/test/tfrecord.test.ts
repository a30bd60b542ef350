import { describe, expect, it } from 'vitest';

import { DecodeError, readRecords, writeRecord } from '../src/tfrecord';

function roundTrip(payloads: Uint8Array[]): Buffer[] {
  const buf = Buffer.concat(payloads.map((p) => writeRecord(p)));
  return Array.from(readRecords(buf));
}

describe('tfrecord framing', () => {
  it('round-trips multiple records in order', () => {
    const payloads = [
      Buffer.from('first'),
      Buffer.from(''),
      Buffer.from([0, 1, 2, 255, 254]),
    ];
    const out = roundTrip(payloads);
    expect(out.map((b) => Buffer.from(b).toString('hex'))).toEqual(
      payloads.map((b) => b.toString('hex'))
    );
  });

  it('detects payload corruption', () => {
    const buf = Buffer.from(writeRecord(Buffer.from('payload')));
    buf[14] ^= 0xff; // flip a payload byte
    expect(() => Array.from(readRecords(buf))).toThrow(DecodeError);
  });

  it('detects length corruption', () => {
    const buf = Buffer.from(writeRecord(Buffer.from('payload')));
    buf[0] ^= 0x01;
    expect(() => Array.from(readRecords(buf))).toThrow(/length checksum/);
  });

  it('detects truncation', () => {
    const buf = Buffer.from(writeRecord(Buffer.from('payload')));
    expect(() => Array.from(readRecords(buf.subarray(0, buf.length - 2)))).toThrow(
      /truncated/
    );
  });

  it('empty file yields no records', () => {
    expect(Array.from(readRecords(Buffer.alloc(0)))).toEqual([]);
  });
});
