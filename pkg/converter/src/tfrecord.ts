/**
 * TFRecord container framing: length-prefixed records with masked CRC32C
 * checksums over both the length and the payload.
 *
 * Layout per record:
 *   uint64 length (LE) | uint32 masked_crc(length bytes) | payload | uint32 masked_crc(payload)
 */

import { maskedCrc32c } from './crc32c';

export class DecodeError extends Error {}

export function* readRecords(buf: Buffer): Generator<Buffer> {
  let off = 0;
  while (off < buf.length) {
    if (buf.length - off < 12) {
      throw new DecodeError(`truncated record header at byte ${off}`);
    }
    const lengthBytes = buf.subarray(off, off + 8);
    const length = Number(buf.readBigUInt64LE(off));
    const lengthCrc = buf.readUInt32LE(off + 8);
    if (maskedCrc32c(lengthBytes) !== lengthCrc) {
      throw new DecodeError(`length checksum mismatch at byte ${off}`);
    }
    off += 12;
    if (buf.length - off < length + 4) {
      throw new DecodeError(`truncated record payload at byte ${off}`);
    }
    const payload = buf.subarray(off, off + length);
    const payloadCrc = buf.readUInt32LE(off + length);
    if (maskedCrc32c(payload) !== payloadCrc) {
      throw new DecodeError(`payload checksum mismatch at byte ${off}`);
    }
    off += length + 4;
    yield payload;
  }
}

export function writeRecord(payload: Uint8Array): Buffer {
  const header = Buffer.alloc(12);
  header.writeBigUInt64LE(BigInt(payload.length), 0);
  header.writeUInt32LE(maskedCrc32c(header.subarray(0, 8)), 8);
  const footer = Buffer.alloc(4);
  footer.writeUInt32LE(maskedCrc32c(payload), 0);
  return Buffer.concat([header, Buffer.from(payload), footer]);
}
