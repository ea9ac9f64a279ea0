"""PGM (portable graymap) ingestion and block extraction.

Supports the ASCII (P2) and binary (P5) variants with maxval up to 65535;
binary 16-bit samples are big-endian per the format. Header comments
(# to end of line) are skipped. Malformed headers raise ParseError with the
byte offset of the offending token; short payloads raise TruncatedFile.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSize, ParseError, TruncatedFile, ZeroVariance


@dataclass(frozen=True)
class ImageGray:
    """Grayscale image with integer samples in [0, maxval]."""

    width: int
    height: int
    maxval: int
    pixels: np.ndarray

    @property
    def bit_depth(self):
        return 8 if self.maxval < 256 else 16


def _next_token(data, pos):
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    if pos >= n:
        raise TruncatedFile("unexpected end of file inside header")
    start = pos
    while pos < n and not data[pos:pos + 1].isspace() \
            and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], start, pos


def _header_int(data, pos, what, upper):
    token, start, pos = _next_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {token!r}",
                         offset=start) from None
    if not 1 <= value <= upper:
        raise ParseError(f"{what} {value} out of range 1..{upper}",
                         offset=start)
    return value, pos


def read_pgm(path):
    """Read a P2 or P5 PGM file into an ImageGray."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, start, pos = _next_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"unsupported magic {magic!r} (want P2 or P5)",
                         offset=start)
    width, pos = _header_int(data, pos, "width", 2 ** 31)
    height, pos = _header_int(data, pos, "height", 2 ** 31)
    maxval, pos = _header_int(data, pos, "maxval", 65535)
    count = width * height

    if magic == b"P5":
        pos += 1  # single whitespace byte after maxval
        itemsize = 1 if maxval < 256 else 2
        need = count * itemsize
        payload = data[pos:pos + need]
        if len(payload) < need:
            raise TruncatedFile(
                f"binary payload holds {len(payload)} bytes, need {need}")
        dtype = np.uint8 if itemsize == 1 else np.dtype(">u2")
        pixels = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    else:
        pixels = np.empty(count, dtype=np.int64)
        for i in range(count):
            token, start, pos = _next_token(data, pos)
            try:
                pixels[i] = int(token)
            except ValueError:
                raise ParseError(f"expected integer sample, got {token!r}",
                                 offset=start) from None
    if pixels.max(initial=0) > maxval:
        raise ParseError(f"sample value {pixels.max()} exceeds maxval {maxval}")
    return ImageGray(width=width, height=height, maxval=maxval,
                     pixels=pixels.reshape(height, width))


def central_block(img, size, standardize=True):
    """Centered size x size crop as float values, ties broken toward the
    top-left. With standardize=True (the image-analysis default) the block
    is reduced to zero mean and unit standard deviation; constant blocks
    raise ZeroVariance."""
    if size > min(img.width, img.height):
        raise InvalidSize(
            f"block size {size} exceeds image extent "
            f"{img.width}x{img.height}")
    r0 = (img.height - size) // 2
    c0 = (img.width - size) // 2
    block = img.pixels[r0:r0 + size, c0:c0 + size].astype(float)
    if standardize:
        sd = block.std()
        if sd == 0:
            raise ZeroVariance("central block is constant; cannot standardize")
        block = (block - block.mean()) / sd
    return block
