"""graph6 encoding and decoding (bit-exact, n <= 64)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .errors import CapacityError, Graph6Error
from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))


def encode(g: Graph) -> str:
    """Encode ``g``; bits run over the upper triangle column by column."""
    bits = []
    for j in range(1, g.n):
        row_j = g.adj[j]
        for i in range(j):
            bits.append((row_j >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        body.append(chr(value + 63))
    return _size_prefix(g.n) + "".join(body)


def decode(text: str) -> Graph:
    s = text[len(HEADER) :] if text.startswith(HEADER) else text
    base = len(text) - len(s)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside the printable range 63..126", base + k)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    else:
        if len(s) >= 2 and s[1] == "~":
            raise CapacityError(f"graph6 sizes above 258047 are not supported (cap {MAX_VERTICES})")
        if len(s) < 4:
            raise Graph6Error("truncated size field", base + len(s))
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        if n < 63:
            raise Graph6Error("non-canonical long size field", base)
        pos = 4
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 declares {n} vertices, cap is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) < pos + nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for n={n}", base + len(s))
    if len(s) > pos + nbytes:
        raise Graph6Error("trailing bytes after graph data", base + pos + nbytes)
    rows = [0] * n
    i, j = 0, 1
    for k in range(nbytes):
        value = ord(s[pos + k]) - 63
        for shift in range(5, -1, -1):
            if j >= n:
                if (value >> shift) & 1:
                    raise Graph6Error("non-zero padding bits", base + pos + k)
                continue
            if (value >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def read_lines(stream: TextIO | Iterable[str]) -> Iterator[Graph]:
    """Decode one graph per non-blank line."""
    for line in stream:
        line = line.strip()
        if line:
            yield decode(line)


def write_lines(graphs: Iterable[Graph], stream: TextIO) -> int:
    count = 0
    for g in graphs:
        stream.write(encode(g) + "\n")
        count += 1
    return count
