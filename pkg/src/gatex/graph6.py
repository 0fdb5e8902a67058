"""graph6 codec.

Bit order follows the public format: the upper triangle is read column
by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), six bits per byte,
each byte offset by 63.  Vertex counts up to 258047 are supported
(single-byte and 4-byte length forms).
"""

from __future__ import annotations

from .errors import Graph6Error, GraphError
from .graph import Graph

HEADER = ">>graph6<<"
MAX_N = 258047


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= MAX_N:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError(f"graph6: unsupported vertex count {n}")


def graph6_encode(g: Graph, header: bool = False) -> str:
    n = g.n
    out = [HEADER] if header else []
    out.append(_encode_n(n))
    adj = g.adj
    chunk, filled = 0, 0
    for j in range(1, n):
        col = adj[j]
        for i in range(j):
            chunk = (chunk << 1) | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(chunk + 63))
                chunk, filled = 0, 0
    if filled:
        out.append(chr((chunk << (6 - filled)) + 63))
    return "".join(out)


def graph6_decode(text) -> Graph:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte", exc.start) from None
    base = 0
    if text.startswith(HEADER):
        base = len(HEADER)
    body = text[base:]
    if body.endswith("\n"):
        body = body[:-1]
        if body.endswith("\r"):
            body = body[:-1]
    if not body:
        raise Graph6Error("empty graph6 record", base)
    for k, ch in enumerate(body):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + k)
    vals = [ord(ch) - 63 for ch in body]
    if vals[0] < 63:
        n, pos = vals[0], 1
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated length prefix", base + len(vals))
        if vals[1] == 63:
            raise Graph6Error("unsupported vertex count (8-byte length form)", base + 1)
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
        if n <= 62:
            raise Graph6Error("non-canonical length prefix", base)
    if n == 0:
        raise Graph6Error("graph with zero vertices", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    data = vals[pos:]
    if len(data) < nbytes:
        raise Graph6Error("truncated adjacency data", base + len(vals))
    if len(data) > nbytes:
        raise Graph6Error("trailing garbage", base + pos + nbytes)
    pad = nbytes * 6 - nbits
    if pad and data[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + len(vals) - 1)
    adj = [0] * n
    bit = 0
    i, j = 0, 1
    for byte in data:
        for s in range(5, -1, -1):
            if bit == nbits:
                break
            if byte >> s & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph.from_masks(adj)


def read_graph6_lines(lines):
    """Yield (line_number, graph) for each non-blank record."""
    for k, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        yield k, graph6_decode(line)
