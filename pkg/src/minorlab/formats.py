"""graph6 and plain edge-list encodings."""

from __future__ import annotations

import io
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import FormatError
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise FormatError("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise FormatError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    out = bytearray(_encode_n(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    text = out.decode("ascii")
    return HEADER + text if header else text


def from_graph6(data: str | bytes, base_offset: int = 0) -> Graph:
    """Decode one graph6 record; ``base_offset`` shifts reported byte offsets."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    pos = 0
    if data.startswith(HEADER.encode()):
        pos = len(HEADER)
    for k in range(pos, len(data)):
        if not 63 <= data[k] <= 126:
            raise FormatError(f"invalid graph6 byte {data[k]!r}", offset=base_offset + k)
    if pos >= len(data):
        raise FormatError("empty graph6 record", offset=base_offset + pos)
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    else:
        if len(data) > pos + 1 and data[pos + 1] == 126:
            width, pos = 6, pos + 2
        else:
            width, pos = 3, pos + 1
        if len(data) < pos + width:
            raise FormatError("truncated graph6 order field", offset=base_offset + len(data))
        n = 0
        for k in range(width):
            n = (n << 6) | (data[pos + k] - 63)
        pos += width
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}",
                          offset=base_offset + pos + min(len(body), need))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if n * (n - 1) // 2 % 6:
        last = body[-1] - 63
        pad = 6 - (n * (n - 1) // 2) % 6
        if last & ((1 << pad) - 1):
            raise FormatError("nonzero graph6 padding bits", offset=base_offset + len(data) - 1)
    return Graph(n, adj)


def iter_graph6(stream: IO[bytes] | IO[str] | Iterable) -> Iterator[Graph]:
    """Yield graphs from a one-record-per-line graph6 stream; blank lines are skipped."""
    offset = 0
    for line in stream:
        raw = line.encode("ascii", errors="replace") if isinstance(line, str) else line
        if raw.strip():
            yield from_graph6(raw.rstrip(b"\r\n"), base_offset=offset)
        offset += len(raw)


def read_graph6_file(path: str | Path) -> Iterator[Graph]:
    with open(path, "rb") as fh:
        yield from iter_graph6(fh)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse ``n m`` then ``m`` lines of ``u v`` (0-indexed). ``#`` starts a comment."""
    rows = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise FormatError("empty edge list", line=1)
    lineno, head = rows[0]
    if len(head) != 2:
        raise FormatError("header must be 'n m'", line=lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError("header must hold two integers", line=lineno) from None
    if len(rows) - 1 != m:
        raise FormatError(f"header promises {m} edges, found {len(rows) - 1}",
                          line=rows[-1][0])
    adj = [0] * n
    for lineno, parts in rows[1:]:
        if len(parts) != 2:
            raise FormatError("edge line must be 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("edge endpoints must be integers", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"endpoint out of range 0..{n - 1}", line=lineno)
        if u == v:
            raise FormatError("self-loop", line=lineno)
        if adj[u] >> v & 1:
            raise FormatError(f"duplicate edge {u} {v}", line=lineno)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def load_graph(path: str | Path) -> Graph:
    """Read a graph file, choosing the format from its content.

    A first non-comment line with two whitespace-separated fields is treated
    as an edge-list header; anything else as a single graph6 record.
    """
    raw = Path(path).read_bytes()
    text = raw.decode("ascii", errors="replace")
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            if len(stripped.split()) == 2:
                return from_edge_list(text)
            break
    first = raw.lstrip().split(b"\n", 1)[0]
    lead = len(raw) - len(raw.lstrip())
    return from_graph6(first, base_offset=lead)
