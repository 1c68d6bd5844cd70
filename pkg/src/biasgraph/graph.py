"""Weighted directed media graph: construction, normalization, queries, TSV I/O.

Nodes are canonical news-source domains. An edge ``s -> s'`` carries the
proportion of all outbound hyperlinks of ``s`` that point at ``s'``, so every
non-empty out-row sums to 1. The node order is lexicographic and every
summation downstream follows it, which makes all results reproducible
bit-for-bit.

Edge file format (UTF-8 TSV, one record per line)::

    src<TAB>dst<TAB>value

Lines starting with ``#`` are comments. A ``# normalized`` comment marks the
third column as row-normalized weights (written by :func:`save_graph`); a
``# weights`` comment marks raw weights that need not sum to 1 per row
(written for extracted neighborhoods); otherwise the column holds raw
hyperlink counts. ``# node <domain>`` comments preserve isolated nodes
across a save/load round trip.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import math
import numpy as np

from .errors import (
    EmptyDomain,
    MalformedDomain,
    NoEdges,
    ParseError,
    UnknownSource,
)

ROW_SUM_TOLERANCE = 1e-9


def normalize_domain(raw: str) -> str:
    """Canonicalize a URL or domain string to a bare registrable domain.

    Lowercases, strips the scheme, any leading ``www.`` prefixes, and the
    path/query/fragment/port. Subdomains other than ``www`` are kept, since
    label datasets key on full URL domains. Idempotent.
    """
    s = raw.strip().lower()
    if "://" in s:
        s = s.split("://", 1)[1]
    for sep in ("/", "?", "#"):
        if sep in s:
            s = s.split(sep, 1)[0]
    if ":" in s:
        s = s.split(":", 1)[0]
    while s.startswith("www."):
        s = s[4:]
    s = s.strip(".")
    if not s:
        raise EmptyDomain(f"nothing remains after normalizing {raw!r}")
    if "." not in s:
        raise MalformedDomain(f"{raw!r} normalizes to {s!r}, which has no dot")
    return s


@dataclass(frozen=True)
class EdgeRecord:
    """One raw ingestion record: a (source, destination, count) triple.

    ``count`` is a non-negative hyperlink count; pre-normalized weights in
    [0, 1] are accepted too since row normalization is idempotent on them.
    """

    src: str
    dst: str
    count: float

    def __post_init__(self):
        if not (math.isfinite(self.count) and self.count >= 0):
            raise ValueError(f"edge count must be finite and >= 0, got {self.count!r}")


class MediaGraph:
    """Immutable weighted directed graph over canonical source domains.

    Out-edges and in-edges are stored as CSR arrays sorted lexicographically
    (by node, then by neighbor), so iteration order is deterministic. The
    in-edge structure is the exact transpose of the out-edge structure.
    Instances built by :func:`build_graph` / :func:`load_graph` are
    row-normalized; neighborhood subgraphs may not be (their weights keep
    the global meaning they had in the parent graph).
    """

    __slots__ = (
        "_nodes",
        "_index",
        "_out_indptr",
        "_out_indices",
        "_out_weights",
        "_in_indptr",
        "_in_indices",
        "_in_weights",
        "_row_normalized",
    )

    def __init__(self, nodes, out_csr, in_csr, row_normalized):
        self._nodes: tuple[str, ...] = nodes
        self._index = {d: i for i, d in enumerate(nodes)}
        self._out_indptr, self._out_indices, self._out_weights = out_csr
        self._in_indptr, self._in_indices, self._in_weights = in_csr
        self._row_normalized = bool(row_normalized)
        for arr in (*out_csr, *in_csr):
            arr.setflags(write=False)

    @classmethod
    def _from_edges(
        cls,
        nodes: Sequence[str],
        edges: dict[tuple[str, str], float],
        row_normalized: bool,
    ) -> "MediaGraph":
        nodes = tuple(sorted(nodes))
        index = {d: i for i, d in enumerate(nodes)}
        n = len(nodes)
        m = len(edges)
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        wgt = np.empty(m, dtype=np.float64)
        for k, ((s, d), w) in enumerate(edges.items()):
            src[k] = index[s]
            dst[k] = index[d]
            wgt[k] = w
        out_csr = _csr(n, src, dst, wgt)
        in_csr = _csr(n, dst, src, wgt)
        return cls(nodes, out_csr, in_csr, row_normalized)

    # -- queries ---------------------------------------------------------

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return int(self._out_indices.shape[0])

    @property
    def row_normalized(self) -> bool:
        return self._row_normalized

    def __contains__(self, domain: str) -> bool:
        return domain in self._index

    def node_id(self, domain: str) -> int:
        try:
            return self._index[domain]
        except KeyError:
            raise UnknownSource(f"{domain!r} is not a node of this graph") from None

    def out_edges(self, domain: str) -> tuple[tuple[str, float], ...]:
        """Outgoing ``(destination, weight)`` pairs, destination-sorted."""
        i = self.node_id(domain)
        lo, hi = self._out_indptr[i], self._out_indptr[i + 1]
        return tuple(
            (self._nodes[self._out_indices[e]], float(self._out_weights[e]))
            for e in range(lo, hi)
        )

    def in_edges(self, domain: str) -> tuple[tuple[str, float], ...]:
        """Incoming ``(source, weight)`` pairs, source-sorted."""
        i = self.node_id(domain)
        lo, hi = self._in_indptr[i], self._in_indptr[i + 1]
        return tuple(
            (self._nodes[self._in_indices[e]], float(self._in_weights[e]))
            for e in range(lo, hi)
        )

    def out_degree(self, domain: str) -> int:
        i = self.node_id(domain)
        return int(self._out_indptr[i + 1] - self._out_indptr[i])

    def edges(self) -> Iterable[tuple[str, str, float]]:
        """All ``(src, dst, weight)`` triples in (src, dst) lexicographic order."""
        for i, s in enumerate(self._nodes):
            for e in range(self._out_indptr[i], self._out_indptr[i + 1]):
                yield s, self._nodes[self._out_indices[e]], float(self._out_weights[e])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MediaGraph):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and np.array_equal(self._out_indptr, other._out_indptr)
            and np.array_equal(self._out_indices, other._out_indices)
            and np.array_equal(self._out_weights, other._out_weights)
        )

    def __hash__(self):
        return hash((self._nodes, self._out_weights.tobytes()))

    def __repr__(self):
        return f"MediaGraph({self.node_count} nodes, {self.edge_count} edges)"


def _csr(n: int, rows, cols, vals):
    """Build CSR arrays with entries ordered by (row, col)."""
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, cols.copy(), vals.copy()


def build_graph(records: Iterable[EdgeRecord]) -> MediaGraph:
    """Aggregate raw edge records into a row-normalized media graph.

    Domains are canonicalized, duplicate (src, dst) counts are summed,
    self-loops and zero-count edges are dropped, and each surviving row is
    divided by its row sum. Domains named by dropped records are kept as
    (possibly isolated) nodes: they exist in the crawl even if none of
    their links survive.
    """
    nodes: set[str] = set()
    agg: dict[tuple[str, str], float] = {}
    saw_records = False
    for rec in records:
        saw_records = True
        s = normalize_domain(rec.src)
        d = normalize_domain(rec.dst)
        nodes.add(s)
        nodes.add(d)
        if s == d or rec.count == 0:
            continue
        agg[(s, d)] = agg.get((s, d), 0.0) + float(rec.count)
    if not saw_records or not agg:
        raise NoEdges("no usable edges after dropping self-loops and zero counts")
    row_sums: dict[str, float] = {}
    for (s, _), c in sorted(agg.items()):
        row_sums[s] = row_sums.get(s, 0.0) + c
    weights = {(s, d): c / row_sums[s] for (s, d), c in agg.items()}
    return MediaGraph._from_edges(sorted(nodes), weights, row_normalized=True)


def subgraph_neighborhood(g: MediaGraph, seed: str, radius: int) -> MediaGraph:
    """Induced subgraph of everything within ``radius`` undirected hops of ``seed``.

    Reachability ignores edge direction; the induced edges keep their
    original direction and weight (rows are NOT renormalized, so weights
    retain their whole-graph meaning).
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    g.node_id(seed)  # raises UnknownSource for foreign seeds
    reached = {seed}
    frontier = deque([(seed, 0)])
    while frontier:
        node, dist = frontier.popleft()
        if dist == radius:
            continue
        neighbors = [d for d, _ in g.out_edges(node)]
        neighbors += [s for s, _ in g.in_edges(node)]
        for nb in neighbors:
            if nb not in reached:
                reached.add(nb)
                frontier.append((nb, dist + 1))
    edges: dict[tuple[str, str], float] = {}
    for s in sorted(reached):
        for d, w in g.out_edges(s):
            if d in reached:
                edges[(s, d)] = w
    sums: dict[str, float] = {}
    for (s, _), w in edges.items():
        sums[s] = sums.get(s, 0.0) + w
    normalized = all(abs(t - 1.0) < ROW_SUM_TOLERANCE for t in sums.values())
    return MediaGraph._from_edges(sorted(reached), edges, row_normalized=normalized)


def save_graph(g: MediaGraph, path, header_comments: Sequence[str] = ()) -> None:
    """Serialize to TSV. ``load_graph(save_graph(g)) == g`` exactly.

    Weights are written with ``repr`` so they round-trip bit-for-bit.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for comment in header_comments:
            fh.write(f"# {comment}\n")
        fh.write("# normalized\n" if g.row_normalized else "# weights\n")
        linked = set()
        for s, d, _ in g.edges():
            linked.add(s)
            linked.add(d)
        for node in g.nodes:
            if node not in linked:
                fh.write(f"# node {node}\n")
        for s, d, w in g.edges():
            fh.write(f"{s}\t{d}\t{w!r}\n")


def load_graph(path) -> MediaGraph:
    """Parse a TSV edge file. See the module docstring for the format."""
    mode = "counts"
    isolated: list[str] = []
    triples: list[tuple[int, str, str, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                comment = line[1:].strip()
                if comment == "normalized":
                    mode = "normalized"
                elif comment == "weights":
                    mode = "weights"
                elif comment.startswith("node "):
                    isolated.append(comment[5:].strip())
                continue
            parts = line.split("\t")
            if len(parts) != 3 or not all(p.strip() for p in parts):
                raise ParseError(
                    f"expected 'src<TAB>dst<TAB>value', got {line!r}",
                    path=path,
                    line=lineno,
                )
            src, dst, raw_value = (p.strip() for p in parts)
            try:
                value = float(raw_value)
            except ValueError:
                raise ParseError(
                    f"third column is not a number: {raw_value!r}",
                    path=path,
                    line=lineno,
                ) from None
            if not math.isfinite(value) or value < 0:
                raise ParseError(
                    f"value must be finite and >= 0, got {raw_value!r}",
                    path=path,
                    line=lineno,
                )
            triples.append((lineno, src, dst, value))

    if mode == "counts":
        try:
            return build_graph(EdgeRecord(s, d, v) for _, s, d, v in triples)
        except NoEdges:
            raise NoEdges(f"{path}: no usable edges") from None

    # Normalized / raw-weight mode: trust the stored weights verbatim so the
    # round trip is exact; validate instead of renormalizing.
    nodes: set[str] = set()
    edges: dict[tuple[str, str], float] = {}
    first_line_of: dict[str, int] = {}
    for lineno, src, dst, w in triples:
        for dom in (src, dst):
            if normalize_domain(dom) != dom:
                raise ParseError(
                    f"non-canonical domain {dom!r} in a weight file",
                    path=path,
                    line=lineno,
                )
        if src == dst:
            raise ParseError(f"self-loop on {src!r}", path=path, line=lineno)
        if not 0.0 < w <= 1.0:
            raise ParseError(f"weight {w!r} outside (0, 1]", path=path, line=lineno)
        if (src, dst) in edges:
            raise ParseError(f"duplicate edge {src} -> {dst}", path=path, line=lineno)
        edges[(src, dst)] = w
        nodes.add(src)
        nodes.add(dst)
        first_line_of.setdefault(src, lineno)
    for dom in isolated:
        if normalize_domain(dom) != dom:
            raise ParseError(f"non-canonical isolated node {dom!r}", path=path)
        nodes.add(dom)
    if not edges and not nodes:
        raise NoEdges(f"{path}: no usable edges")
    if mode == "normalized":
        sums: dict[str, float] = {}
        for (s, _), w in edges.items():
            sums[s] = sums.get(s, 0.0) + w
        for s, total in sums.items():
            if abs(total - 1.0) >= ROW_SUM_TOLERANCE:
                raise ParseError(
                    f"out-weights of {s!r} sum to {total!r}, not 1",
                    path=path,
                    line=first_line_of[s],
                )
    return MediaGraph._from_edges(
        sorted(nodes), edges, row_normalized=(mode == "normalized")
    )
