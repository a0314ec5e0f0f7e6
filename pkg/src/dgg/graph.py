"""Finite digraphs and strongly connected component machinery.

Vertices and edges keep their input order; every operation that numbers or
lists things derives its order from that, so results are reproducible across
runs and platforms. Parallel edges and loops are allowed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class SccClass(enum.Enum):
    """Classification of a strongly connected component."""

    TERMINAL = "terminal"  # no edge leaves the component
    TRANSIENT = "transient"  # single loop-free vertex with a leaving edge
    INNER = "inner"  # contains a dicycle and has a leaving edge

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph with named vertices in a fixed input order."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(map(tuple, self.edges)))
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise ValueError(f"duplicate vertex {v!r}")
            seen.add(v)
        for tail, head in self.edges:
            if tail not in seen or head not in seen:
                raise ValueError(f"edge ({tail!r}, {head!r}) uses an undeclared vertex")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _succ_indices(self) -> tuple[tuple[int, ...], ...]:
        """Successor vertex indices per vertex, in edge input order."""
        out: list[list[int]] = [[] for _ in self.vertices]
        idx = self._index
        for tail, head in self.edges:
            out[idx[tail]].append(idx[head])
        return tuple(tuple(s) for s in out)

    @cached_property
    def _out_edge_indices(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices per tail vertex, in edge input order."""
        out: list[list[int]] = [[] for _ in self.vertices]
        idx = self._index
        for e, (tail, _head) in enumerate(self.edges):
            out[idx[tail]].append(e)
        return tuple(tuple(s) for s in out)

    def index_of(self, v: str) -> int:
        return self._index[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def out_edges(self, v: str) -> tuple[int, ...]:
        """Indices of the edges leaving v, in input order."""
        return self._out_edge_indices[self._index[v]]

    def successors(self, v: str) -> tuple[str, ...]:
        return tuple(self.vertices[j] for j in self._succ_indices[self._index[v]])

    def head(self, edge_index: int) -> str:
        return self.edges[edge_index][1]

    def tail(self, edge_index: int) -> str:
        return self.edges[edge_index][0]

    def __str__(self) -> str:
        return f"Digraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class SccDecomposition:
    """Partition of a digraph into SCCs with their classification.

    Components are indexed by their smallest input-order vertex: component 0
    contains vertex 0, the next component contains the smallest vertex not in
    component 0, and so on. Within a component, vertices keep input order.
    """

    graph: Digraph
    components: tuple[tuple[str, ...], ...]
    classes: tuple[SccClass, ...]

    @cached_property
    def _component_of(self) -> dict[str, int]:
        out = {}
        for j, comp in enumerate(self.components):
            for v in comp:
                out[v] = j
        return out

    def component_of(self, v: str) -> int:
        return self._component_of[v]

    def class_of(self, j: int) -> SccClass:
        return self.classes[j]

    def indices_of_class(self, cls: SccClass) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.classes) if c is cls)

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class Condensation:
    """Quotient digraph of an SCC decomposition.

    Vertex j is named after component j's smallest input-order vertex.
    Edges are deduplicated, ordered by first appearance in the input.
    """

    graph: Digraph
    decomposition: SccDecomposition


def scc_decompose(g: Digraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative so deep graphs fit no recursion limit.

    Visits roots in input order; afterwards components are renumbered by
    smallest member vertex, which makes the numbering independent of the
    traversal's discovery order.
    """
    n = len(g.vertices)
    succ = g._succ_indices
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comp_of = [-1] * n
    raw_components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # work stack holds (vertex, position in its successor list)
        work: list[list[int]] = [[root, 0]]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1][1] += 1
                w = succ[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append([w, 0])
                elif on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                work.pop()
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = 0
                        comp_of[w] = len(raw_components)
                        comp.append(w)
                        if w == v:
                            break
                    raw_components.append(comp)
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]

    # renumber by smallest member vertex; sort members into input order
    order = sorted(range(len(raw_components)), key=lambda j: min(raw_components[j]))
    renumber = [0] * len(raw_components)
    components = []
    for new_j, old_j in enumerate(order):
        renumber[old_j] = new_j
        components.append(tuple(g.vertices[i] for i in sorted(raw_components[old_j])))
    for i in range(n):
        comp_of[i] = renumber[comp_of[i]]

    size = [len(c) for c in components]
    has_loop = bytearray(len(components))
    leaves = bytearray(len(components))
    idx = g._index
    for tail, head in g.edges:
        a, b = comp_of[idx[tail]], comp_of[idx[head]]
        if a == b:
            if tail == head:
                has_loop[a] = 1
        else:
            leaves[a] = 1

    classes = []
    for j in range(len(components)):
        if not leaves[j]:
            classes.append(SccClass.TERMINAL)
        elif size[j] == 1 and not has_loop[j]:
            classes.append(SccClass.TRANSIENT)
        else:
            classes.append(SccClass.INNER)

    return SccDecomposition(graph=g, components=tuple(components), classes=tuple(classes))


def condense(g: Digraph, d: SccDecomposition | None = None) -> Condensation:
    """Collapse each SCC to one vertex; drop intra-component and parallel edges."""
    if d is None:
        d = scc_decompose(g)
    names = tuple(comp[0] for comp in d.components)
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[str, str]] = []
    for tail, head in g.edges:
        a, b = d.component_of(tail), d.component_of(head)
        if a == b or (a, b) in seen:
            continue
        seen.add((a, b))
        edges.append((names[a], names[b]))
    return Condensation(graph=Digraph(names, tuple(edges)), decomposition=d)


def is_symmetric(g: Digraph, terminals: Iterable[str], initial: str) -> bool:
    """True when every edge has its reverse, except edges into a terminal
    and edges out of the initial position, which need none."""
    terminal_set = set(terminals)
    present = set(g.edges)
    for tail, head in g.edges:
        if head in terminal_set or tail == initial:
            continue
        if (head, tail) not in present:
            return False
    return True


def reachable_from(g: Digraph, v: str) -> set[str]:
    """Vertices reachable from v, including v itself."""
    start = g.index_of(v)
    succ = g._succ_indices
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for w in succ[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return {g.vertices[i] for i in seen}


def topological_order(g: Digraph) -> list[str] | None:
    """Kahn's algorithm; None when the digraph has a dicycle."""
    n = len(g.vertices)
    indeg = [0] * n
    succ = g._succ_indices
    for outs in succ:
        for w in outs:
            indeg[w] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    order: list[int] = []
    while ready:
        nxt: list[int] = []
        for v in ready:
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    nxt.append(w)
        ready = nxt
    if len(order) != n:
        return None
    return [g.vertices[i] for i in order]
