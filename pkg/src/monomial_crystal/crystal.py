"""Crystal graph generation: components, tau-quotients, I_0 decomposition, z periods."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cartan import CartanData, d_ell
from .monomial import (Monomial, format_monomial, lower, parse, raise_op,
                       tau_shift)

__all__ = [
    "CrystalGraph",
    "ComponentReport",
    "ZPeriod",
    "BoundExceeded",
    "NotPeriodic",
    "MultipleHighest",
    "DEFAULT_BOUND",
    "generate_component",
    "generate_quotient",
    "decompose_I0",
    "is_highest",
    "detect_z_period",
    "export_graph",
    "load_graph_json",
    "canonical_rep",
    "ledger_in_quotient",
]

DEFAULT_BOUND = 10 ** 6


class MultipleHighest(RuntimeError):
    """An I_0-component with more than one highest node."""


class NotPeriodic(RuntimeError):
    """The component generated by the seed is not stable under the given shift."""


@dataclass
class ComponentReport:
    highest: Monomial
    size: int
    label: Optional[Tuple[int, ...]] = None
    members: List[int] = field(default_factory=list)
    highest_index: int = 0


@dataclass
class CrystalGraph:
    """Nodes are monomials (class representatives in quotient mode); edges are f~ arrows."""

    seed: Monomial
    cartan: CartanData
    ops: Tuple[int, ...]
    mode: str
    period: Optional[int] = None
    nodes: List[Monomial] = field(default_factory=list)
    edges: List[Tuple[int, int, int]] = field(default_factory=list)
    index: Dict[Monomial, int] = field(default_factory=dict)
    offsets: List[int] = field(default_factory=list)
    complete: bool = True
    drift: Optional[Dict[int, Fraction]] = None

    def __len__(self) -> int:
        return len(self.nodes)

    def node_set(self) -> set:
        return set(self.nodes)

    def add(self, m: Monomial, offset: int = 0) -> int:
        k = len(self.nodes)
        self.nodes.append(m)
        self.index[m] = k
        self.offsets.append(offset)
        return k

    def edges_with_label(self, label: int) -> List[Tuple[int, int]]:
        return [(s, d) for s, lab, d in self.edges if lab == label]

    def successor(self, k: int, label: int) -> Optional[int]:
        for s, lab, d in self.edges:
            if s == k and lab == label:
                return d
        return None


class BoundExceeded(RuntimeError):
    """Generation stopped at the node bound; ``graph`` holds the partial result."""

    def __init__(self, graph: CrystalGraph, bound: int):
        super().__init__(f"more than {bound} nodes")
        self.graph = graph
        self.bound = bound


def _ops_for(C: CartanData, ops: Optional[Iterable[int]]) -> Tuple[int, ...]:
    return tuple(C.nodes) if ops is None else tuple(sorted(set(ops)))


def is_highest(m: Monomial, ops: Iterable[int]) -> bool:
    """True when every ``e~_j`` with ``j`` in ``ops`` vanishes on ``m``."""
    return all(raise_op(m, j) is None for j in ops)


def generate_component(seed: Monomial, ops: Optional[Iterable[int]] = None,
                       bound: int = DEFAULT_BOUND,
                       cartan: Optional[CartanData] = None) -> CrystalGraph:
    """Breadth-first closure of ``seed`` under ``f~_j`` and ``e~_j`` for ``j`` in ``ops``.

    Discovery order is deterministic: labels ascending, ``f~`` before ``e~``.
    """
    C = cartan or seed.cartan
    if C is None:
        raise ValueError("seed has no Cartan data")
    seed = seed.with_cartan(C) if seed.cartan is None else seed
    labels = _ops_for(C, ops)
    g = CrystalGraph(seed=seed, cartan=C, ops=labels, mode="full-bounded")
    g.add(seed)
    queue = deque([0])
    while queue:
        k = queue.popleft()
        m = g.nodes[k]
        for j in labels:
            for up in (False, True):
                nxt = raise_op(m, j) if up else lower(m, j)
                if nxt is None:
                    continue
                t = g.index.get(nxt)
                if t is None:
                    if len(g.nodes) >= bound:
                        g.complete = False
                        raise BoundExceeded(g, bound)
                    t = g.add(nxt)
                    queue.append(t)
                if not up:
                    g.edges.append((k, j, t))
    g.edges.sort()
    return g


def canonical_rep(m: Monomial, period: int, g0: int) -> Tuple[Monomial, int]:
    """The translate with minimal grade in ``[g0, g0 + period)`` and the shift applied."""
    low = m.min_grade()
    if low is None:
        return m, 0
    k = (low - g0) // period
    return tau_shift(m, -k * period), -k * period


def generate_quotient(seed: Monomial, period: int, bound: int = DEFAULT_BOUND,
                      ops: Optional[Iterable[int]] = None,
                      cartan: Optional[CartanData] = None) -> CrystalGraph:
    """The component of ``seed`` modulo the grade shift by ``period``.

    Each class stores the offset of the lift reached by the spanning tree.
    Closing a cycle at a different offset is a wrap; the wraps must
    generate all multiples of ``period``, otherwise the component is not
    stable under the shift and :class:`NotPeriodic` is raised.
    """
    if period <= 0:
        raise ValueError("period must be positive")
    C = cartan or seed.cartan
    if C is None:
        raise ValueError("seed has no Cartan data")
    seed = seed.with_cartan(C) if seed.cartan is None else seed
    labels = _ops_for(C, ops)
    g0 = seed.min_grade() or 0
    g = CrystalGraph(seed=seed, cartan=C, ops=labels, mode="tau-quotient", period=period)
    rep, off = canonical_rep(seed, period, g0)
    g.add(rep, -off)
    queue = deque([0])
    wrap = 0
    drift: Optional[Dict[int, Fraction]] = None
    while queue:
        k = queue.popleft()
        m = g.nodes[k]
        for j in labels:
            for up in (False, True):
                nxt = raise_op(m, j) if up else lower(m, j)
                if nxt is None:
                    continue
                rep, shift = canonical_rep(nxt, period, g0)
                # ``nxt`` lifts to offset ``offsets[k]``; ``rep`` is ``nxt`` moved by ``shift``.
                lift = g.offsets[k] - shift
                t = g.index.get(rep)
                if t is None:
                    if len(g.nodes) >= bound:
                        g.complete = False
                        raise BoundExceeded(g, bound)
                    t = g.add(rep, lift)
                    queue.append(t)
                elif lift != g.offsets[t]:
                    w = (lift - g.offsets[t]) // period
                    wrap = gcd(wrap, abs(w))
                    here = {i: Fraction(nxt.v.get(i, 0) - g.nodes[t].v.get(i, 0), w)
                            for i in C.nodes}
                    if drift is None:
                        drift = here
                    elif drift != here:
                        raise NotPeriodic("inconsistent ledger drift across wraps")
                if not up:
                    g.edges.append((k, j, t))
    if wrap != 1:
        raise NotPeriodic(
            f"shift {period} does not stabilise the component (wrap gcd {wrap})")
    g.drift = drift
    g.edges.sort()
    return g


def ledger_in_quotient(g: CrystalGraph, m: Monomial) -> Optional[Dict[int, Fraction]]:
    """Ledger of ``m`` as an element of the seed's component, or ``None`` if absent.

    Class representatives carry the ledger of their spanning-tree lift; other
    translates add the per-period drift.
    """
    if g.period is None or g.drift is None:
        raise ValueError("needs a complete quotient graph")
    rep, shift = canonical_rep(m, g.period, g.seed.min_grade() or 0)
    t = g.index.get(rep)
    if t is None:
        return None
    j = (-shift - g.offsets[t]) // g.period
    base = g.nodes[t].v
    return {i: base.get(i, 0) + j * g.drift[i] for i in g.cartan.nodes}


def decompose_I0(g: CrystalGraph, ops: Optional[Iterable[int]] = None) -> List[ComponentReport]:
    """Connected components of the subgraph with labels in ``ops`` (default I_0)."""
    labels = set(g.cartan.I0 if ops is None else ops)
    size = len(g.nodes)
    src = [s for s, lab, d in g.edges if lab in labels]
    dst = [d for s, lab, d in g.edges if lab in labels]
    adj = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, comp = connected_components(adj, directed=True, connection="weak")
    groups: Dict[int, List[int]] = {}
    for k, c in enumerate(comp):
        groups.setdefault(int(c), []).append(k)
    reports = []
    for members in sorted(groups.values(), key=lambda ms: ms[0]):
        tops = [k for k in members if is_highest(g.nodes[k], labels)]
        if len(tops) != 1:
            raise MultipleHighest(f"component of size {len(members)} has {len(tops)} highest nodes")
        top = g.nodes[tops[0]]
        label = tuple(top.node_total(i) for i in sorted(labels))
        reports.append(ComponentReport(highest=top, size=len(members), label=label,
                                       members=members, highest_index=tops[0]))
    return reports


@dataclass(frozen=True)
class ZPeriod:
    """``tau_shift(., shift) = z_ell ** power`` on the component of the seed."""

    shift: int
    power: int
    delta_multiple: int


def _infer_ell(seed: Monomial) -> int:
    cands = sorted({i for (i, _), e in seed.items() if i != 0 and e > 0})
    if len(cands) != 1:
        raise ValueError("cannot infer the fundamental node from the seed")
    return cands[0]


def detect_z_period(seed: Monomial, max_steps: int = 200_000,
                    ell: Optional[int] = None,
                    cartan: Optional[CartanData] = None) -> Optional[ZPeriod]:
    """Smallest positive grade shift mapping the seed's component to itself.

    Runs a search over translation classes of monomials.  Every closed
    cycle reaching an existing class at a different translation ``s``
    yields a ledger difference ``L_s``; the stabiliser is generated by the
    gcd ``t0`` of these ``s``, and ``L_{t0} = (t0 / s) L_s`` must be
    ``N * marks``.  The result reports ``tau_{t0} = z_ell ** (-N / d_ell)``.
    Returns ``None`` when no translation is found within ``max_steps`` nodes.
    """
    C = cartan or seed.cartan
    if C is None:
        raise ValueError("seed has no Cartan data")
    seed = seed.with_cartan(C) if seed.cartan is None else seed
    ell = _infer_ell(seed) if ell is None else ell
    step = 1 if C.parity is None else 2
    nodes_: List[Monomial] = []
    index: Dict[Monomial, int] = {}
    offsets: List[int] = []
    ledgers: List[Dict[int, int]] = []

    def shape(m: Monomial) -> Tuple[Monomial, int]:
        low = m.min_grade() or 0
        sh = -(low - low % step)
        return tau_shift(m, sh), sh

    rep, sh = shape(seed)
    nodes_.append(rep)
    index[rep] = 0
    offsets.append(-sh)
    ledgers.append(dict(seed.v))
    queue = deque([0])
    t0 = 0
    rate: Optional[Tuple[Fraction, ...]] = None
    while queue:
        k = queue.popleft()
        m = nodes_[k]
        for j in C.nodes:
            for up in (False, True):
                nxt = raise_op(m, j) if up else lower(m, j)
                if nxt is None:
                    continue
                led = dict(ledgers[k])
                led[j] = led.get(j, 0) + (-1 if up else 1)
                r, sh = shape(nxt)
                lift = offsets[k] - sh
                t = index.get(r)
                if t is None:
                    if len(nodes_) >= max_steps:
                        return None
                    t = len(nodes_)
                    nodes_.append(r)
                    index[r] = t
                    offsets.append(lift)
                    ledgers.append(led)
                    queue.append(t)
                    continue
                s = lift - offsets[t]
                if s == 0:
                    continue
                diff = tuple(Fraction(led.get(i, 0) - ledgers[t].get(i, 0), s) for i in C.nodes)
                if rate is None:
                    rate = diff
                elif rate != diff:
                    raise NotPeriodic("inconsistent weight drift between translations")
                t0 = gcd(t0, abs(s))
    if rate is None or t0 == 0:
        return None
    L = [x * t0 for x in rate]
    a = C.marks
    assert a is not None
    N = L[0] / a[0]
    if any(Li != N * ai for Li, ai in zip(L, a)) or N.denominator != 1:
        raise NotPeriodic("translation does not shift the weight by a multiple of delta")
    d = d_ell(C, ell)
    power = Fraction(-int(N), d)
    if power.denominator != 1:
        raise NotPeriodic("translation is not a power of z")
    return ZPeriod(shift=t0, power=int(power), delta_multiple=int(N))


def export_graph(g: CrystalGraph, fmt: str = "json",
                 components: Optional[List[ComponentReport]] = None) -> bytes:
    """Serialize ``g`` as Graphviz DOT or JSON with deterministic bytes."""
    names = [format_monomial(m) for m in g.nodes]
    if fmt == "dot":
        lines = ["digraph crystal {"]
        for k, name in enumerate(names):
            lines.append(f'  n{k} [label="{name}"];')
        for s, lab, d in g.edges:
            lines.append(f'  n{s} -> n{d} [label="{lab}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt != "json":
        raise ValueError(f"unknown format {fmt!r}")
    if components is None:
        try:
            components = decompose_I0(g)
        except MultipleHighest:
            components = []
    doc = {
        "type": g.cartan.label,
        "seed": format_monomial(g.seed),
        "period": g.period,
        "nodes": names,
        "edges": [[s, lab, d] for s, lab, d in g.edges],
        "components": [{"highest": c.highest_index, "members": c.members}
                       for c in components],
    }
    if not g.complete:
        doc["partial"] = True
    return (json.dumps(doc, indent=1) + "\n").encode()


def load_graph_json(data: bytes | str, cartan: CartanData) -> CrystalGraph:
    """Inverse of the JSON export."""
    doc = json.loads(data)
    seed = parse(doc["seed"], cartan)
    g = CrystalGraph(seed=seed, cartan=cartan, ops=tuple(cartan.nodes),
                     mode="tau-quotient" if doc["period"] else "full-bounded",
                     period=doc["period"])
    for name in doc["nodes"]:
        g.add(parse(name, cartan))
    g.edges = [tuple(e) for e in doc["edges"]]
    g.complete = not doc.get("partial", False)
    return g
