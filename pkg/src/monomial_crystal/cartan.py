"""Affine Cartan data, parity colorings, shifts and level-zero seeds.

Nodes are integers ``0..n`` with ``0`` the affine node.  Matrices follow the
convention ``C[i][j] = <h_i, alpha_j>``, so ``C[i][j] == -2`` means that
``alpha_i`` is the shorter root of the pair.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "AffineType",
    "CartanData",
    "Shift",
    "UnsupportedType",
    "OddCycle",
    "InvalidPhi",
    "OutOfRange",
    "FAMILIES",
    "parse_type",
    "build_cartan",
    "finite_cartan",
    "parity_coloring",
    "make_shift",
    "shift_for_pair",
    "fundamental_seed",
    "fundamental_seed_map",
    "d_ell",
]


class UnsupportedType(ValueError):
    """Raised for an unknown family or an out-of-range rank."""


class OddCycle(ValueError):
    """Raised when the Dynkin graph admits no 2-coloring."""


class InvalidPhi(ValueError):
    """Raised when a grading cannot be completed to a shift."""


class OutOfRange(ValueError):
    """Raised when ``shift_for_pair`` is asked for unreachable grades."""


# Each family maps to (minimum rank, display name).  Type strings take the
# form "<family>~<subscript>", where the subscript is the one appearing in
# the usual name of the algebra (for example "A2~5" is A^(2)_5, n = 3).
FAMILIES: Dict[str, Tuple[int, str]] = {
    "A1": (1, "A^(1)_{n}"),
    "B1": (3, "B^(1)_{n}"),
    "C1": (2, "C^(1)_{n}"),
    "D1": (4, "D^(1)_{n}"),
    "A2even": (1, "A^(2)_{2n}"),
    "A2dag": (1, "A^(2)dag_{2n}"),
    "A2odd": (3, "A^(2)_{2n-1}"),
    "D2": (2, "D^(2)_{n+1}"),
    "E1": (6, "E^(1)_{n}"),
    "F1": (4, "F^(1)_4"),
    "G1": (2, "G^(1)_2"),
    "E2": (4, "E^(2)_6"),
    "D3": (2, "D^(3)_4"),
}


@dataclass(frozen=True)
class AffineType:
    """An affine family together with its rank ``n`` (number of non-affine nodes)."""

    family: str
    n: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise UnsupportedType(f"unknown family {self.family!r}")
        low, _ = FAMILIES[self.family]
        if self.n < low:
            raise UnsupportedType(f"{self.family} needs rank >= {low}, got {self.n}")
        fixed = {"F1": 4, "G1": 2, "E2": 4, "D3": 2}
        if self.family in fixed and self.n != fixed[self.family]:
            raise UnsupportedType(f"{self.family} has rank {fixed[self.family]} only")
        if self.family == "E1" and self.n not in (6, 7, 8):
            raise UnsupportedType("E^(1) exists for ranks 6, 7, 8")

    @property
    def name(self) -> str:
        """The type string accepted by :func:`parse_type`."""
        n = self.n
        return {
            "A1": f"A1~{n}",
            "B1": f"B1~{n}",
            "C1": f"C1~{n}",
            "D1": f"D1~{n}",
            "A2even": f"A2~{2 * n}",
            "A2dag": f"A2dag~{2 * n}",
            "A2odd": f"A2~{2 * n - 1}",
            "D2": f"D2~{n + 1}",
            "E1": f"E1~{n}",
            "F1": "F1~4",
            "G1": "G1~2",
            "E2": "E2~6",
            "D3": "D3~4",
        }[self.family]

    def __str__(self) -> str:
        return self.name

    def finite_kind(self) -> Tuple[str, int]:
        """Finite type of the subdiagram on ``I_0`` for untwisted families."""
        if not self.family.endswith("1"):
            raise UnsupportedType(f"{self.name}: I_0 numbering is only tabulated for untwisted types")
        return self.family[0], self.n


_TYPE_RE = re.compile(r"^\s*([A-G])(1|2|2dag|3)~(\d+)\s*$")


def parse_type(text: str) -> AffineType:
    """Parse strings such as ``"D1~5"``, ``"A2~4"``, ``"A2dag~4"`` or ``"D3~4"``."""
    m = _TYPE_RE.match(text)
    if not m:
        raise UnsupportedType(f"cannot parse type string {text!r}")
    letter, twist, sub = m.group(1), m.group(2), int(m.group(3))
    if twist == "1":
        if letter in "ABCD":
            return AffineType(letter + "1", sub)
        if letter in "EFG":
            return AffineType(letter + "1", sub)
    if twist == "2":
        if letter == "A":
            if sub % 2 == 0:
                return AffineType("A2even", sub // 2)
            if (sub + 1) % 2 == 0:
                return AffineType("A2odd", (sub + 1) // 2)
        if letter == "D":
            return AffineType("D2", sub - 1)
        if letter == "E" and sub == 6:
            return AffineType("E2", 4)
    if twist == "2dag" and letter == "A" and sub % 2 == 0:
        return AffineType("A2dag", sub // 2)
    if twist == "3" and letter == "D" and sub == 4:
        return AffineType("D3", 2)
    raise UnsupportedType(f"unsupported type string {text!r}")


# An edge (i, j, C_ij, C_ji).
Edge = Tuple[int, int, int, int]


def _path(nodes: Sequence[int]) -> List[Edge]:
    return [(a, b, -1, -1) for a, b in zip(nodes, nodes[1:])]


def _finite_edges(kind: str, n: int) -> List[Edge]:
    """Edges of the finite diagram on nodes 1..n (the affine node excluded)."""
    if kind == "A":
        return _path(range(1, n + 1))
    if kind == "B":  # node n short
        return _path(range(1, n)) + [(n - 1, n, -1, -2)]
    if kind == "C":  # node n long
        return _path(range(1, n)) + [(n - 1, n, -2, -1)]
    if kind == "D":
        return _path(range(1, n)) + [(n - 2, n, -1, -1)]
    if kind == "E":
        branch = {6: (3, 6), 7: (3, 7), 8: (5, 8)}[n]
        return _path(range(1, n)) + [(branch[0], branch[1], -1, -1)]
    if kind == "F":  # nodes 1, 2 long
        return [(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]
    if kind == "F~":  # the dual arrow, nodes 3, 4 long
        return [(1, 2, -1, -1), (2, 3, -2, -1), (3, 4, -1, -1)]
    if kind == "G":  # node 2 short
        return [(1, 2, -1, -3)]
    if kind == "G~":  # node 1 short
        return [(1, 2, -3, -1)]
    raise UnsupportedType(f"unknown finite kind {kind!r}")


def _affine_edges(t: AffineType) -> List[Edge]:
    n, f = t.n, t.family
    if f == "A1":
        if n == 1:
            return [(0, 1, -2, -2)]
        return _path(range(0, n + 1)) + [(n, 0, -1, -1)]
    if f == "B1":
        return _finite_edges("B", n) + [(0, 2, -1, -1)]
    if f == "C1":
        return _finite_edges("C", n) + [(0, 1, -1, -2)]
    if f == "D1":
        return _finite_edges("D", n) + [(0, 2, -1, -1)]
    if f == "A2even":
        if n == 1:
            return [(0, 1, -2 * 2, -1)]
        return _finite_edges("C", n) + [(0, 1, -2, -1)]
    if f == "A2dag":
        flip = {i: n - i for i in range(n + 1)}
        return [(flip[i], flip[j], cij, cji)
                for i, j, cij, cji in _affine_edges(AffineType("A2even", n))]
    if f == "A2odd":
        return _finite_edges("C", n) + [(0, 2, -1, -1)]
    if f == "D2":
        return _finite_edges("B", n) + [(0, 1, -2, -1)]
    if f == "E1":
        hook = {6: 6, 7: 1, 8: 1}[n]
        return _finite_edges("E", n) + [(0, hook, -1, -1)]
    if f == "F1":
        return _finite_edges("F", 4) + [(0, 1, -1, -1)]
    if f == "G1":
        return _finite_edges("G", 2) + [(0, 1, -1, -1)]
    if f == "E2":
        return _finite_edges("F~", 4) + [(0, 1, -1, -1)]
    if f == "D3":
        return _finite_edges("G~", 2) + [(0, 1, -1, -1)]
    raise UnsupportedType(f)


def _marks(t: AffineType) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Marks ``a`` (delta) and comarks ``a_vee`` (canonical central element)."""
    n, f = t.n, t.family
    if f == "A1":
        return (1,) * (n + 1), (1,) * (n + 1)
    if f == "B1":
        return (1, 1) + (2,) * (n - 1), (1, 1) + (2,) * (n - 2) + (1,)
    if f == "C1":
        return (1,) + (2,) * (n - 1) + (1,), (1,) * (n + 1)
    if f == "D1":
        return (1, 1) + (2,) * (n - 3) + (1, 1), (1, 1) + (2,) * (n - 3) + (1, 1)
    if f == "A2even":
        return (2,) * n + (1,), (1,) + (2,) * n
    if f == "A2dag":
        a, av = _marks(AffineType("A2even", n))
        return a[::-1], av[::-1]
    if f == "A2odd":
        return (1, 1) + (2,) * (n - 2) + (1,), (1, 1) + (2,) * (n - 1)
    if f == "D2":
        return (1,) * (n + 1), (1,) + (2,) * (n - 1) + (1,)
    if f == "E1":
        a = {6: (1, 1, 2, 3, 2, 1, 2), 7: (1, 2, 3, 4, 3, 2, 1, 2),
             8: (1, 2, 3, 4, 5, 6, 4, 2, 3)}[n]
        return a, a
    if f == "F1":
        return (1, 2, 3, 4, 2), (1, 2, 3, 2, 1)
    if f == "G1":
        return (1, 2, 3), (1, 2, 1)
    if f == "E2":
        return (1, 2, 3, 2, 1), (1, 2, 3, 4, 2)
    if f == "D3":
        return (1, 2, 1), (1, 2, 3)
    raise UnsupportedType(f)


def _matrix(nodes: Sequence[int], edges: Iterable[Edge]) -> Tuple[Tuple[int, ...], ...]:
    pos = {v: k for k, v in enumerate(nodes)}
    size = len(nodes)
    rows = [[0] * size for _ in range(size)]
    for k in range(size):
        rows[k][k] = 2
    for i, j, cij, cji in edges:
        rows[pos[i]][pos[j]] += cij
        rows[pos[j]][pos[i]] += cji
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix with the derived data the crystal engine needs.

    ``parity`` is ``None`` exactly when the Dynkin graph has an odd cycle
    (type A^(1)_n with n even), which is only reachable through
    ``build_cartan(..., allow_odd_cycle=True)``.
    """

    type: Optional[AffineType]
    label: str
    nodes: Tuple[int, ...]
    C: Tuple[Tuple[int, ...], ...]
    marks: Optional[Tuple[int, ...]]
    comarks: Optional[Tuple[int, ...]]
    parity: Optional[Tuple[int, ...]]
    dist: Optional[Tuple[int, ...]]
    symmetrizer: Optional[Tuple[int, ...]]
    _pos: Dict[int, int] = field(default_factory=dict, repr=False, compare=False)
    _columns: Dict[int, Tuple[Tuple[int, int], ...]] = field(
        default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        pos = {v: k for k, v in enumerate(self.nodes)}
        self._pos.update(pos)
        for i in self.nodes:
            col = tuple((j, self.C[pos[j]][pos[i]]) for j in self.nodes
                        if j != i and self.C[pos[j]][pos[i]] != 0)
            self._columns[i] = col

    @property
    def affine(self) -> bool:
        return self.type is not None

    @property
    def rank(self) -> int:
        return len(self.nodes)

    @property
    def I0(self) -> Tuple[int, ...]:
        """Nodes other than the affine node (all nodes for a finite type)."""
        return tuple(i for i in self.nodes if not (self.affine and i == 0))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.C, dtype=np.int64)

    def c(self, i: int, j: int) -> int:
        return self.C[self._pos[i]][self._pos[j]]

    def column(self, i: int) -> Tuple[Tuple[int, int], ...]:
        """Pairs ``(j, C[j][i])`` for the neighbours ``j`` of ``i``."""
        return self._columns[i]

    def neighbours(self, i: int) -> Tuple[int, ...]:
        return tuple(j for j in self.nodes if j != i and self.c(i, j) != 0)

    def s(self, i: int) -> int:
        if self.parity is None:
            raise OddCycle(f"{self.label} has no parity coloring")
        return self.parity[self._pos[i]]

    def mark(self, i: int) -> int:
        assert self.marks is not None
        return self.marks[self._pos[i]]

    def comark(self, i: int) -> int:
        assert self.comarks is not None
        return self.comarks[self._pos[i]]


def _two_coloring(nodes: Sequence[int], edges: Sequence[Edge]) -> Optional[Tuple[int, ...]]:
    adj: Dict[int, List[int]] = {v: [] for v in nodes}
    for i, j, _, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    color: Dict[int, int] = {}
    for root in nodes:
        if root in color:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in sorted(adj[v]):
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return tuple(color[v] for v in nodes)


def _distances(nodes: Sequence[int], edges: Sequence[Edge], root: int) -> Tuple[int, ...]:
    adj: Dict[int, List[int]] = {v: [] for v in nodes}
    for i, j, _, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return tuple(dist[v] for v in nodes)


def _symmetrizer(comarks: Sequence[int], marks: Sequence[int]) -> Tuple[int, ...]:
    ratios = [Fraction(av, a) for a, av in zip(marks, comarks)]
    scale = lcm(*(r.denominator for r in ratios))
    ints = [int(r * scale) for r in ratios]
    from math import gcd
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def build_cartan(t: AffineType | str, *, allow_odd_cycle: bool = False) -> CartanData:
    """Cartan data of an affine type in the numbering used by the corpus.

    A^(1)_n with n even has an odd cycle and no parity function; it is
    rejected unless ``allow_odd_cycle`` is set, in which case ``parity`` is
    ``None`` and only parity-free operations are available.
    """
    if isinstance(t, str):
        t = parse_type(t)
    nodes = tuple(range(t.n + 1))
    edges = _affine_edges(t)
    parity = _two_coloring(nodes, edges)
    if parity is None and not allow_odd_cycle:
        raise UnsupportedType(f"{t.name} has an odd cycle (no parity function)")
    marks, comarks = _marks(t)
    return CartanData(
        type=t,
        label=t.name,
        nodes=nodes,
        C=_matrix(nodes, edges),
        marks=marks,
        comarks=comarks,
        parity=parity,
        dist=_distances(nodes, edges, 0),
        symmetrizer=_symmetrizer(comarks, marks),
    )


def finite_cartan(kind: str, n: int) -> CartanData:
    """Finite Cartan data on nodes ``1..n`` in the numbering of the affine tables.

    ``kind`` is one of ``A B C D E F G``.  E uses the chain ``1..n-1`` with the
    extra node attached to 3 (E6, E7) or 5 (E8); G2 has node 2 short; F4 has
    nodes 1, 2 long.
    """
    limits = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}
    if kind not in limits or n < limits[kind]:
        raise UnsupportedType(f"finite type {kind}{n}")
    if kind == "F" and n != 4 or kind == "G" and n != 2 or kind == "E" and n > 8:
        raise UnsupportedType(f"finite type {kind}{n}")
    nodes = tuple(range(1, n + 1))
    edges = _finite_edges(kind, n)
    return CartanData(
        type=None,
        label=f"{kind}{n}",
        nodes=nodes,
        C=_matrix(nodes, edges),
        marks=None,
        comarks=None,
        parity=_two_coloring(nodes, edges),
        dist=None,
        symmetrizer=None,
    )


def parity_coloring(C: CartanData) -> Tuple[int, ...]:
    """The canonical 2-coloring ``s`` with ``s`` of the first node equal to 0."""
    if C.parity is None:
        raise OddCycle(f"{C.label} is not bipartite")
    return C.parity


@dataclass(frozen=True)
class Shift:
    """A total order on the nodes together with a compatible grading ``phi``."""

    order: Tuple[int, ...]
    phi: Tuple[Tuple[int, int], ...]

    def __getitem__(self, i: int) -> int:
        return dict(self.phi)[i]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.phi)


def make_shift(C: CartanData, phi: Mapping[int, int],
               parity: Optional[Sequence[int]] = None) -> Shift:
    """Complete a grading to a shift by ordering nodes by descending ``phi``.

    ``parity`` defaults to the canonical coloring; pass the complementary
    coloring to work with monomials of the reflected parity.
    """
    if set(phi) != set(C.nodes):
        raise InvalidPhi("phi must be defined on every node")
    par = tuple(parity) if parity is not None else C.parity
    for i in C.nodes:
        for j in C.neighbours(i):
            if abs(phi[i] - phi[j]) != 1:
                raise InvalidPhi(f"|phi({i}) - phi({j})| != 1 on an edge")
        if par is not None and (phi[i] - par[C._pos[i]]) % 2:
            raise InvalidPhi(f"phi({i}) has the wrong parity")
    order = tuple(sorted(C.nodes, key=lambda i: (-phi[i], i)))
    return Shift(order=order, phi=tuple((i, phi[i]) for i in C.nodes))


def canonical_shift(C: CartanData, parity: Optional[Sequence[int]] = None) -> Shift:
    """The shift built from ``phi = s``."""
    par = tuple(parity) if parity is not None else parity_coloring(C)
    return make_shift(C, {i: par[C._pos[i]] for i in C.nodes}, par)


def shift_for_pair(C: CartanData, i: int, l: int, lp: int) -> Shift:
    """A shift with ``phi(i) = l`` and ``phi(0) = lp``.

    The grading is ``lp + min(theta_j, 2a - theta_j)`` with
    ``a = (theta_i + l - lp) / 2``, a tent over the distance to node 0.
    """
    if C.dist is None:
        raise OutOfRange("shift_for_pair needs an affine type")
    theta = dict(zip(C.nodes, C.dist))
    diff = l - lp
    if abs(diff) > theta[i] or (theta[i] + diff) % 2:
        raise OutOfRange(f"l - l' = {diff} is not reachable at distance {theta[i]}")
    if C.parity is not None and (lp - C.s(0)) % 2:
        raise OutOfRange("l' has the wrong parity for node 0")
    a = (theta[i] + diff) // 2
    phi = {j: lp + min(theta[j], 2 * a - theta[j]) for j in C.nodes}
    return make_shift(C, phi)


def fundamental_seed_map(C: CartanData, ell: int, shift: Shift) -> Dict[Tuple[int, int], int]:
    """Exponent map of the level-zero fundamental seed for node ``ell``."""
    if ell == 0 or ell not in C.nodes or not C.affine:
        raise ValueError(f"ell must be a non-affine node, got {ell}")
    phi = shift.as_dict()
    assert C.type is not None
    if C.type.family == "A2dag":
        if ell == C.type.n:
            return {(ell, phi[ell]): 2, (0, phi[0]): -1}
        return {(ell, phi[ell]): 1, (0, phi[0]): -1}
    return {(ell, phi[ell]): 1, (0, phi[0]): -C.comark(ell)}


def fundamental_seed(C: CartanData, ell: int, shift: Optional[Shift] = None):
    """The monomial ``Y_{ell,phi(ell)} Y_{0,phi(0)}^{-a_ell^vee}`` (A^(2)dag variants aside)."""
    from .monomial import Monomial

    if shift is None:
        shift = canonical_shift(C)
    return Monomial(fundamental_seed_map(C, ell, shift), None, C)


def d_ell(C: CartanData, ell: int) -> int:
    """``max(1, a_ell^vee / a_ell)``, with ``d = 1`` for (A^(2)_{2n}, n)."""
    assert C.type is not None
    if C.type.family == "A2even" and ell == C.type.n:
        return 1
    ratio = Fraction(C.comark(ell), C.mark(ell))
    if ratio.denominator != 1 and ratio > 1:
        raise ValueError(f"non-integral d for node {ell}")
    return max(1, int(ratio))
