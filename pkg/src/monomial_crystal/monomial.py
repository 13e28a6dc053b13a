"""Laurent monomials in the variables Y_{i,l} and their Kashiwara operators.

A monomial stores its exponent map ``u`` sparsely together with a ledger
``v`` counting how many times each ``A_{j,*}`` has been divided out since
the seed (``f~_j`` adds one, ``e~_j`` subtracts one).  Equality and hashing
use ``u`` only.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .cartan import CartanData

__all__ = [
    "Monomial",
    "WeightDelta",
    "ParityError",
    "MonomialSyntaxError",
    "a_multiplier",
    "phi_i",
    "eps_i",
    "p_i",
    "q_i",
    "lower",
    "raise_",
    "raise_op",
    "weight_delta",
    "delta_multiple",
    "tau_shift",
    "project_I0",
    "parse",
    "format_monomial",
    "is_parity_admissible",
    "detect_parity_flip",
]

Key = Tuple[int, int]


class ParityError(ValueError):
    """Raised when a grade has the wrong parity for its node."""


class MonomialSyntaxError(SyntaxError):
    """Raised by :func:`parse` with the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Monomial:
    """An immutable sparse monomial with a seed-relative ledger."""

    __slots__ = ("_u", "_v", "cartan", "_hash", "_rows")

    def __init__(self, u: Mapping[Key, int] | Iterable[Tuple[Key, int]] = (),
                 v: Optional[Mapping[int, int]] = None,
                 cartan: Optional[CartanData] = None):
        items = u.items() if isinstance(u, Mapping) else u
        merged: Dict[Key, int] = {}
        for (i, l), e in items:
            key = (int(i), int(l))
            merged[key] = merged.get(key, 0) + int(e)
        self._u: Dict[Key, int] = {k: e for k, e in sorted(merged.items()) if e}
        self._v: Dict[int, int] = {j: c for j, c in sorted((v or {}).items()) if c}
        self.cartan = cartan
        self._hash: Optional[int] = None
        self._rows: Optional[Dict[int, List[Tuple[int, int]]]] = None

    @property
    def u(self) -> Dict[Key, int]:
        return dict(self._u)

    @property
    def v(self) -> Dict[int, int]:
        return dict(self._v)

    def items(self) -> Iterator[Tuple[Key, int]]:
        return iter(self._u.items())

    def exponent(self, i: int, l: int) -> int:
        return self._u.get((i, l), 0)

    def row(self, i: int) -> List[Tuple[int, int]]:
        """Pairs ``(l, u_{i,l})`` of node ``i`` in ascending grade."""
        if self._rows is None:
            rows: Dict[int, List[Tuple[int, int]]] = {}
            for (j, l), e in self._u.items():
                rows.setdefault(j, []).append((l, e))
            self._rows = rows
        return self._rows.get(i, [])

    def node_total(self, i: int) -> int:
        """``u_i(m)``, the sum of the exponents of node ``i``."""
        return sum(e for _, e in self.row(i))

    @property
    def support(self) -> Tuple[Key, ...]:
        return tuple(self._u)

    def grades(self) -> List[int]:
        return [l for _, l in self._u]

    def min_grade(self) -> Optional[int]:
        return min((l for _, l in self._u), default=None)

    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted({i for i, _ in self._u}))

    def is_dominant(self) -> bool:
        return all(e > 0 for e in self._u.values())

    def with_ledger(self, v: Mapping[int, int]) -> "Monomial":
        return Monomial(self._u, v, self.cartan)

    def with_cartan(self, cartan: CartanData) -> "Monomial":
        return Monomial(self._u, self._v, cartan)

    def times(self, delta: Mapping[Key, int], sign: int = 1,
              ledger: Optional[Mapping[int, int]] = None) -> "Monomial":
        """Multiply by ``delta ** sign`` and replace the ledger if given."""
        new = dict(self._u)
        for k, e in delta.items():
            new[k] = new.get(k, 0) + sign * e
        out = Monomial.__new__(Monomial)
        out._u = {k: e for k, e in sorted(new.items()) if e}
        out._v = dict(self._v) if ledger is None else {j: c for j, c in sorted(ledger.items()) if c}
        out.cartan = self.cartan
        out._hash = None
        out._rows = None
        return out

    def __mul__(self, other: "Monomial") -> "Monomial":
        return self.times(other._u)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._u == other._u

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._u.items()))
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return tuple(self._u.items()) < tuple(other._u.items())

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)!r})"

    def __str__(self) -> str:
        return format_monomial(self)


def _cartan_of(m: Monomial, C: Optional[CartanData]) -> CartanData:
    C = C or m.cartan
    if C is None:
        raise ValueError("no Cartan data attached to the monomial")
    return C


def _a_map(C: CartanData, i: int, l: int) -> Dict[Key, int]:
    out = {(i, l - 1): 1, (i, l + 1): 1}
    for j, cji in C.column(i):
        out[(j, l)] = cji
    return out


def a_multiplier(C: CartanData, i: int, l: int,
                 parity: Optional[Mapping[int, int]] = None) -> Dict[Key, int]:
    """Exponent map of ``A_{i,l}``.

    ``l`` must have the parity opposite to node ``i`` (canonical coloring
    unless ``parity`` is supplied); odd-cycle types skip the check.
    """
    if parity is not None:
        s_i = parity[i]
    elif C.parity is not None:
        s_i = C.s(i)
    else:
        s_i = None
    if s_i is not None and (l - s_i) % 2 == 0:
        raise ParityError(f"A_{{{i},{l}}} needs l of parity {1 - s_i}")
    return _a_map(C, i, l)


def _phi_scan(row: List[Tuple[int, int]]) -> Tuple[int, Optional[int]]:
    best, arg, total = 0, None, 0
    for l, e in row:
        total += e
        if total > best:
            best, arg = total, l
    return best, arg


def _eps_scan(row: List[Tuple[int, int]]) -> Tuple[int, Optional[int]]:
    best, arg, total = 0, None, 0
    for l, e in reversed(row):
        total -= e
        if total > best:
            best, arg = total, l
    return best, arg


def phi_i(m: Monomial, i: int) -> int:
    """``max(0, max_L sum_{l<=L} u_{i,l})``."""
    return _phi_scan(m.row(i))[0]


def eps_i(m: Monomial, i: int) -> int:
    """``max(0, max_L -sum_{l>=L} u_{i,l})``."""
    return _eps_scan(m.row(i))[0]


def q_i(m: Monomial, i: int) -> int:
    """Smallest grade at which the prefix sum of node ``i`` reaches ``phi_i``."""
    value, arg = _phi_scan(m.row(i))
    if value == 0 or arg is None:
        raise ValueError(f"q_{i} is undefined when phi_{i} = 0")
    return arg


def p_i(m: Monomial, i: int) -> int:
    """Largest grade at which the negated suffix sum of node ``i`` reaches ``eps_i``."""
    value, arg = _eps_scan(m.row(i))
    if value == 0 or arg is None:
        raise ValueError(f"p_{i} is undefined when eps_{i} = 0")
    return arg


def lower(m: Monomial, i: int, C: Optional[CartanData] = None) -> Optional[Monomial]:
    """``f~_i``: divide by ``A_{i,q_i+1}``, or ``None`` when ``phi_i = 0``."""
    value, arg = _phi_scan(m.row(i))
    if value == 0:
        return None
    C = _cartan_of(m, C)
    ledger = dict(m._v)
    ledger[i] = ledger.get(i, 0) + 1
    return m.times(_a_map(C, i, arg + 1), -1, ledger)


def raise_op(m: Monomial, i: int, C: Optional[CartanData] = None) -> Optional[Monomial]:
    """``e~_i``: multiply by ``A_{i,p_i-1}``, or ``None`` when ``eps_i = 0``."""
    value, arg = _eps_scan(m.row(i))
    if value == 0:
        return None
    C = _cartan_of(m, C)
    ledger = dict(m._v)
    ledger[i] = ledger.get(i, 0) - 1
    return m.times(_a_map(C, i, arg - 1), 1, ledger)


raise_ = raise_op


class WeightDelta(dict):
    """Coefficients ``c_i`` with ``wt(m) = wt(seed) - sum c_i alpha_i``."""


def weight_delta(m: Monomial) -> WeightDelta:
    C = m.cartan
    nodes = C.nodes if C is not None else tuple(sorted(m._v))
    return WeightDelta({i: m._v.get(i, 0) for i in nodes})


def delta_multiple(m: Monomial, C: Optional[CartanData] = None) -> Optional[int]:
    """``N`` with ``c = N * marks``, so that ``wt(m) = wt(seed) - N delta``; else ``None``."""
    C = _cartan_of(m, C)
    if C.marks is None:
        return None
    c = [m._v.get(i, 0) for i in C.nodes]
    a = C.marks
    if c[0] % a[0]:
        return None
    N = c[0] // a[0]
    return N if all(ci == N * ai for ci, ai in zip(c, a)) else None


def tau_shift(m: Monomial, shift: int) -> Monomial:
    """Move every exponent from grade ``l`` to ``l + shift``; the ledger is kept.

    ``shift`` is even for bipartite types; odd shifts are reflections of
    parity and are only meaningful on odd-cycle types.
    """
    if shift == 0:
        return m
    out = Monomial.__new__(Monomial)
    out._u = {(i, l + shift): e for (i, l), e in m._u.items()}
    out._v = dict(m._v)
    out.cartan = m.cartan
    out._hash = None
    out._rows = None
    return out


def project_I0(m: Monomial) -> Monomial:
    """Set every ``Y_{0,*}`` to 1."""
    return Monomial({k: e for k, e in m._u.items() if k[0] != 0}, m._v, m.cartan)


def is_parity_admissible(m: Monomial, C: Optional[CartanData] = None,
                         flipped: bool = False) -> bool:
    """Whether every ``(i, l)`` in the support has ``l = s_i`` mod 2."""
    C = _cartan_of(m, C)
    if C.parity is None:
        return True
    return all((l - C.s(i) - flipped) % 2 == 0 for i, l in m._u)


def detect_parity_flip(m: Monomial, C: Optional[CartanData] = None) -> Optional[bool]:
    """``False`` for canonical parity, ``True`` for the reflected one, ``None`` if mixed."""
    if is_parity_admissible(m, C):
        return False
    if is_parity_admissible(m, C, flipped=True):
        return True
    return None


_INT = r"[+-]?\d+"
_TERM = re.compile(
    rf"\s*(?P<i>{_INT})_(?:\{{(?P<lb>{_INT})\}}|(?P<l>{_INT}))"
    rf"(?:\^(?:\{{(?P<eb>{_INT})\}}|(?P<e>{_INT})))?")


def parse(text: str, cartan: Optional[CartanData] = None) -> Monomial:
    """Parse compact text such as ``"5_0 0_4^-1"``; exponents of repeated terms add.

    Braced forms ``0_{-1}`` and ``^{-2}`` are accepted as well.
    """
    pos, terms = 0, []
    stripped = text.rstrip()
    while pos < len(stripped):
        mt = _TERM.match(stripped, pos)
        if not mt or mt.end() == pos:
            raise MonomialSyntaxError(f"unexpected {stripped[pos:pos + 8]!r}", pos)
        i = int(mt.group("i"))
        l = int(mt.group("lb") if mt.group("lb") is not None else mt.group("l"))
        e_txt = mt.group("eb") if mt.group("eb") is not None else mt.group("e")
        terms.append(((i, l), int(e_txt) if e_txt is not None else 1))
        pos = mt.end()
        if pos < len(stripped) and not stripped[pos].isspace():
            raise MonomialSyntaxError("terms must be separated by spaces", pos)
    return Monomial(terms, None, cartan)


def format_monomial(m: Monomial) -> str:
    """Canonical text: terms sorted by ``(i, l)``, exponent omitted when 1."""
    parts = []
    for (i, l), e in m._u.items():
        parts.append(f"{i}_{l}" if e == 1 else f"{i}_{l}^{e}")
    return " ".join(parts)


format = format_monomial
