"""Column tableaux for the classical types and their monomials.

Symbols are integers: ``k`` for the unbarred letter, ``-k`` for its bar and
``0`` for the middle letter of the alphabets that have one.  A tableau is
stored flat as ``(i_1, ..., i_l)`` together with a split ``h`` (the first
``h`` entries form the upper column) and a jump ``r`` (the lower column is
shifted down by ``2r`` grades).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cartan import AffineType, CartanData, build_cartan, finite_cartan, parse_type
from .monomial import Monomial, eps_i, phi_i, p_i, q_i, tau_shift

__all__ = [
    "UnknownSymbol",
    "InadmissibleTableau",
    "ParameterError",
    "Alphabet",
    "Tableau",
    "Violation",
    "IndexedTableau",
    "AffineFamily",
    "alphabet",
    "box",
    "box_map",
    "successor",
    "jump_grades",
    "monomial_of_tableau",
    "highest_monomial",
    "tableau_cartan",
    "check_admissible",
    "is_admissible",
    "parameters_in_range",
    "enumerate_tableaux",
    "tableau_crystal_op",
    "sigma",
    "sigma_prime",
    "tau_lhr",
    "affine_family",
    "affine_op_on_tableau",
    "format_symbol",
]

Key = Tuple[int, int]
Entries = Tuple[int, ...]


class UnknownSymbol(ValueError):
    """A symbol outside the alphabet of the requested type."""


class InadmissibleTableau(ValueError):
    """A tableau violating one of the admissibility clauses."""


class ParameterError(ValueError):
    """Parameters ``(l, h, r)`` outside the range of the family."""


# ---------------------------------------------------------------------------
# Alphabets


@dataclass(frozen=True)
class Alphabet:
    """Ordered letters of a classical type.

    ``kind`` is ``A`` (letters ``1..n+1``), ``B`` (with ``0``), ``C`` or
    ``D``; in type ``D`` the letters ``n`` and ``-n`` are incomparable.
    """

    kind: str
    n: int

    @property
    def symbols(self) -> Tuple[int, ...]:
        n = self.n
        if self.kind == "A":
            return tuple(range(1, n + 2))
        middle = (0,) if self.kind == "B" else ()
        return tuple(range(1, n + 1)) + middle + tuple(-k for k in range(n, 0, -1))

    def pos(self, s: int) -> int:
        try:
            return _positions(self.kind, self.n)[s]
        except KeyError:
            raise UnknownSymbol(f"{format_symbol(s)} is not a letter of type {self.kind}{self.n}") from None

    def __contains__(self, s: object) -> bool:
        return s in _positions(self.kind, self.n)

    def prec(self, s: int, t: int) -> bool:
        """Strict order ``s < t``."""
        if self.kind == "D" and {s, t} == {self.n, -self.n}:
            return False
        return self.pos(s) < self.pos(t)

    def preceq(self, s: int, t: int) -> bool:
        return s == t or self.prec(s, t)


@lru_cache(maxsize=None)
def _positions(kind: str, n: int) -> Dict[int, int]:
    return {s: k for k, s in enumerate(Alphabet(kind, n).symbols)}


def alphabet(kind: str, n: int) -> Alphabet:
    if kind not in ("A", "B", "C", "D"):
        raise ValueError(f"unknown alphabet kind {kind!r}")
    return Alphabet(kind, n)


def format_symbol(s: int) -> str:
    return str(s)


# ---------------------------------------------------------------------------
# Box tables.  Each entry lists (node, grade offset, exponent); the box at
# grade p is the product of Y_{node, p + offset} ** exponent.

Row = Tuple[Tuple[int, int, int], ...]

_SCHEME_OF_FAMILY = {
    "A1": "A", "B1": "B", "C1": "C", "D1": "D",
    "A2even": "A2even", "A2dag": "A2dag", "A2odd": "A2odd", "D2": "D2",
}
_HALF_SCHEME_OF_FAMILY = {"D1": "Dspin", "B1": "Bspin", "D2": "D2spin"}
_ALPHABET_OF_SCHEME = {
    "A": "A", "B": "B", "C": "C", "D": "D", "A2even": "C", "A2dag": "B",
    "A2odd": "C", "D2": "B", "Dspin": "D", "Bspin": "B", "D2spin": "B",
}
_FAMILY_OF_SCHEME = {v: k for k, v in _SCHEME_OF_FAMILY.items()}
_FAMILY_OF_SCHEME.update({v: k for k, v in _HALF_SCHEME_OF_FAMILY.items()})


def _plain(i: int) -> Row:
    return ((i - 1, i, -1), (i, i - 1, 1))


def _plain_bar(i: int, n: int) -> Row:
    """C-like barred box: Y_{i-1,p+2n-i} Y_{i,p+2n+1-i}^{-1}."""
    return ((i - 1, 2 * n - i, 1), (i, 2 * n + 1 - i, -1))


def _b_middle(n: int) -> Dict[int, Row]:
    return {
        n: ((n - 1, n, -1), (n, n - 1, 2)),
        0: ((n, n + 1, -1), (n, n - 1, 1)),
        -n: ((n - 1, n, 1), (n, n + 1, -2)),
    }


def _zero_end_d(n: int, top: int) -> Dict[int, Row]:
    """Letters 1, 2, -2, -1 when node 0 hangs off node 2 (types D, B, A2odd).

    ``top`` is the offset of Y_0 in the barred boxes.
    """
    return {
        1: ((0, 2, -1), (1, 0, 1)),
        2: ((0, 2, -1), (1, 2, -1), (2, 1, 1)),
        -2: ((0, top, 1), (1, top, 1), (2, top + 1, -1)),
        -1: ((0, top, 1), (1, top + 2, -1)),
    }


def _zero_end_double(n: int) -> Dict[int, Row]:
    """Letters 1 and -1 when node 0 is joined to node 1 by a double bond."""
    return {1: ((1, 0, 1), (0, 1, -2)), -1: ((0, 2 * n - 1, 2), (1, 2 * n, -1))}


@lru_cache(maxsize=None)
def _rows(scheme: str, n: int) -> Dict[int, Row]:
    t: Dict[int, Row] = {}
    if scheme == "A":
        for k in range(1, n + 2):
            t[k] = ((k - 1, k, -1), (k % (n + 1), k - 1, 1))
    elif scheme == "C":
        for i in range(1, n + 1):
            t[i] = _plain(i)
            t[-i] = _plain_bar(i, n)
    elif scheme == "D":
        for i in range(3, n - 1):
            t[i] = _plain(i)
            t[-i] = ((i - 1, 2 * n - 2 - i, 1), (i, 2 * n - 1 - i, -1))
        t[n - 1] = ((n - 2, n - 1, -1), (n - 1, n - 2, 1), (n, n - 2, 1))
        t[-(n - 1)] = ((n - 2, n - 1, 1), (n - 1, n, -1), (n, n, -1))
        t[n] = ((n - 1, n, -1), (n, n - 2, 1))
        t[-n] = ((n - 1, n - 2, 1), (n, n, -1))
        t.update(_zero_end_d(n, 2 * n - 4))
    elif scheme == "B":
        for i in range(3, n):
            t[i] = _plain(i)
            t[-i] = _plain_bar(i, n)
        t.update(_b_middle(n))
        t.update(_zero_end_d(n, 2 * n - 2))
    elif scheme == "A2odd":
        for i in range(3, n + 1):
            t[i] = _plain(i)
            t[-i] = _plain_bar(i, n)
        t.update(_zero_end_d(n, 2 * n - 2))
    elif scheme == "A2even":
        for i in range(2, n + 1):
            t[i] = _plain(i)
            t[-i] = _plain_bar(i, n)
        t.update(_zero_end_double(n))
    elif scheme == "A2dag":
        for i in range(1, n):
            t[i] = _plain(i)
            t[-i] = _plain_bar(i, n)
        t.update(_b_middle(n))
    elif scheme == "D2":
        for i in range(2, n):
            t[i] = _plain(i)
            t[-i] = _plain_bar(i, n)
        t.update(_b_middle(n))
        t.update(_zero_end_double(n))
    elif scheme == "Dspin":
        t[1] = ((1, -1, 1),)
        t[2] = ((1, 1, -1), (2, 0, 1), (0, 1, -1))
        for i in range(3, n - 1):
            t[i] = ((i - 1, i - 1, -1), (i, i - 2, 1))
            t[-i] = ()
        t[n - 1] = ((n - 2, n - 2, -1),)
        t[n] = ((n, n - 1, 1),)
        t[-1] = ((0, 2 * n - 1, 1),)
        t[-2] = ()
        t[-(n - 1)] = ((n - 1, n + 1, -1), (n, n + 1, -1))
        t[-n] = ((n - 1, n - 1, 1),)
    elif scheme in ("Bspin", "D2spin"):
        first = 3 if scheme == "Bspin" else 1
        for i in range(first, n):
            t[i] = ((i - 1, i - 1, -1), (i, i - 2, 1))
            t[-i] = ()
        if scheme == "Bspin":
            t[1] = ((1, -1, 1),)
            t[2] = ((1, 1, -1), (2, 0, 1), (0, 1, -1))
            t[-2] = ()
            t[-1] = ((0, 2 * n + 1, 1),)
        else:
            t[-1] = ((0, 2 * n, 1),)
        t[n] = ((n - 1, n - 1, -1),)
        t[0] = ((n, n, 1),)
        t[-n] = ((n, n + 2, -2),)
    else:
        raise ValueError(f"unknown box scheme {scheme!r}")
    letters = Alphabet(_ALPHABET_OF_SCHEME[scheme], n).symbols
    return {s: t[s] for s in letters}


def box_map(scheme: str, n: int, s: int, p: int, keep_zero: bool = True) -> Dict[Key, int]:
    """Exponent map of the box of ``s`` at grade ``p`` in the given scheme."""
    rows = _rows(scheme, n)
    if s not in rows:
        raise UnknownSymbol(f"{format_symbol(s)} is not a letter of scheme {scheme} (n={n})")
    out: Dict[Key, int] = {}
    for node, off, e in rows[s]:
        if node == 0 and not keep_zero:
            continue
        key = (node, p + off)
        out[key] = out.get(key, 0) + e
    return {k: e for k, e in out.items() if e}


def _affine_cartan(t: AffineType) -> CartanData:
    return build_cartan(t, allow_odd_cycle=True)


def box(t: AffineType | str, s: int, p: int, half: bool = False) -> Monomial:
    """The box ``[s]_p`` (or the half box) of an affine classical type."""
    if isinstance(t, str):
        t = parse_type(t)
    table = _HALF_SCHEME_OF_FAMILY if half else _SCHEME_OF_FAMILY
    if t.family not in table:
        raise ValueError(f"no {'half ' if half else ''}box table for {t.name}")
    return Monomial(box_map(table[t.family], t.n, s, p), cartan=_affine_cartan(t))


@lru_cache(maxsize=None)
def _successors(scheme: str, n: int) -> Dict[Tuple[int, int], int]:
    """``(s, k) -> t`` whenever ``[t]_p = [s]_p A_{k,g+1}^{-1}`` with ``Y_{k,g}`` in ``[s]_p``."""
    C = _affine_cartan(AffineType(_FAMILY_OF_SCHEME[scheme], n))
    letters = list(_rows(scheme, n))
    boxes = {s: box_map(scheme, n, s, 0) for s in letters}
    index = {tuple(sorted(b.items())): s for s, b in boxes.items()}
    out = {}
    for s in letters:
        for (k, g), e in boxes[s].items():
            if e <= 0 or k == 0:
                continue
            new = dict(boxes[s])
            for key, c in _a_map(C, k, g + 1).items():
                new[key] = new.get(key, 0) - c
            key = tuple(sorted((q, e2) for q, e2 in new.items() if e2))
            if key in index:
                out[(s, k)] = index[key]
    return out


def _a_map(C: CartanData, k: int, l: int) -> Dict[Key, int]:
    out = {(k, l - 1): 1, (k, l + 1): 1}
    for j, c in C.column(k):
        out[(j, l)] = out.get((j, l), 0) + c
    return out


def successor(scheme: str, n: int, s: int, k: int) -> Optional[int]:
    """The letter reached from ``s`` by the arrow labelled ``k`` (vector crystal)."""
    return _successors(scheme, n).get((s, k))


def _predecessor(scheme: str, n: int, t: int, k: int) -> Optional[int]:
    for (s, kk), tt in _successors(scheme, n).items():
        if kk == k and tt == t:
            return s
    return None


# ---------------------------------------------------------------------------
# Tableaux

_TEXT_RE = re.compile(r"^\s*\(\s*\(([^()]*)\)\s*,\s*\(([^()]*)\)\s*\)\s*(?:r\s*=\s*(\d+))?\s*$")


@dataclass(frozen=True)
class Tableau:
    """Flat column ``(i_1, ..., i_l)`` with split ``h`` and jump ``r``."""

    entries: Entries
    h: int = 0
    r: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(s) for s in self.entries))
        if not 0 <= self.h <= len(self.entries):
            raise ValueError(f"split h={self.h} outside 0..{len(self.entries)}")
        if self.r < 0:
            raise ValueError("jump r must be nonnegative")

    @property
    def ell(self) -> int:
        return len(self.entries)

    @property
    def columns(self) -> Tuple[Entries, Entries]:
        return self.entries[:self.h], self.entries[self.h:]

    def entry(self, a: int) -> Optional[int]:
        """``i_a`` (1-based), ``None`` when out of range."""
        return self.entries[a - 1] if 1 <= a <= len(self.entries) else None

    def __str__(self) -> str:
        top, bottom = self.columns
        return f"(({','.join(map(str, top))}),({','.join(map(str, bottom))})) r={self.r}"

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        """Read ``((i_1,...,i_h),(i_{h+1},...,i_l)) r=<r>``; ``-k`` is the bar of ``k``."""
        m = _TEXT_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse tableau {text!r}")

        def part(s: str) -> List[int]:
            s = s.strip()
            return [int(x) for x in s.split(",")] if s else []

        top, bottom = part(m.group(1)), part(m.group(2))
        return cls(tuple(top + bottom), len(top), int(m.group(3) or 0))


@dataclass(frozen=True)
class Violation:
    clause: str
    positions: Tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:
        where = ",".join(map(str, self.positions))
        return f"{self.clause} at ({where})" + (f": {self.detail}" if self.detail else "")


def jump_grades(ell: int, h: int, r: int) -> List[int]:
    return [ell - 2 * a + 1 if a <= h else ell + 1 - 2 * a - 2 * r for a in range(1, ell + 1)]


def tableau_cartan(kind: str, n: int) -> CartanData:
    """Finite Cartan data on ``I_0`` used for the jump-tableau monomials."""
    return _finite(kind, n)


@lru_cache(maxsize=None)
def _finite(kind: str, n: int) -> CartanData:
    return finite_cartan(kind, n)


def _product(scheme: str, n: int, pairs: Sequence[Tuple[int, int]],
             keep_zero: bool = True) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    for s, p in pairs:
        for key, e in box_map(scheme, n, s, p, keep_zero).items():
            out[key] = out.get(key, 0) + e
    return out


def monomial_of_tableau(T: Tableau, kind: str, n: int) -> Monomial:
    """``m_T``: boxes at grades ``l-2a+1`` (``a <= h``) and ``l+1-2a-2r`` (``a > h``).

    ``Y_0`` is set to 1, so the result lives on the finite Cartan data.
    """
    if kind not in ("B", "C", "D"):
        raise ValueError(f"jump tableaux exist for types B, C, D, not {kind!r}")
    grades = jump_grades(T.ell, T.h, T.r)
    u = _product(kind, n, list(zip(T.entries, grades)), keep_zero=False)
    return Monomial(u, cartan=_finite(kind, n))


def highest_monomial(kind: str, n: int, ell: int, h: int, r: int) -> Monomial:
    """``M_{l,h,r} = Y_{h,l-h} Y_{h,l-h-2r}^{-1} Y_{l,-2r}`` with ``Y_0 = 1``."""
    u: Dict[Key, int] = {(ell, -2 * r): 1}
    if h > 0:
        u[(h, ell - h)] = u.get((h, ell - h), 0) + 1
        u[(h, ell - h - 2 * r)] = u.get((h, ell - h - 2 * r), 0) - 1
    return Monomial(u, cartan=_finite(kind, n))


# ---------------------------------------------------------------------------
# Admissibility


def _edge(kind: str, n: int) -> int:
    """The constant ``e`` with critical distances ``e - k`` (``n-1`` in type D, ``n`` otherwise)."""
    return n - 1 if kind == "D" else n


def parameters_in_range(kind: str, n: int, ell: int, h: int, r: int) -> bool:
    if not 0 <= h <= ell or r < 0:
        return False
    if kind == "D":
        return 1 <= ell <= n - 2 and r <= n - ell - 1
    if kind in ("B", "C"):
        top = n - 1 if kind == "B" else n
        return 1 <= ell <= top and r <= n - ell
    return False


def _column_ok(alph: Alphabet, s: int, t: int) -> bool:
    if alph.kind == "B" and s == t == 0:
        return True
    if alph.kind == "D":
        return not alph.preceq(t, s)
    return alph.prec(s, t)


def check_admissible(T: Tableau, kind: str, n: int) -> Optional[Violation]:
    """First violated clause (``D.1``..``D.7``, ``B.1``..``B.7``, ``C.1``..``C.6``) or ``None``."""
    alph = alphabet(kind, n)
    for a, s in enumerate(T.entries, 1):
        if s not in alph:
            return Violation(f"{kind}.1", (a,), f"unknown letter {s}")
    e = _edge(kind, n)
    h, r, ell = T.h, T.r, T.ell
    x = T.entries

    # .1 each column strictly increasing
    for a in range(1, ell):
        if a == h:
            continue
        if not _column_ok(alph, x[a - 1], x[a]):
            return Violation(f"{kind}.1", (a, a + 1))

    where = {}
    for a, s in enumerate(x, 1):
        where.setdefault(s, []).append(a)

    def pairs():
        for k in range(1, n + 1):
            for a in where.get(k, ()):
                for b in where.get(-k, ()):
                    if a < b:
                        yield k, a, b

    for k, a, b in pairs():
        if b <= h and b - a == e - k:
            return Violation(f"{kind}.2", (a, b))
    for k, a, b in pairs():
        if a > h and b - a == e - k:
            return Violation(f"{kind}.3", (a, b))
    for k, a, b in pairs():
        if a <= h < b and b - a == e + 1 - max(r, 1) - k:
            return Violation(f"{kind}.4", (a, b))

    if 1 <= h < ell:
        top, low = x[h - 1], x[h]
        if kind == "D" and low in (n, -n):
            if alph.preceq(low, top):
                return Violation("D.7", (h, h + 1))
        elif kind == "B" and low == 0:
            if not alph.preceq(top, 0):
                return Violation("B.7", (h, h + 1))
        elif alph.preceq(low, top):
            kmax = n - 1 if kind == "D" else n
            if 1 <= low <= kmax:
                k = low
                ok = 1 <= top <= kmax and _run_below(x, h, top, k, lambda d: e - r - k + 1 < d <= e - k)
                if not ok:
                    return Violation(f"{kind}.5", (h, h + 1))
            elif 1 <= -low <= kmax:
                k = -low
                ok = 1 <= -top <= kmax and _run_above(x, h, -top, k, lambda d: e - r - k + 1 <= d < e - k)
                if not ok:
                    return Violation(f"{kind}.6", (h, h + 1))
    return None


def _run_below(x: Entries, h: int, kp: int, k: int, window: Callable[[int], bool]) -> bool:
    """``(bar k', bar(k'-1), ..., bar k)`` occupies ``b' .. b`` in the lower column with ``window(b - h)``."""
    length = kp - k + 1
    if length < 1:
        return False
    run = tuple(-(kp - t) for t in range(length))
    for b0 in range(h + 1, len(x) - length + 2):
        if x[b0 - 1:b0 - 1 + length] == run and window(b0 + length - 1 - h):
            return True
    return False


def _run_above(x: Entries, h: int, kp: int, k: int, window: Callable[[int], bool]) -> bool:
    """``(k', k'+1, ..., k)`` occupies ``a' .. a`` in the upper column with ``window(h - a)``."""
    length = k - kp + 1
    if length < 1:
        return False
    run = tuple(kp + t for t in range(length))
    for a0 in range(1, h - length + 2):
        if x[a0 - 1:a0 - 1 + length] == run and window(h - (a0 + length - 1)):
            return True
    return False


def is_admissible(T: Tableau, kind: str, n: int) -> bool:
    return check_admissible(T, kind, n) is None


def _require(T: Tableau, kind: str, n: int) -> None:
    v = check_admissible(T, kind, n)
    if v is not None:
        raise InadmissibleTableau(f"{T} violates {v}")


# ---------------------------------------------------------------------------
# Enumeration


def _columns(alph: Alphabet, length: int) -> List[Entries]:
    """All columns of the given length satisfying clause .1, in lexicographic order."""
    letters = alph.symbols
    out: List[Entries] = []

    def grow(prefix: List[int]) -> None:
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for s in letters:
            if prefix and not _column_ok(alph, prefix[-1], s):
                continue
            prefix.append(s)
            grow(prefix)
            prefix.pop()

    grow([])
    return out


def enumerate_tableaux(kind: str, ell: int, h: int, r: int, n: int) -> List[Tableau]:
    """All admissible tableaux with the given parameters, in lexicographic order.

    ``ell = 0`` gives the single empty tableau.
    """
    if ell == 0:
        return [Tableau((), 0, r)]
    if not parameters_in_range(kind, n, ell, h, r):
        raise ParameterError(f"({kind}{n}, l={ell}, h={h}, r={r}) out of range")
    alph = alphabet(kind, n)
    out = []
    lower = _columns(alph, ell - h)
    for top in _columns(alph, h):
        for bottom in lower:
            T = Tableau(top + bottom, h, r)
            if check_admissible(T, kind, n) is None:
                out.append(T)
    return out


# ---------------------------------------------------------------------------
# Crystal operators on jump tableaux


def tableau_crystal_op(T: Tableau, k: int, kind: str, n: int, op: str = "f") -> Optional[Tableau]:
    """``f~_k`` (``op="f"``) or ``e~_k`` (``op="e"``) as a single entry replacement.

    The acting entry is the one whose box carries the critical ``Y_{k,*}``
    factor of ``m_T``.  When two entries qualify (a pair ``k``,
    ``bar(k+1)`` at equal ``k``-grade) the replacement keeps the result
    admissible; if both would, entries in one column (or ``r = 0``) change
    the unbarred letter and cross pairs change the barred one.
    """
    m = monomial_of_tableau(T, kind, n)
    grades = jump_grades(T.ell, T.h, T.r)
    if op == "f":
        if phi_i(m, k) == 0:
            return None
        target, sign = q_i(m, k), 1
    elif op == "e":
        if eps_i(m, k) == 0:
            return None
        target, sign = p_i(m, k), -1
    else:
        raise ValueError("op is 'e' or 'f'")
    candidates = []
    for a, (s, g) in enumerate(zip(T.entries, grades)):
        e = box_map(kind, n, s, g, keep_zero=False).get((k, target), 0)
        if e * sign <= 0:
            continue
        new = successor(kind, n, s, k) if op == "f" else _predecessor(kind, n, s, k)
        if new is None:
            continue
        entries = T.entries[:a] + (new,) + T.entries[a + 1:]
        candidates.append((a, s, replace(T, entries=entries)))
    if not candidates:
        raise AssertionError(f"no entry of {T} carries Y_{k},{target}")
    if len(candidates) == 1:
        return candidates[0][2]
    good = [c for c in candidates if is_admissible(c[2], kind, n)]
    if len(good) == 1:
        return good[0][2]
    pool = good or candidates
    positions = [a for a, _, _ in pool]
    cross = min(positions) < T.h <= max(positions)
    want_barred = cross and T.r != 0
    for a, s, U in pool:
        if (s < 0) == want_barred:
            return U
    return pool[0][2]


# ---------------------------------------------------------------------------
# Correction maps (type D for sigma; types B, C, D for tau)


def _replace_pairs(T: Tableau, k: int, dist: int, new_k: int) -> Tableau:
    x = list(T.entries)
    for a in range(1, T.h + 1):
        b = a + dist
        if x[a - 1] == k and T.h < b <= T.ell and x[b - 1] == -k:
            x[a - 1], x[b - 1] = new_k, -new_k
    return replace(T, entries=tuple(x))


def sigma(T: Tableau, n: int, kind: str = "D") -> Tableau:
    """``D_{l,h,r} -> D_{l,h,r+1}``: cross pairs ``(k, bar k)`` at distance ``n-r-k-1`` become ``(k+1, bar(k+1))``."""
    if kind != "D":
        raise ValueError("sigma is defined for type D")
    _require(T, kind, n)
    r = T.r
    if not parameters_in_range(kind, n, len(T.entries), T.h, r + 1):
        raise ParameterError(f"r = {r + 1} is out of range for l = {len(T.entries)}, n = {n}")
    U = T
    for k in range(1, n - r):
        U = _replace_pairs(U, k, n - r - k - 1, k + 1)
    return replace(U, r=r + 1)


def sigma_prime(T: Tableau, n: int, kind: str = "D") -> Tableau:
    """``D_{l,h,r} -> D_{l,h,r-1}`` (``r >= 1``), the inverse of ``sigma``."""
    if kind != "D":
        raise ValueError("sigma_prime is defined for type D")
    if T.r < 1:
        raise ParameterError("sigma_prime needs r >= 1")
    _require(T, kind, n)
    r = T.r
    U = T
    if r > 1:
        for k in range(n - r, 2, -1):
            U = _replace_pairs(U, k, n - r - k + 1, k - 1)
    return replace(U, r=r - 1)


def tau_lhr(T: Tableau, n: int, kind: str = "D") -> Tableau:
    """``D_{l,h,r} -> D_{l,h+1,r}`` by the three-case construction (and its B, C analogues)."""
    _require(T, kind, n)
    h, r, ell = T.h, T.r, T.ell
    if h >= ell:
        raise ParameterError("tau needs h < l")
    e = _edge(kind, n)
    x = T.entries
    low = x[h]
    kmax = n - 1 if kind == "D" else n
    if 1 <= low <= kmax:
        k = low
        for b in range(h + 1, ell + 1):
            if x[b - 1] == -k and e - r - k + 1 < b - h <= e - k:
                b0 = b
                while b0 - 1 > h and x[b0 - 2] == x[b0 - 1] - 1 and -x[b0 - 2] <= kmax:
                    b0 -= 1
                kpp = -x[b0 - 1]
                shifted = tuple(-(-s + 1) for s in x[b0 - 1:b])
                top = x[:h] + (kpp + 1,)
                bottom = x[h + 1:b0 - 1] + shifted + x[b:]
                return Tableau(top + bottom, h + 1, r)
    elif 1 <= -low <= kmax:
        k = -low
        for a in range(1, h + 1):
            if x[a - 1] == k and e - r - k + 1 <= h - a < e - k:
                a0 = a
                while a0 - 1 >= 1 and x[a0 - 2] == x[a0 - 1] - 1 and x[a0 - 2] >= 1:
                    a0 -= 1
                kpp = x[a0 - 1]
                shifted = tuple(s - 1 for s in x[a0 - 1:a])
                top = x[:a0 - 1] + shifted + x[a:h] + (-(kpp - 1),)
                return Tableau(top + x[h + 1:], h + 1, r)
    return Tableau(x, h + 1, r)


# ---------------------------------------------------------------------------
# Affine families: monomials m_{T;j,k} and closed forms for e~_0, f~_0


@dataclass(frozen=True)
class IndexedTableau:
    """A tableau together with its indices ``j`` (any integer) and ``k``."""

    entries: Entries
    j: int = 0
    k: int = 0

    def __str__(self) -> str:
        return f"({','.join(map(str, self.entries))});j={self.j},k={self.k}"


@dataclass(frozen=True)
class AffineFamily:
    """One of the closed-form realizations of a level-zero fundamental crystal.

    ``cycle`` consecutive values of ``j`` form a period; advancing ``j`` by
    ``cycle`` applies the grade shift ``tau_period``.
    """

    name: str
    type: AffineType
    ell: int
    scheme: str
    cycle: int
    period: int

    @property
    def cartan(self) -> CartanData:
        return _affine_cartan(self.type)

    @property
    def n(self) -> int:
        return self.type.n

    def k_values(self) -> range:
        if self.name in ("D", "B", "A2odd"):
            return range(0, self.ell // 2 + 1)
        if self.name == "A2odd_n":
            return range(0, self.n // 2 + 1)
        if self.name in ("A2even", "D2"):
            return range(0, self.ell + 1)
        return range(0, 1)

    def tableaux(self, j: int, k: int) -> List[Entries]:
        """Entry tuples indexing the ``I_0``-component of ``(j, k)``, ``0 <= j < cycle``."""
        n, ell, name = self.n, self.ell, self.name
        if name == "A":
            alph = Alphabet("A", n)
            return [c for c in _columns(alph, ell)]
        if name == "vector":
            return [(s,) for s in Alphabet(_ALPHABET_OF_SCHEME[self.scheme], n).symbols]
        if name in ("D", "B", "A2odd"):
            kind = {"D": "D", "B": "B", "A2odd": "C"}[name]
            r = n - ell - 2 if name == "D" else n - ell - 1
            size, h = ell - 2 * k, j - 2 * k
            if h < 1:
                h, r = 0, 0
            return _entries(kind, n, size, h, r)
        if name in ("C", "A2dag"):
            kind = "C" if name == "C" else "B"
            return _entries(kind, n, ell, ell - j, n - ell)
        if name in ("A2even", "D2"):
            kind = "C" if name == "A2even" else "B"
            h = max(ell - j - k, 0)
            return _entries(kind, n, ell - k, h, n - ell if h else 0)
        if name == "A2odd_n":
            return _entries("C", n, n - 2 * k, 0, 0)
        if name == "A2dag_n":
            alph = Alphabet("B", n)
            return [c for c in _columns(alph, n)
                    if check_admissible(Tableau(c, n, 0), "B", n) is None]
        if name in ("Dspin", "Bspin", "D2spin"):
            return _spin_entries(name, n, ell)
        raise ValueError(name)

    def index_set(self) -> List[IndexedTableau]:
        out = []
        for j in range(self.cycle):
            for k in self.k_values():
                out.extend(IndexedTableau(c, j, k) for c in self.tableaux(j, k))
        return out

    def monomial(self, it: IndexedTableau) -> Monomial:
        q, j = divmod(it.j, self.cycle)
        u = _FORMULAS[self.name](self, it.entries, j, it.k)
        return tau_shift(Monomial(u, cartan=self.cartan), q * self.period)

    def op(self, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
        if which not in ("e0", "f0"):
            raise ValueError("op is 'e0' or 'f0'")
        rule = _RULES[self.name]
        return rule(self, it, which)


def _entries(kind: str, n: int, ell: int, h: int, r: int) -> List[Entries]:
    return [T.entries for T in _enumerate_cached(kind, n, ell, h, r)]


@lru_cache(maxsize=None)
def _enumerate_cached(kind: str, n: int, ell: int, h: int, r: int) -> Tuple[Tableau, ...]:
    if ell == 0:
        return (Tableau((), 0, 0),)
    alph = alphabet(kind, n)
    out = []
    lower = _columns(alph, ell - h)
    for top in _columns(alph, h):
        for bottom in lower:
            T = Tableau(top + bottom, h, r)
            if check_admissible(T, kind, n) is None:
                out.append(T)
    return tuple(out)


def _spin_entries(name: str, n: int, ell: int) -> List[Entries]:
    kind = "D" if name == "Dspin" else "B"
    alph = Alphabet(kind, n)
    size = n if name == "Dspin" else n + 1
    out = []
    for c in _columns(alph, size):
        if any(alph.preceq(c[a + 1], c[a]) for a in range(size - 1)):
            continue
        if any(-s in c for s in c if s > 0):
            continue
        if name == "Dspin":
            # the parity of the position of n or bar n selects the half spin
            plus = ell == n
            ok = True
            for a, s in enumerate(c, 1):
                if s == n and ((n - a) % 2 == 0) != plus:
                    ok = False
                if s == -n and ((n - a) % 2 == 1) != plus:
                    ok = False
            if not ok:
                continue
        out.append(c)
    return out


def _y0(*pairs: Tuple[int, int]) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    for l, e in pairs:
        out[(0, l)] = out.get((0, l), 0) + e
    return out


def _merge(*maps: Dict[Key, int]) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    for m in maps:
        for key, e in m.items():
            out[key] = out.get(key, 0) + e
    return out


def _formula_a(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    n, ell = f.n, f.ell
    pairs = [(s, n - ell - 2 * p + 2 * j + 2 if p <= j else ell + 1 - 2 * p + 2 * j)
             for p, s in enumerate(x, 1)]
    return _product("A", n, pairs)


def _formula_vector(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    return _product(f.scheme, f.n, [(x[0], 0)])


def _formula_jk2(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    """Types D, B and A^(2)_{2n-1}: ``E = 2n-l-3`` (type D) or ``2n-l-1``."""
    n, ell = f.n, f.ell
    E = 2 * n - ell - (3 if f.name == "D" else 1)
    size = ell - 2 * k
    if k < j // 2:
        N = _y0((E - 4 * k + 2 * j, 1), (E + 2 * j, -1))
        pairs = [(x[a - 1], E - 4 * k - 2 * a + 2 * j) for a in range(1, j - 2 * k + 1)]
        pairs += [(x[a - 1], ell - 2 * (a - j + 2 * k) + 1) for a in range(j - 2 * k + 1, size + 1)]
    elif j % 2 == 1 and k == (j - 1) // 2:
        N = _y0((E + 2, 1), (E + 2 * j, -1))
        pairs = [(x[0], E)] + [(x[a - 1], ell - 2 * a + 3) for a in range(2, ell - j + 2)]
    else:
        if j % 2 == 0:
            N = _y0((ell - 4 * k + 2 * j + 1, 1), (ell + 1, -1), (E, 1), (E + 2 * j, -1))
        else:
            N = _merge(_y0((ell - 4 * k + 2 * j + 1, 1), (E + 2 * j, -1)),
                       {(1, ell + 1): -1}, {(1, E): 1})
        pairs = [(x[a - 1], ell - 2 * a - 4 * k + 2 * j + 1) for a in range(1, size + 1)]
    return _merge(N, _product(f.scheme, n, pairs))


def _formula_c(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    n, ell = f.n, f.ell
    pairs = [(s, -2 * j + ell + 1 - 2 * a if a <= ell - j else 3 * ell + 1 - 2 * n - 2 * j - 2 * a)
             for a, s in enumerate(x, 1)]
    return _product(f.scheme, n, pairs)


def _formula_jk1(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    """Types A^(2)_{2n} and D^(2)_{n+1}."""
    n, ell = f.n, f.ell
    if k <= ell - j - 1:
        N = _y0((ell - 2 * j, -1), (ell - 2 * j - 2 * k, 1))
        pairs = [(s, -2 * j + ell + 1 - 2 * a - 2 * k if a <= ell - j - k
                  else 3 * ell + 1 - 2 * n - 2 * j - 2 * a - 2 * k)
                 for a, s in enumerate(x, 1)]
    else:
        N = _y0((ell - 2 * j, -1), (-ell, 1), (ell - 2 * n, -1), (-2 * n + 3 * ell - 2 * j - 2 * k, 1))
        pairs = [(s, 3 * ell + 1 - 2 * n - 2 * j - 2 * a - 2 * k) for a, s in enumerate(x, 1)]
    return _merge(N, _product(f.scheme, n, pairs))


def _formula_a2odd_n(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    n = f.n
    N = _y0((n - 1, -1), (n + 1 - 4 * k, 1))
    pairs = [(s, n + 1 - 4 * k - 2 * a) for a, s in enumerate(x, 1)]
    return _merge(N, _product("A2odd", n, pairs))


def _formula_full_column(f: AffineFamily, x: Entries, j: int, k: int) -> Dict[Key, int]:
    n = f.n
    top = {"Dspin": n + 1, "Bspin": n + 2, "D2spin": n + 2, "A2dag_n": n + 1}[f.name]
    return _product(f.scheme, n, [(s, top - 2 * a) for a, s in enumerate(x, 1)])


_FORMULAS = {
    "A": _formula_a,
    "vector": _formula_vector,
    "D": _formula_jk2,
    "B": _formula_jk2,
    "A2odd": _formula_jk2,
    "C": _formula_c,
    "A2dag": _formula_c,
    "A2even": _formula_jk1,
    "D2": _formula_jk1,
    "A2odd_n": _formula_a2odd_n,
    "Dspin": _formula_full_column,
    "Bspin": _formula_full_column,
    "D2spin": _formula_full_column,
    "A2dag_n": _formula_full_column,
}


class _Probe:
    """Entry access with the convention that a missing entry fails every
    positive condition and satisfies every negated one."""

    def __init__(self, alph: Alphabet, x: Entries):
        self.alph, self.x = alph, x

    def get(self, a: int) -> Optional[int]:
        return self.x[a - 1] if 1 <= a <= len(self.x) else None

    def eq(self, a: int, s: int) -> bool:
        return self.get(a) == s

    def ne(self, a: int, s: int) -> bool:
        return self.get(a) != s

    def le(self, a: int, s: int) -> bool:
        v = self.get(a)
        return v is not None and self.alph.preceq(v, s)

    def ge(self, a: int, s: int) -> bool:
        v = self.get(a)
        return v is not None and self.alph.preceq(s, v)

    def not_le(self, a: int, s: int) -> bool:
        return not self.le(a, s)

    def not_ge(self, a: int, s: int) -> bool:
        return not self.ge(a, s)


def _probe(f: AffineFamily, x: Entries) -> _Probe:
    return _Probe(Alphabet(_ALPHABET_OF_SCHEME[f.scheme], f.n), x)


def _rule_a(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, top = _probe(f, it.entries), it.entries, f.n + 1
    if which == "e0" and P.eq(1, 1) and P.ne(f.ell, top):
        return IndexedTableau(x[1:] + (top,), it.j - 1, 0)
    if which == "f0" and P.ne(1, 1) and P.eq(f.ell, top):
        return IndexedTableau((1,) + x[:-1], it.j + 1, 0)
    return None


def _rule_vector(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    s = it.entries[0]
    if f.type.family == "C1":
        moves = {-1: 1}
    else:
        moves = {-2: 1, -1: 2}
    if which == "f0" and s in moves:
        return IndexedTableau((moves[s],), it.j + 1, 0)
    back = {t: s2 for s2, t in moves.items()}
    if which == "e0" and s in back:
        return IndexedTableau((back[s],), it.j - 1, 0)
    return None


def _rule_jk2(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, j, k, ell = _probe(f, it.entries), it.entries, it.j, it.k, f.ell
    L = ell - 2 * k
    if which == "e0":
        if P.eq(2, 2) and P.not_ge(L - 1, -2):
            return IndexedTableau(x[2:], j, k + 1)
        if P.not_le(2, 2) and P.not_ge(L, -2) and k > 0:
            return IndexedTableau(x + (-2, -1), j - 2, k - 1)
        if P.le(1, 2) and P.not_le(2, 2) and P.not_ge(ell, -2) and k == 0:
            return IndexedTableau(x[1:] + (-(3 - x[0]),), j - 1, 0)
        return None
    if P.not_le(1, 2) and P.not_ge(L - 1, -2) and k > 0:
        return IndexedTableau((1, 2) + x, j, k - 1)
    if P.eq(L - 1, -2) and P.not_le(2, 2):
        return IndexedTableau(x[:L - 2], j + 2, k + 1)
    if P.not_le(1, 2) and P.not_ge(ell - 1, -2) and P.ge(ell, -2) and k == 0:
        return IndexedTableau((3 + x[-1],) + x[:-1], j + 1, 0)
    return None


def _rule_c(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, ell = _probe(f, it.entries), it.entries, f.ell
    if which == "e0" and P.eq(1, 1) and P.ne(ell, -1):
        return IndexedTableau(x[1:] + (-1,), it.j + 1, 0)
    if which == "f0" and P.ne(1, 1) and P.eq(ell, -1):
        return IndexedTableau((1,) + x[:-1], it.j - 1, 0)
    return None


def _rule_jk1(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, j, k = _probe(f, it.entries), it.entries, it.j, it.k
    L = f.ell - k
    if which == "e0":
        if P.eq(1, 1) and P.ne(L, -1):
            return IndexedTableau(x[1:], j, k + 1)
        if P.ne(1, 1) and P.ne(L, -1) and k > 0:
            return IndexedTableau(x + (-1,), j + 1, k - 1)
        return None
    if P.ne(1, 1) and P.eq(L, -1):
        return IndexedTableau(x[:-1], j - 1, k + 1)
    if P.ne(1, 1) and P.ne(L, -1) and k > 0:
        return IndexedTableau((1,) + x, j, k - 1)
    return None


def _flip_pairs(x: Entries, n: int) -> Entries:
    """Drop one letter pair from a column over ``3..n`` of length ``n - 1``.

    Reading ``c = 3..n`` upward, an absent letter opens a bracket and a
    letter present together with its bar closes one.  Every pair or absent
    position up to the first unmatched closer switches state; letters present
    without their bar stay.
    """
    present = set(x)
    depth, flip = 0, []
    for c in range(3, n + 1):
        pair = c in present and -c in present
        if not pair and (c in present or -c in present):
            continue
        flip.append(c)
        depth += -1 if pair else 1
        if depth < 0:
            break
    out = set(present)
    for c in flip:
        if c in present:
            out -= {c, -c}
        else:
            out |= {c, -c}
    alph = Alphabet("C", n)
    return tuple(sorted(out, key=alph.pos))


def _rule_a2odd_n(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, j, k, n = _probe(f, it.entries), it.entries, it.j, it.k, f.n
    L = n - 2 * k
    if which == "e0":
        if P.eq(2, 2) and P.not_ge(L - 1, -2):
            return IndexedTableau(x[2:], j, k + 1)
        if P.not_le(2, 2) and P.not_ge(L, -2) and k > 0:
            return IndexedTableau(x + (-2, -1), j - 1, k - 1)
        if P.le(1, 2) and P.not_le(2, 2) and P.not_ge(n, -2) and k == 0:
            return IndexedTableau(_flip_pairs(x[1:], n) + (-(3 - x[0]),), j, 1)
        return None
    if P.not_le(1, 2) and P.not_ge(L - 1, -2) and k > 0:
        return IndexedTableau((1, 2) + x, j, k - 1)
    if P.eq(L - 1, -2) and P.not_le(2, 2):
        return IndexedTableau(x[:L - 2], j + 1, k + 1)
    if P.not_le(1, 2) and P.not_ge(n - 1, -2) and P.ge(n, -2) and k == 0:
        return IndexedTableau((3 + x[-1],) + _flip_pairs(x[:-1], n), j + 1, 1)
    return None


def _rule_spin(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, j = _probe(f, it.entries), it.entries, it.j
    size = len(x)
    if f.name == "D2spin":
        if which == "e0" and P.eq(1, 1):
            return IndexedTableau(x[1:] + (-1,), j - 1, 0)
        if which == "f0" and P.eq(size, -1):
            return IndexedTableau((1,) + x[:-1], j + 1, 0)
        return None
    if which == "e0" and P.eq(2, 2):
        return IndexedTableau(x[2:] + (-2, -1), j - 1, 0)
    if which == "f0" and P.eq(size - 1, -2):
        return IndexedTableau((1, 2) + x[:-2], j + 1, 0)
    return None


def _rule_a2dag_n(f: AffineFamily, it: IndexedTableau, which: str) -> Optional[IndexedTableau]:
    P, x, j, n = _probe(f, it.entries), it.entries, it.j, f.n
    if which == "e0" and P.eq(1, 1) and P.ne(n, -1):
        return IndexedTableau(x[1:] + (-1,), j - 1, 0)
    if which == "f0" and P.eq(n, -1) and P.ne(1, 1):
        return IndexedTableau((1,) + x[:-1], j + 1, 0)
    return None


_RULES = {
    "A": _rule_a,
    "vector": _rule_vector,
    "D": _rule_jk2,
    "B": _rule_jk2,
    "A2odd": _rule_jk2,
    "C": _rule_c,
    "A2dag": _rule_c,
    "A2even": _rule_jk1,
    "D2": _rule_jk1,
    "A2odd_n": _rule_a2odd_n,
    "Dspin": _rule_spin,
    "Bspin": _rule_spin,
    "D2spin": _rule_spin,
    "A2dag_n": _rule_a2dag_n,
}


def affine_family(t: AffineType | str, ell: int) -> AffineFamily:
    """The closed-form realization of ``B(varpi_l)`` for a classical affine type."""
    if isinstance(t, str):
        t = parse_type(t)
    n, fam = t.n, t.family

    def make(name: str, scheme: str, cycle: int, period: int) -> AffineFamily:
        return AffineFamily(name, t, ell, scheme, cycle, period)

    if not 1 <= ell <= n:
        raise ParameterError(f"l={ell} outside 1..{n}")
    if fam == "A1":
        if 2 * ell > n + 1:
            raise ParameterError(f"type A realization needs 2l <= n+1, got l={ell}, n={n}")
        return make("A", "A", ell, n + 1)
    if fam == "D1":
        if ell == 1:
            return make("vector", "D", 1, 2 * n - 4)
        if ell <= n - 2:
            return make("D", "D", ell, 2 * n - 4)
        return make("Dspin", "Dspin", 1, 4)
    if fam == "B1":
        if ell == 1:
            return make("vector", "B", 1, 2 * n - 2)
        if ell <= n - 1:
            return make("B", "B", ell, 2 * n - 2)
        return make("Bspin", "Bspin", 1, 4)
    if fam == "C1":
        return make("C", "C", ell, -2 * n)
    if fam == "A2dag":
        if ell <= n - 1:
            return make("A2dag", "A2dag", ell, -2 * n)
        return make("A2dag_n", "A2dag", 1, 2)
    if fam == "A2even":
        return make("A2even", "A2even", ell, -2 * n)
    if fam == "A2odd":
        if ell == 1:
            return make("vector", "A2odd", 1, 2 * n - 2)
        if ell <= n - 1:
            return make("A2odd", "A2odd", ell, 2 * n - 2)
        return make("A2odd_n", "A2odd", 1, 4)
    if fam == "D2":
        if ell <= n - 1:
            return make("D2", "D2", ell, -2 * n)
        return make("D2spin", "D2spin", 1, 2)
    raise ParameterError(f"no tableau realization for {t.name}")


def affine_op_on_tableau(t: AffineType | str, ell: int, it: IndexedTableau,
                         op: str) -> Optional[IndexedTableau]:
    """Closed form of ``e~_0`` / ``f~_0`` on ``m_{T;j,k}``; ``None`` when the operator vanishes."""
    return affine_family(t, ell).op(it, op)
