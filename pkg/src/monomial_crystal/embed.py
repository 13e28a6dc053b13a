"""Strict embedding of a monomial crystal into a tensor product of elementary crystals.

A monomial ``m'`` in the component of ``m`` factors as
``m' = m * prod A_{i,2k+phi(i)+1}^{z_i(k)}``.  The word ``Phi(m')`` lists, from
the highest layer down, the factors ``b_{i_1}(z_{i_1}(k)) ... b_{i_n}(z_{i_n}(k))
t_{lambda(k)}`` with ``t_alpha`` between layers 0 and -1, where the nodes are
read in the order of the shift and ``lambda_i(k) = u_{i,2k+phi(i)}(m)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .cartan import CartanData, Shift, canonical_shift
from .monomial import (Monomial, _a_map, detect_parity_flip, eps_i, lower, phi_i,
                       raise_op)

__all__ = [
    "NEG_INF",
    "WindowTooSmall",
    "ElemFactor",
    "TensorWord",
    "tensor_eps_phi",
    "tensor_op",
    "solve_z",
    "phi_embed",
    "auto_window",
    "seed_shift",
    "StrictReport",
    "verify_strict",
]

NEG_INF = float("-inf")

Key = Tuple[int, int]


class WindowTooSmall(ValueError):
    """Some ``z_i(k)`` or seed exponent falls outside the requested layer window."""


@dataclass(frozen=True)
class ElemFactor:
    """``b_i(l)`` (kind ``"B"``), ``t_lambda`` (kind ``"T"``) or ``c`` (kind ``"C"``).

    A ``t_lambda`` stores only the pairings ``<lambda, alpha_i^vee>``.
    """

    kind: str
    node: int = 0
    l: int = 0
    pairing: Tuple[Tuple[int, int], ...] = ()
    label: str = ""

    @classmethod
    def Bi(cls, i: int, l: int) -> "ElemFactor":
        return cls("B", node=i, l=l)

    @classmethod
    def Tlambda(cls, pairing: Dict[int, int], label: str = "") -> "ElemFactor":
        return cls("T", pairing=tuple(sorted((i, v) for i, v in pairing.items() if v)),
                   label=label)

    @classmethod
    def Cunit(cls) -> "ElemFactor":
        return cls("C")

    def weight(self, i: int, C: CartanData) -> int:
        """``<wt, alpha_i^vee>``."""
        if self.kind == "B":
            return self.l * C.c(i, self.node)
        if self.kind == "T":
            return dict(self.pairing).get(i, 0)
        return 0

    def eps(self, i: int) -> float:
        if self.kind == "B" and self.node == i:
            return -self.l
        return 0 if self.kind == "C" else NEG_INF

    def phi(self, i: int) -> float:
        if self.kind == "B" and self.node == i:
            return self.l
        return 0 if self.kind == "C" else NEG_INF

    def moved(self, step: int) -> "ElemFactor":
        return ElemFactor("B", node=self.node, l=self.l + step)

    def __str__(self) -> str:
        if self.kind == "B":
            return f"b{self.node}({self.l})"
        if self.kind == "T":
            return f"t[{self.label}]" if self.label else "t"
        return "c"


@dataclass(frozen=True)
class TensorWord:
    """A finite truncation of ``K_m``, leftmost factor first."""

    factors: Tuple[ElemFactor, ...]
    cartan: CartanData = field(compare=False, hash=False, repr=False)

    def weight(self, i: int) -> int:
        return sum(f.weight(i, self.cartan) for f in self.factors)

    def z_values(self) -> Tuple[Tuple[int, int], ...]:
        """``(node, l)`` of every ``b_i`` factor, in word order."""
        return tuple((f.node, f.l) for f in self.factors if f.kind == "B")

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


def _eps_candidates(w: TensorWord, i: int) -> List[Tuple[float, int]]:
    out, left = [], 0
    for k, f in enumerate(w.factors):
        e = f.eps(i)
        if e != NEG_INF:
            out.append((e - left, k))
        left += f.weight(i, w.cartan)
    return out


def _phi_candidates(w: TensorWord, i: int) -> List[Tuple[float, int]]:
    out, right = [], 0
    for k in range(len(w.factors) - 1, -1, -1):
        f = w.factors[k]
        p = f.phi(i)
        if p != NEG_INF:
            out.append((p + right, k))
        right += f.weight(i, w.cartan)
    return out


def tensor_eps_phi(w: TensorWord, i: int) -> Tuple[float, float]:
    """``(eps_i, phi_i)`` of the word; ``NEG_INF`` when no factor is ``i``-active."""
    ce, cp = _eps_candidates(w, i), _phi_candidates(w, i)
    eps = max((v for v, _ in ce), default=NEG_INF)
    phi = max((v for v, _ in cp), default=NEG_INF)
    return eps, phi


def tensor_op(w: TensorWord, i: int, direction: str) -> Optional[TensorWord]:
    """``e~_i`` (``"raise"``) or ``f~_i`` (``"lower"``) by the tensor rule.

    ``e~`` acts on the leftmost factor attaining ``eps_i``; ``f~`` on the
    rightmost factor attaining ``phi_i``.  Inert factors are skipped.
    """
    if direction == "raise":
        cands = _eps_candidates(w, i)
        best = max((v for v, _ in cands), default=NEG_INF)
        if best == NEG_INF or best <= 0:
            return None
        k = min(k for v, k in cands if v == best)
        step = 1
    elif direction == "lower":
        cands = _phi_candidates(w, i)
        best = max((v for v, _ in cands), default=NEG_INF)
        if best == NEG_INF or best <= 0:
            return None
        k = max(k for v, k in cands if v == best)
        step = -1
    else:
        raise ValueError("direction is 'raise' or 'lower'")
    f = w.factors[k]
    if f.kind != "B":
        return None
    factors = w.factors[:k] + (f.moved(step),) + w.factors[k + 1:]
    return TensorWord(factors, w.cartan)


def _layer(g: int, phi_i: int) -> int:
    if (g - phi_i) % 2:
        raise ValueError(f"grade {g} has the wrong parity for the shift")
    return (g - phi_i) // 2


def solve_z(m_prime: Monomial, seed: Monomial, shift: Shift,
            window: Tuple[int, int]) -> Dict[Key, int]:
    """Exponents ``z_i(k)`` with ``m' = seed * prod A_{i,2k+phi(i)+1}^{z_i(k)}``.

    Triangular solve: the lowest grade of the remaining quotient fixes the
    ``A`` one step above it.  Layers must stay inside ``window = (lo, hi)``.
    """
    C = seed.cartan or m_prime.cartan
    phi = shift.as_dict()
    lo, hi = window
    rest: Dict[Key, int] = dict(m_prime.u)
    for key, e in seed.u.items():
        rest[key] = rest.get(key, 0) - e
    rest = {k: e for k, e in rest.items() if e}
    z: Dict[Key, int] = {}
    while rest:
        g = min(l for _, l in rest)
        for (i, l), e in sorted(rest.items()):
            if l != g:
                continue
            # A_{i,g+1} with g + 1 = 2k + phi(i) + 1
            k = _layer(g, phi[i])
            if not lo <= k <= hi:
                raise WindowTooSmall(f"z_{i}({k}) outside window {window}")
            z[(i, k)] = z.get((i, k), 0) + e
            for key, a in _a_map(C, i, g + 1).items():
                v = rest.get(key, 0) - e * a
                if v:
                    rest[key] = v
                else:
                    rest.pop(key, None)
            if (i, g) in rest:
                raise ValueError("triangular solve did not clear the lowest grade")
    return {k: e for k, e in z.items() if e}


def seed_shift(seed: Monomial) -> Shift:
    """The canonical shift, or its reflection when ``seed`` has the reflected parity."""
    C = seed.cartan
    flip = detect_parity_flip(seed, C)
    if flip is None:
        raise ValueError("seed mixes both parities, so no shift fits it")
    if not flip:
        return canonical_shift(C)
    return canonical_shift(C, tuple(1 - p for p in C.parity))


def auto_window(monomials, shift: Shift, pad: int = 1) -> Tuple[int, int]:
    """Smallest layer window covering every grade of ``monomials``, padded."""
    phi = shift.as_dict()
    layers = [(l - phi[i]) // 2 for m in monomials for (i, l) in m.u]
    if not layers:
        return (-pad, pad)
    return (min(layers) - pad, max(layers) + pad)


def phi_embed(m_prime: Monomial, seed: Monomial, shift: Shift,
              window: Optional[Tuple[int, int]] = None) -> TensorWord:
    """The word ``Phi(m')`` restricted to layers ``window = (lo, hi)``."""
    C = seed.cartan or m_prime.cartan
    if C is None:
        raise ValueError("no Cartan data")
    if window is None:
        window = auto_window([m_prime, seed], shift)
    lo, hi = window
    phi = shift.as_dict()
    lam: Dict[int, Dict[int, int]] = {}
    for (i, g), e in seed.u.items():
        k = _layer(g, phi[i])
        if not lo <= k <= hi:
            raise WindowTooSmall(f"seed exponent at layer {k} outside window {window}")
        lam.setdefault(k, {})[i] = e
    z = solve_z(m_prime, seed, shift, window)
    factors: List[ElemFactor] = [ElemFactor.Cunit()]
    for k in range(hi, lo - 1, -1):
        for i in shift.order:
            factors.append(ElemFactor.Bi(i, z.get((i, k), 0)))
        factors.append(ElemFactor.Tlambda(lam.get(k, {}), f"lambda({k})"))
        if k == 0:
            # alpha pairs to zero with every coroot
            factors.append(ElemFactor.Tlambda({}, "alpha"))
    factors.append(ElemFactor.Cunit())
    return TensorWord(tuple(factors), C)


@dataclass
class StrictReport:
    nodes: int
    checks: int
    violations: List[str] = field(default_factory=list)
    injective: bool = True

    @property
    def ok(self) -> bool:
        return self.injective and not self.violations


def _ball(seed: Monomial, depth: int) -> List[Monomial]:
    seen = {seed: 0}
    order = [seed]
    queue = deque([seed])
    C = seed.cartan
    while queue:
        m = queue.popleft()
        if seen[m] >= depth:
            continue
        for i in C.nodes:
            for nxt in (lower(m, i), raise_op(m, i)):
                if nxt is not None and nxt not in seen:
                    seen[nxt] = seen[m] + 1
                    order.append(nxt)
                    queue.append(nxt)
    return order


Embedding = Callable[[Monomial, Monomial, Shift, Tuple[int, int]], TensorWord]


def verify_strict(seed: Monomial, shift: Shift, depth: int,
                  embed: Embedding = phi_embed) -> StrictReport:
    """Check that ``embed`` is a strict embedding on the ball of radius ``depth``.

    For every node and every ``i``: tensor ``eps_i``/``phi_i`` equal the
    monomial values, and ``e~_i``, ``f~_i`` commute with the embedding
    (a vanishing operator must vanish on both sides).
    """
    C = seed.cartan
    ball = _ball(seed, depth)
    report = StrictReport(nodes=len(ball), checks=0)
    if depth == 0:
        return report
    around = list(ball)
    for m in ball:
        for i in C.nodes:
            around.extend(x for x in (lower(m, i), raise_op(m, i)) if x is not None)
    window = auto_window(around + [seed], shift)
    words: Dict[TensorWord, Monomial] = {}
    for m in ball:
        w = embed(m, seed, shift, window)
        if w in words and words[w] != m:
            report.injective = False
            report.violations.append(f"{m} and {words[w]} share an image")
        words[w] = m
        for i in C.nodes:
            report.checks += 1
            te, tp = tensor_eps_phi(w, i)
            if (te, tp) != (eps_i(m, i), phi_i(m, i)):
                report.violations.append(
                    f"{m}: node {i} tensor (eps, phi) = ({te}, {tp}), "
                    f"monomial ({eps_i(m, i)}, {phi_i(m, i)})")
            for direction, op in (("raise", raise_op), ("lower", lower)):
                image = op(m, i)
                lhs = tensor_op(w, i, direction)
                rhs = None if image is None else embed(image, seed, shift, window)
                if lhs != rhs:
                    report.violations.append(f"{m}: {direction} {i} does not commute")
    return report
