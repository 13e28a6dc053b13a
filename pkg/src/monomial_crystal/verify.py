"""Fixture corpus checks and independent oracles (Weyl dimension, tableau bijection)."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .cartan import CartanData, build_cartan, finite_cartan, parse_type
from .crystal import (ComponentReport, CrystalGraph, MultipleHighest, NotPeriodic,
                      canonical_rep, decompose_I0, detect_z_period, generate_component,
                      generate_quotient, ledger_in_quotient)
from .monomial import (Monomial, detect_parity_flip, format_monomial, lower, parse,
                       raise_op, tau_shift)

__all__ = [
    "Fixture",
    "ListedBlock",
    "CheckResult",
    "Report",
    "fixture_dir",
    "load_fixture",
    "list_fixtures",
    "check_fixture",
    "closure_failures",
    "weyl_dim",
    "bourbaki_label_map",
    "dominant_monomial",
    "oracle_bijection",
]


# ---------------------------------------------------------------- Weyl dimension

def _bourbaki_gram(kind: str, n: int) -> Tuple[List[List[Fraction]], List[Tuple[int, int]]]:
    """Gram matrix of simple roots in Bourbaki numbering (nodes 1..n)."""
    one, half = Fraction(1), Fraction(1, 2)
    length = {i: Fraction(2) for i in range(1, n + 1)}
    bonds: Dict[Tuple[int, int], Fraction] = {}
    if kind == "A":
        bonds = {(i, i + 1): -one for i in range(1, n)}
    elif kind == "B":
        length[n] = one
        bonds = {(i, i + 1): -one for i in range(1, n)}
    elif kind == "C":
        length = {i: one for i in range(1, n + 1)}
        length[n] = Fraction(2)
        bonds = {(i, i + 1): -half for i in range(1, n - 1)}
        bonds[(n - 1, n)] = -one
    elif kind == "D":
        bonds = {(i, i + 1): -one for i in range(1, n - 1)}
        bonds[(n - 2, n)] = -one
    elif kind == "E":
        bonds = {(1, 3): -one, (2, 4): -one, (3, 4): -one}
        bonds.update({(i, i + 1): -one for i in range(4, n)})
    elif kind == "F":
        length[3] = length[4] = one
        bonds = {(1, 2): -one, (2, 3): -one, (3, 4): -half}
    elif kind == "G":
        length[1] = Fraction(2, 3)
        bonds = {(1, 2): -one}
    else:
        raise ValueError(kind)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        gram[i - 1][i - 1] = length[i]
    for (i, j), b in bonds.items():
        gram[i - 1][j - 1] = gram[j - 1][i - 1] = b
    return gram, list(bonds)


def _positive_coroots(kind: str, n: int) -> List[List[int]]:
    """Positive coroots in the basis of simple coroots, by reflection closure."""
    gram, _ = _bourbaki_gram(kind, n)
    # Simple coroots h_i = 2 alpha_i / (alpha_i, alpha_i); their Gram matrix:
    cg = [[4 * gram[i][j] / (gram[i][i] * gram[j][j]) for j in range(n)] for i in range(n)]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = 2 * sum(beta[j] * cg[i][j] for j in range(n)) / cg[i][i]
                assert pair.denominator == 1
                gamma = list(beta)
                gamma[i] -= int(pair)
                gamma_t = tuple(gamma)
                if gamma_t not in seen and (all(x >= 0 for x in gamma) or all(x <= 0 for x in gamma)):
                    seen.add(gamma_t)
                    nxt.append(gamma_t)
        frontier = nxt
    return [list(b) for b in seen if all(x >= 0 for x in b)]


def bourbaki_label_map(kind: str, n: int) -> Dict[int, int]:
    """Map from the node numbering used by the affine tables to Bourbaki labels."""
    if kind == "E" and n == 6:
        return {1: 1, 2: 3, 3: 4, 4: 5, 5: 6, 6: 2}
    if kind == "E" and n == 7:
        return {1: 1, 2: 3, 3: 4, 4: 5, 5: 6, 6: 7, 7: 2}
    if kind == "E" and n == 8:
        return {1: 8, 2: 7, 3: 6, 4: 5, 5: 4, 6: 3, 7: 1, 8: 2}
    if kind == "G":
        return {1: 2, 2: 1}
    return {i: i for i in range(1, n + 1)}


_COROOT_CACHE: Dict[Tuple[str, int], List[List[int]]] = {}


def weyl_dim(kind: str, n: int, weight: Mapping[int, int] | Sequence[int]) -> int:
    """Dimension of the irreducible module of highest weight ``sum weight_i varpi_i``.

    ``weight`` is indexed by nodes ``1..n`` in the numbering of the affine
    tables (a sequence is read as nodes 1..n in order).
    """
    if not isinstance(weight, Mapping):
        weight = {i + 1: w for i, w in enumerate(weight)}
    key = (kind, n)
    if key not in _COROOT_CACHE:
        _COROOT_CACHE[key] = _positive_coroots(kind, n)
    labels = bourbaki_label_map(kind, n)
    lam = [0] * n
    for node, w in weight.items():
        lam[labels[node] - 1] = int(w)
    num, den = 1, 1
    for beta in _COROOT_CACHE[key]:
        num *= sum(c * (l + 1) for c, l in zip(beta, lam))
        den *= sum(beta)
    assert num % den == 0
    return num // den


def dominant_monomial(C: CartanData, weight: Mapping[int, int]) -> Monomial:
    """``prod_i Y_{i, s_i}^{weight_i}``, a highest-weight element of the monomial crystal."""
    return Monomial({(i, C.s(i)): w for i, w in weight.items() if w}, None, C)


# ---------------------------------------------------------------- fixtures

@dataclass
class ListedBlock:
    kind: str  # "component" or "list"
    label: str
    size: int
    monomials: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


@dataclass
class Fixture:
    name: str
    type: str
    seed: str
    period: int
    relation: Optional[Tuple[int, int]] = None
    blocks: List[ListedBlock] = field(default_factory=list)
    remainder: Optional[Tuple[int, int]] = None
    pairings: List[Tuple[str, str]] = field(default_factory=list)
    weights: List[Tuple[str, str]] = field(default_factory=list)
    members: List[Tuple[str, int]] = field(default_factory=list)
    edges: List[Tuple[str, int, str]] = field(default_factory=list)
    restriction: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)

    def block(self, label: str) -> ListedBlock:
        for b in self.blocks:
            if b.label == label:
                return b
        raise KeyError(label)

    @property
    def components(self) -> List[ListedBlock]:
        return [b for b in self.blocks if b.kind == "component"]


def fixture_dir() -> Path:
    env = os.environ.get("CRYSTAL_FIXTURE_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data" / "fixtures"


def list_fixtures(directory: Optional[Path] = None) -> List[str]:
    directory = directory or fixture_dir()
    return sorted(p.stem for p in Path(directory).glob("*.txt"))


class FixtureFormatError(ValueError):
    pass


def load_fixture(name_or_path: str | Path) -> Fixture:
    """Read a fixture by name (from :func:`fixture_dir`) or by path."""
    path = Path(name_or_path)
    if not path.suffix:
        path = fixture_dir() / f"{name_or_path}.txt"
    if not path.exists():
        raise FileNotFoundError(path)
    header: Dict[str, str] = {}
    fx: Optional[Fixture] = None
    current: Optional[ListedBlock] = None

    def ensure() -> Fixture:
        nonlocal fx
        if fx is None:
            try:
                rel = header.get("relation")
                fx = Fixture(name=header.get("name", path.stem), type=header["type"],
                             seed=header["seed"], period=int(header["period"]),
                             relation=tuple(map(int, rel.split(":"))) if rel else None)
            except KeyError as exc:
                raise FixtureFormatError(f"{path}: missing header {exc}") from None
        return fx

    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        text, _, note = raw.partition("#")
        line = text.strip()
        if not line:
            continue
        head, eq, value = line.partition("=")
        if eq and head in ("name", "type", "seed", "period", "relation"):
            if fx is not None:
                raise FixtureFormatError(f"{path}:{lineno}: header after body")
            header[head] = value.strip()
            continue
        words = line.split()
        f = ensure()
        if words[0] in ("component", "list"):
            label = words[2] if len(words) > 2 else f"{words[0]}{len(f.blocks)}"
            current = ListedBlock(words[0], label, int(words[1]))
            f.blocks.append(current)
            continue
        current_kind = words[0]
        if current_kind == "remainder":
            f.remainder = (int(words[1]), int(words[2]))
        elif current_kind == "pairing":
            f.pairings.append((words[1], words[2]))
        elif current_kind == "weights":
            f.weights.append((words[1], words[2]))
        elif current_kind == "member":
            mono, _, d = line[len("member"):].rpartition("delta=")
            f.members.append((mono.strip(), int(d)))
        elif current_kind == "edge":
            f.edges.append((words[1], int(words[2]), words[3]))
        elif current_kind == "restriction":
            f.restriction.append((tuple(int(x) for x in words[1].split(",")), int(words[2])))
        else:
            if current is None:
                raise FixtureFormatError(f"{path}:{lineno}: monomial outside a block")
            current.monomials.append(line)
            current.notes.append(note.strip())
            continue
        current = None
    f = ensure()
    for b in f.blocks:
        if len(b.monomials) != b.size:
            raise FixtureFormatError(f"{path}: block {b.label} has {len(b.monomials)} lines, "
                                     f"declares {b.size}")
    return f


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    fixture: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.results.append(CheckResult(name, bool(passed), detail))

    def lines(self) -> List[str]:
        return [f"{'PASS' if r.passed else 'FAIL'} {self.fixture}: {r.name}"
                + (f" ({r.detail})" if r.detail else "") for r in self.results]


def closure_failures(monomials: Sequence[Monomial], ops: Sequence[int]) -> List[Tuple[str, int, str]]:
    """Triples ``(m, i, image)`` where an operator leaves the listed set."""
    pool = set(monomials)
    bad = []
    for m in monomials:
        for i in ops:
            for img in (raise_op(m, i), lower(m, i)):
                if img is not None and img not in pool:
                    bad.append((format_monomial(m), i, format_monomial(img)))
    return bad


def _iso_image(m: Monomial, target_top: Monomial, ops: Sequence[int]) -> Optional[Monomial]:
    """Image of ``m`` under the isomorphism sending its highest element to ``target_top``."""
    word = []
    cur = m
    while True:
        for i in ops:
            up = raise_op(cur, i)
            if up is not None:
                word.append(i)
                cur = up
                break
        else:
            break
    out: Optional[Monomial] = target_top
    for i in reversed(word):
        out = lower(out, i)
        if out is None:
            return None
    return out


def _highest_in(ms: Sequence[Monomial], ops: Sequence[int]) -> Optional[Monomial]:
    tops = [m for m in ms if all(raise_op(m, i) is None for i in ops)]
    return tops[0] if len(tops) == 1 else None


def check_fixture(f: Fixture | str) -> Report:
    """Compare engine output with a fixture; one result line per assertion."""
    if isinstance(f, str):
        f = load_fixture(f)
    report = Report(f.name)
    C = build_cartan(f.type)
    seed = parse(f.seed, C)
    I0 = C.I0
    try:
        g = generate_quotient(seed, f.period)
    except (NotPeriodic, Exception) as exc:  # report rather than raise
        report.add("quotient", False, str(exc))
        return report
    report.add("quotient", True, f"{len(g)} classes under shift {f.period}")
    try:
        comps = decompose_I0(g)
    except MultipleHighest as exc:
        report.add("decompose", False, str(exc))
        return report
    g0 = seed.min_grade() or 0
    engine_sets = [frozenset(g.nodes[k] for k in c.members) for c in comps]

    if f.relation is not None:
        z = detect_z_period(seed)
        got = None if z is None else (z.shift, z.power)
        report.add("z relation", got == tuple(f.relation),
                   f"tau_{f.relation[0]} = z^{f.relation[1]}; engine {got}")

    parsed: Dict[str, List[Monomial]] = {
        b.label: [parse(t, C) for t in b.monomials] for b in f.blocks}
    matched: set = set()
    for b in f.components:
        ms = parsed[b.label]
        bad = closure_failures(ms, I0)
        report.add(f"closure {b.label}", not bad, f"{len(bad)} escapes" if bad else "")
        hit = None
        for reflect in (0, 1):
            reps = frozenset(canonical_rep(tau_shift(m, reflect), f.period, g0)[0] for m in ms)
            for k, es in enumerate(engine_sets):
                if es == reps:
                    hit = k
                    break
            if hit is not None:
                break
        if hit is not None:
            matched.add(hit)
        report.add(f"component {b.label} ({b.size})", hit is not None,
                   "" if hit is not None else "no engine component equals the listed set")
    if f.remainder is not None:
        rest = [c.size for k, c in enumerate(comps) if k not in matched]
        total, count = f.remainder
        report.add(f"unlisted components total {total}",
                   sum(rest) == total and len(rest) == count,
                   f"engine {rest}")
    elif f.components:
        report.add("every component listed", len(matched) == len(comps),
                   f"engine sizes {[c.size for c in comps]}")

    for a, b in f.pairings:
        A, B = parsed[a], parsed[b]
        top_b = _highest_in(B, I0)
        ok = top_b is not None and all(_iso_image(x, top_b, I0) == y for x, y in zip(A, B))
        report.add(f"pairing {a} -> {b} in order", ok)
    for a, b in f.weights:
        A, B = parsed[a], parsed[b]
        ok = len(A) == len(B) and all(
            all(x.node_total(i) == y.node_total(i) for i in I0) for x, y in zip(A, B))
        report.add(f"weights {a} ~ {b} in order", ok)
    for text, N in f.members:
        m = parse(text, C)
        led = ledger_in_quotient(g, m)
        ok = False
        detail = "not in component"
        if led is not None:
            a = C.marks or ()
            ratios = {led[i] / a[k] for k, i in enumerate(C.nodes)}
            ok = ratios == {Fraction(N)}
            detail = f"ledger {dict(led)}"
        report.add(f"member {text} with delta multiple {N}", ok, detail)
    if f.restriction:
        kind, rank = C.type.finite_kind()
        copies = abs(f.relation[1]) if f.relation else 1
        want_labels: Dict[Tuple[int, ...], int] = {}
        for w, mult in f.restriction:
            want_labels[w] = want_labels.get(w, 0) + mult * copies
        have_labels: Dict[Tuple[int, ...], int] = {}
        for c in comps:
            have_labels[c.label] = have_labels.get(c.label, 0) + 1
        sizes_ok = all(c.size == weyl_dim(kind, rank, c.label) for c in comps)
        report.add("restriction to I_0", want_labels == have_labels and sizes_ok,
                   f"engine highest weights {sorted(have_labels.items())}")
    if f.edges:
        def node_of(ref: str) -> Optional[int]:
            label, _, k = ref.partition(":")
            rep = canonical_rep(parsed[label][int(k) - 1], f.period, g0)[0]
            return g.index.get(rep)
        want = set()
        for src, lab, dst in f.edges:
            want.add((node_of(src), lab, node_of(dst)))
        have = set(g.edges)
        report.add("figure edges", want == have,
                   f"{len(want)} drawn, {len(have)} computed")
    return report


# ---------------------------------------------------------------- tableau oracle

def oracle_bijection(kind: str, n: int, ell: int, h: int, r: int) -> Report:
    """Compare tableau enumeration against a crystal search from the highest monomial."""
    from .tableaux import (Tableau, enumerate_tableaux, highest_monomial,
                           monomial_of_tableau, tableau_crystal_op, tableau_cartan)

    report = Report(f"{kind}{n} l={ell} h={h} r={r}")
    C = tableau_cartan(kind, n)
    tabs = enumerate_tableaux(kind, ell, h, r, n)
    images = {}
    for T in tabs:
        images[T] = monomial_of_tableau(T, kind, n)
    injective = len(set(images.values())) == len(tabs)
    report.add("injective", injective, f"{len(tabs)} tableaux")
    g = generate_component(highest_monomial(kind, n, ell, h, r), C.I0, cartan=C)
    same = set(images.values()) == g.node_set()
    report.add("image equals crystal", same, f"{len(g)} monomials")
    graph_ok = True
    if same and injective:
        back = {m: T for T, m in images.items()}
        for T in tabs:
            for k in C.I0:
                img = tableau_crystal_op(T, k, kind, n)
                want = lower(images[T], k)
                if (img is None) != (want is None) or (img is not None and images[img] != want):
                    graph_ok = False
                    break
            if not graph_ok:
                break
    report.add("labelled graphs agree", graph_ok and same and injective)
    return report
