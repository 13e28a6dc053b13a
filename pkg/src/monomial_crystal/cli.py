"""Command-line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 node bound reached,
3 verification failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cartan import (CartanData, Shift, build_cartan, canonical_shift,
                     fundamental_seed, shift_for_pair)
from .crystal import (DEFAULT_BOUND, BoundExceeded, CrystalGraph, MultipleHighest,
                      NotPeriodic, decompose_I0, export_graph, generate_component,
                      generate_quotient)
from .embed import seed_shift, verify_strict
from .monomial import Monomial, format_monomial, parse
from .verify import check_fixture, fixture_dir, list_fixtures, load_fixture

EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_FAIL = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    type: str
    seed: str
    ops: str = "all"
    period: Optional[int] = None
    bound: int = DEFAULT_BOUND
    format: str = "json"
    out: Optional[str] = None
    allow_odd_cycle: bool = False

    def cartan(self) -> CartanData:
        try:
            return build_cartan(self.type, allow_odd_cycle=self.allow_odd_cycle)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def seed_and_shift(self, C: CartanData) -> Tuple[Monomial, Shift]:
        return resolve_seed(self.seed, C)

    def op_labels(self, C: CartanData) -> Tuple[int, ...]:
        if self.ops == "all":
            return tuple(C.nodes)
        if self.ops == "I0":
            return tuple(C.I0)
        try:
            labels = tuple(sorted({int(x) for x in self.ops.split(",")}))
        except ValueError:
            raise ConfigError(f"bad --ops {self.ops!r}") from None
        unknown = set(labels) - set(C.nodes)
        if unknown:
            raise ConfigError(f"--ops names unknown nodes {sorted(unknown)}")
        return labels


def resolve_seed(text: str, C: CartanData) -> Tuple[Monomial, Shift]:
    """Parse a seed: monomial text, ``fundamental:<l>`` or ``fundamental:<l>:g,g'``."""
    if text.startswith("fundamental:"):
        parts = text.split(":")
        try:
            ell = int(parts[1])
            if len(parts) == 2:
                shift = canonical_shift(C)
            elif len(parts) == 3:
                g, gp = (int(x) for x in parts[2].split(","))
                shift = shift_for_pair(C, ell, g, gp)
            else:
                raise ValueError(text)
            return fundamental_seed(C, ell, shift), shift
        except ValueError as exc:
            raise ConfigError(f"bad seed {text!r}: {exc}") from None
    try:
        m = parse(text, C)
    except (SyntaxError, ValueError) as exc:
        raise ConfigError(f"bad seed {text!r}: {exc}") from None
    if not m.u:
        raise ConfigError("empty seed")
    unknown = {i for i, _ in m.u} - set(C.nodes)
    if unknown:
        raise ConfigError(f"seed uses unknown nodes {sorted(unknown)}")
    if C.parity is None:
        return m, None
    try:
        return m, seed_shift(m)
    except ValueError:
        return m, None


def _generate(cfg: Config) -> CrystalGraph:
    C = cfg.cartan()
    seed, _ = cfg.seed_and_shift(C)
    labels = cfg.op_labels(C)
    if cfg.period is not None:
        return generate_quotient(seed, cfg.period, bound=cfg.bound, ops=labels)
    return generate_component(seed, labels, bound=cfg.bound)


def _write(data: bytes, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def cmd_generate(cfg: Config) -> int:
    """Generate the graph and write it in the requested format."""
    try:
        g = _generate(cfg)
        code = EXIT_OK
    except BoundExceeded as exc:
        g, code = exc.graph, EXIT_BOUND
        print(f"bound of {exc.bound} nodes reached; output is partial", file=sys.stderr)
    except NotPeriodic as exc:
        raise ConfigError(str(exc)) from None
    _write(export_graph(g, cfg.format, components=[] if code else None), cfg.out)
    return code


def cmd_decompose(cfg: Config) -> int:
    """Print the ``I_0``-components: size, highest weight, highest monomial."""
    try:
        g = _generate(cfg)
    except BoundExceeded as exc:
        print(f"bound of {exc.bound} nodes reached", file=sys.stderr)
        return EXIT_BOUND
    except NotPeriodic as exc:
        raise ConfigError(str(exc)) from None
    try:
        comps = decompose_I0(g)
    except MultipleHighest as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    lines = [f"{len(g)} nodes, {len(comps)} components"]
    for c in sorted(comps, key=lambda c: (-c.size, format_monomial(c.highest))):
        lines.append(f"{c.size}\t{','.join(map(str, c.label))}\t{format_monomial(c.highest)}")
    _write(("\n".join(lines) + "\n").encode(), cfg.out)
    return EXIT_OK


def cmd_verify(name: str) -> int:
    """Check one fixture, or every fixture for ``"all"``."""
    if name == "all":
        names = list_fixtures()
        if not names:
            print(f"no fixtures in {fixture_dir()}", file=sys.stderr)
            return EXIT_USAGE
    else:
        names = [name]
    ok = True
    for nm in names:
        try:
            fx = load_fixture(nm)
        except (FileNotFoundError, ValueError) as exc:
            print(f"cannot load fixture {nm}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        report = check_fixture(fx)
        for line in report.lines():
            print(line)
        ok = ok and report.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_embed_check(type_: str, seed: str, depth: int, allow_odd_cycle: bool = False) -> int:
    """Verify the strict embedding on the ball of radius ``depth``."""
    cfg = Config(type=type_, seed=seed, allow_odd_cycle=allow_odd_cycle)
    C = cfg.cartan()
    m, shift = cfg.seed_and_shift(C)
    if shift is None:
        raise ConfigError(f"no shift fits seed {seed!r} on {type_}")
    try:
        report = verify_strict(m, shift, depth)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(f"{report.nodes} nodes, {report.checks} node/label checks, "
          f"{len(report.violations)} violations, injective={report.injective}")
    for v in report.violations:
        print(f"VIOLATION {v}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _graph_args(p: argparse.ArgumentParser, period_required: bool = False) -> None:
    p.add_argument("--type", required=True, help='affine type such as "D1~5" or "A2~4"')
    p.add_argument("--seed", required=True,
                   help='monomial text "2_0 0_2^-1", or "fundamental:<l>[:g,g\']"')
    p.add_argument("--ops", default="all", help='"all", "I0" or a comma list of nodes')
    p.add_argument("--period", type=int, required=period_required,
                   help="quotient by the grade shift of this size")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="node limit")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--out", help="output path (default standard output)")
    p.add_argument("--allow-odd-cycle", action="store_true",
                   help="accept A1~n with n even (no parity coloring)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monomial-crystal",
                                     description="Monomial crystals of level-zero fundamental modules")
    sub = parser.add_subparsers(dest="command", required=True)
    _graph_args(sub.add_parser("generate", help="generate a crystal graph"))
    _graph_args(sub.add_parser("quotient", help="generate the graph modulo a grade shift"),
                period_required=True)
    _graph_args(sub.add_parser("export", help="write a graph file (alias of generate)"))
    _graph_args(sub.add_parser("decompose", help="list the I_0-components"))
    v = sub.add_parser("verify", help="check fixtures against the engine")
    v.add_argument("--fixture", default="all", help='fixture name or "all"')
    e = sub.add_parser("embed-check", help="verify the strict embedding on a ball")
    e.add_argument("--type", required=True)
    e.add_argument("--seed", required=True, help='"fundamental:<l>" or monomial text')
    e.add_argument("--depth", type=int, default=4)
    e.add_argument("--allow-odd-cycle", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args.fixture)
        if args.command == "embed-check":
            if args.depth < 0:
                raise ConfigError("--depth must be non-negative")
            return cmd_embed_check(args.type, args.seed, args.depth, args.allow_odd_cycle)
        if args.bound <= 0:
            raise ConfigError("--bound must be positive")
        if args.period is not None and args.period <= 0:
            raise ConfigError("--period must be positive")
        cfg = Config(type=args.type, seed=args.seed, ops=args.ops, period=args.period,
                     bound=args.bound, format=args.format, out=args.out,
                     allow_odd_cycle=args.allow_odd_cycle)
        if args.command == "decompose":
            return cmd_decompose(cfg)
        return cmd_generate(cfg)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
