"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 I/O error, 4 parse or guard error, 5 recursion fuel exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .ccs_semantics import SemanticsError, denote
from .ccs_syntax import CcsSyntaxError, parse_ccs, show
from .cube_category import CATEGORIES, DEFAULT_BOUND, BoundExceeded, DimensionError, enumerate_hom, is_shell_complete
from .cube_category import conj0_experiment
from .cubical_sets import MAX_DIM, ComplexError
from .label_objects import Alphabet, AlphabetError
from .serialization import dumps, loads, to_dot
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_PARSE, EXIT_FUEL = 0, 1, 2, 3, 4, 5
CONFIG_ENV = "HDACCS_CONFIG"


class UsageError(Exception):
    pass


@dataclass
class Config:
    alphabet: str | None = None
    dim: int = 3
    bound: int = DEFAULT_BOUND
    fuel: int = 8
    format: str = "json"

    def validate(self) -> None:
        if self.dim > self.bound or self.dim > MAX_DIM or self.dim < 1:
            raise UsageError(f"dimension {self.dim} must lie in [1, {min(self.bound, MAX_DIM)}]")
        if self.fuel < 1:
            raise UsageError("fuel must be at least 1")
        if self.format not in ("json", "dot"):
            raise UsageError(f"unknown format {self.format!r}")


def load_config(path: str | None) -> Config:
    cfg = Config()
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        data = json.loads(Path(path).read_text())
        for key, value in data.items():
            if not hasattr(cfg, key):
                raise UsageError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    return cfg


def read_alphabet(path: str) -> Alphabet:
    """One channel name per line (co-names and tau are added)."""
    names = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    return Alphabet.from_names(names)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _counts(K) -> str:
    return "/".join(map(str, K.counts()))


def cmd_parse(args, cfg: Config) -> int:
    t = parse_ccs(Path(args.term).read_text())
    print(show(t))
    return EXIT_OK


def cmd_semantics(args, cfg: Config) -> int:
    t = parse_ccs(Path(args.term).read_text())
    alphabet = read_alphabet(cfg.alphabet) if cfg.alphabet else None
    d = denote(t, args.model, cfg.dim, cfg.fuel, alphabet)
    print(f"counts {_counts(d.complex)}")
    if args.output:
        Path(args.output).write_text(dumps(d.complex))
    if args.dot:
        Path(args.dot).write_text(to_dot(d.complex))
    if not d.converged:
        print(f"recursion did not stabilize within fuel {cfg.fuel}", file=sys.stderr)
        return EXIT_FUEL
    return EXIT_OK


def cmd_export(args, cfg: Config) -> int:
    K = loads(Path(args.input).read_text())
    _write(to_dot(K) if cfg.format == "dot" else dumps(K), args.output)
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        for check in run_suite(name):
            print(check.line())
            failed |= not check.ok
    return EXIT_FAIL if failed else EXIT_OK


def cmd_enum_hom(args, cfg: Config) -> int:
    maps = enumerate_hom(args.cat, args.m, args.n, cfg.bound)
    for f in maps:
        print(" ".join(f.rows()))
    print(f"count {len(maps)}")
    return EXIT_OK


def cmd_shell_check(args, cfg: Config) -> int:
    r = is_shell_complete(args.cat, args.p, args.q, cfg.bound)
    print(f"{args.cat} ({args.p},{args.q}): {'complete' if r.complete else 'incomplete'}, {r.shells} shells")
    for f in r.witnesses[: args.limit]:
        print("witness " + " ".join(f.rows()))
    if len(r.witnesses) > args.limit:
        print(f"... {len(r.witnesses) - args.limit} more")
    return EXIT_OK


def cmd_conj0(args, cfg: Config) -> int:
    r = conj0_experiment(args.n, args.length)
    print(
        f"n={r.n} length<={r.max_length}: monoid {r.closure_size}, reached {r.maps_reached}, "
        f"classes {r.relation_classes}, sound {r.classes_sound}, agree {r.agree}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hdaccs", description=__doc__.splitlines()[0])
    p.add_argument("--config", help=f"JSON config file (default ${CONFIG_ENV})")
    p.add_argument("--dim", type=int, help="truncation dimension")
    p.add_argument("--fuel", type=int, help="recursion unfolding budget")
    p.add_argument("--format", choices=("json", "dot"))
    p.add_argument("--alphabet", help="file with one channel name per line")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="parse a term file and print it back")
    s.add_argument("term")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("semantics", help="denote a term file")
    s.add_argument("term")
    s.add_argument("--model", choices=("box", "sym", "hat"), default="box")
    s.add_argument("-o", "--output", help="write the complex as JSON")
    s.add_argument("--dot", help="write the 1-skeleton as DOT")
    s.set_defaults(fn=cmd_semantics)

    s = sub.add_parser("export", help="convert a JSON complex to JSON or DOT")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_export)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=(*SUITES, "all"))
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("enum-hom", help="list a hom-set")
    s.add_argument("cat", choices=CATEGORIES)
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(fn=cmd_enum_hom)

    s = sub.add_parser("shell-check", help="test shell-completeness of a cube category")
    s.add_argument("cat", choices=CATEGORIES)
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--limit", type=int, default=10)
    s.set_defaults(fn=cmd_shell_check)

    s = sub.add_parser("conj0", help="compare generator relations with the monoid")
    s.add_argument("n", type=int, choices=(2, 3))
    s.add_argument("--length", type=int, default=6)
    s.set_defaults(fn=cmd_conj0)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = load_config(args.config)
        for key in ("dim", "fuel", "format", "alphabet"):
            if getattr(args, key) is not None:
                setattr(cfg, key, getattr(args, key))
        cfg.validate()
        return args.fn(args, cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CcsSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except (json.JSONDecodeError, KeyError, ComplexError, AlphabetError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_IO
    except (BoundExceeded, DimensionError, SemanticsError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
