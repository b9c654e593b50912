"""Command line entry point: ``python -m sclcert <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import abelian, certificates, homology, quasimorphism, rewriting
from .surface import BUILTIN_NAMES, ConfigError, builtin_config
from .words import WordError, parse_word


def _genus_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(2, int(lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 2..G, got {text!r}") from None


def cmd_bounds(args) -> int:
    for row in certificates.bounds(args.genus, args.group):
        print(row)
    if args.genus == 2:
        chain = certificates.genus2_chain()
        print(chain["text"])
        if chain["coincidence"]:
            print("note: lower(t_s) = upper(t_c) = 1/10")
    return 0


def cmd_derive(args) -> int:
    result = quasimorphism.run_pipeline(args.pipeline, args.genus, args.h)
    print(result)
    if args.emit:
        certificates.emit_certificate(result, args.emit)
    return 0


def cmd_verify(args) -> int:
    try:
        d = rewriting.parse_script(Path(args.script).read_text(encoding="utf-8"))
        v = rewriting.check_derivation(d)
    except rewriting.DerivationError as exc:
        print(f"verification failed at {exc}", file=sys.stderr)
        return 1
    except rewriting.InternalConsistencyError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    print(f"verified: {v.lhs} = {v.rhs}")
    print(f"steps: {len(v.trace)}  oracle: {v.oracle}  abelianization: {v.abelianization}")
    return 0


def cmd_oracle(args) -> int:
    cfg = builtin_config(args.config, args.genus, args.h)
    lhs, rhs = parse_word(args.lhs, cfg), parse_word(args.rhs, cfg)
    verdict = homology.check_identity(lhs, rhs, cfg)
    print(verdict)
    if args.show_matrices:
        print("lhs:\n" + homology.format_matrix(homology.word_image(lhs, cfg)))
        print("rhs:\n" + homology.format_matrix(homology.word_image(rhs, cfg)))
    return 1 if verdict == homology.FAIL else 0


def cmd_table(args) -> int:
    sys.stdout.write(certificates.format_table(certificates.table_rows(args.genus), args.format))
    return 0


def cmd_strictness(args) -> int:
    lower = Fraction(args.lower) if args.lower else certificates._DEFAULT
    cert = certificates.strictness_check(args.genus, lower=lower)
    print(f"equality implies scl(t_s) <= {certificates.fmt(cert.intermediate)}")
    print(f"lower bound scl(t_s) >= {certificates.fmt(cert.lower)}")
    if cert.distinct:
        print(f"infeasible: {cert.result.contradiction}; scl(t_c) != scl(t_s)")
    else:
        print("feasible: no contradiction")
    if args.emit:
        certificates.emit_certificate(cert, args.emit)
    return 0


def cmd_abelian(args) -> int:
    spec = abelian.GroupSpec.parse(args.group, args.genus)
    cfg = builtin_config(args.config, args.genus)
    w = parse_word(args.word, cfg)
    print(f"{abelian.ab_image(w, spec, cfg)} mod {spec.order}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sclcert", description="Certified scl bounds for Dehn twists.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="bound rows for M_g or H_g")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--group", choices=["m", "h"], default="m")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("derive", help="run a quasimorphism pipeline")
    s.add_argument("pipeline", choices=quasimorphism.PIPELINES)
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--h", type=int, default=1, help="genus of the separating curve (thm1-sep)")
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("verify", help="check a derivation script")
    s.add_argument("script")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="compare two words in Sp(2g, Z)")
    s.add_argument("--config", choices=BUILTIN_NAMES, required=True)
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--h", type=int, default=1)
    s.add_argument("--lhs", required=True)
    s.add_argument("--rhs", required=True)
    s.add_argument("--show-matrices", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("table", help="lower/upper bound table over a genus range")
    s.add_argument("--genus", type=_genus_range, required=True, help="2..G")
    s.add_argument("--format", choices=["csv", "md", "json"], default="csv")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("strictness", help="refute scl(t_c) = scl(t_s) in genus 2")
    s.add_argument("--genus", type=int, default=2)
    s.add_argument("--lower", help="override the lower bound on scl(t_s), e.g. 1/12")
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(func=cmd_strictness)

    s = sub.add_parser("abelian", help="image of a word in the abelianization")
    s.add_argument("--group", choices=["m", "h"], required=True)
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--config", choices=BUILTIN_NAMES, default="chain5")
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_abelian)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, WordError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
