"""Command-line front end.

Exit codes: 0 affirmative or successful, 1 negative verdict, 2 error or
obstruction.  Reports are key: value lines.
"""

from __future__ import annotations

import argparse
import hashlib
import random
import sys
from typing import TextIO

from .congruence import (MembershipError, ObstructionUnresolved, factor_elementary, factor_gamma2,
                         factor_gammad, is_in_gamma)
from .linalg import (DimensionError, IntegerMatrix, MatrixFormatError, NotUnimodularError, SymbolError,
                     format_matrix, is_in_level, is_ursp, parse_matrix)
from .sampling import random_normal_product
from .surface import (EtaUnresolvable, RELATIONS, alpha_variant_report, eta, eta_homology,
                      lift_ursp_to_mcg, matrix_identity_corpus, membership, psi, selected_alpha_variant,
                      verify_relation)
from .symplectic import factor_Sg, factor_ursp_level, is_in_Sg, verify_factorization
from .words import WordSyntaxError, ambient_of, evaluate_word, format_word, parse_word

__all__ = ["main", "parse_matrix", "parse_word"]


class UsageError(ValueError):
    pass


def digest(m: IntegerMatrix) -> str:
    return hashlib.sha256(format_matrix(m).encode()).hexdigest()[:16]


class Report:
    def __init__(self, out: TextIO):
        self.out = out

    def __call__(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = str(value).lower()
        self.out.write(f"{key}: {value}\n")


def _read_payload(args, stdin: TextIO) -> str:
    if args.file:
        with open(args.file) as fh:
            return fh.read()
    return stdin.read()


def _parse_any(text: str):
    """(alphabet, word); the matrix alphabet wins unless a symbol is foreign to it."""
    try:
        return "matrix", parse_word(text, "matrix")
    except WordSyntaxError as exc:
        if "unknown symbol" not in str(exc):
            raise
        return "mcg", parse_word(text, "mcg")


def _looks_like_matrix(text: str) -> bool:
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    return first.strip().lstrip("-").isdigit()


def _genus(args, m: IntegerMatrix | None, group: str) -> int:
    if m is None:
        if args.g is None:
            raise UsageError("--g is required for word payloads")
        return args.g
    if group == "gamma":
        g = m.n
    else:
        if m.n % 2:
            raise DimensionError(f"{group} payload needs even dimension, got {m.n}")
        g = m.n // 2
    if args.g is not None and args.g != g:
        raise UsageError(f"--g {args.g} does not match the payload (g = {g})")
    return g


def _payload_matrix(args, stdin, group: str) -> tuple[IntegerMatrix, int]:
    text = _read_payload(args, stdin)
    if _looks_like_matrix(text):
        m = parse_matrix(text)
        return m, _genus(args, m, group)
    w = parse_word(text.strip(), "matrix")
    g = _genus(args, None, group)
    amb = ambient_of(w) or ("GL" if group == "gamma" else "urSp")
    return evaluate_word(w, g, amb), g


def cmd_check(args, stdin, rep: Report) -> int:
    d = args.level
    text = _read_payload(args, stdin)
    rep("command", "check")
    if not _looks_like_matrix(text):
        alphabet, w = _parse_any(text.strip())
        if alphabet == "mcg":
            g = _genus(args, None, args.group)
            v = membership(w, g, d)
            rep("alphabet", "mcg")
            rep("level", d)
            rep("torelli_or_level", v.torelli_or_level)
            rep("in_Sg_image", v.in_Sg_image)
            rep("verdict", v.torelli_or_level)
            return 0 if v.torelli_or_level else 1
    args.file = None
    m, g = _payload_matrix(args, _Text(text), args.group)
    rep("group", args.group)
    rep("g", g)
    rep("level", d)
    if args.group == "gamma":
        ok = is_in_gamma(m, d)
    elif args.group == "sg":
        ok = is_in_Sg(m, d)
    else:
        ok = is_ursp(m) and (d == 1 or is_in_level(m, d))
    rep("verdict", ok)
    return 0 if ok else 1


class _Text:
    def __init__(self, text: str):
        self.text = text

    def read(self) -> str:
        return self.text


def cmd_factor(args, stdin, rep: Report) -> int:
    m, g = _payload_matrix(args, stdin, args.group)
    d = args.d
    if args.group in ("gamma", "ursp") and d >= 3 and g < 3:
        raise UsageError("factor with d >= 3 needs g >= 3")
    if args.group == "gamma":
        w = factor_elementary(m) if d == 1 else factor_gamma2(m) if d == 2 else factor_gammad(m, d)
    elif args.group == "sg":
        w = factor_Sg(m, d)
    else:
        if d < 2:
            raise UsageError("ursp factorization needs --d >= 2")
        w = factor_ursp_level(m, d)
    if not verify_factorization(w, m):
        raise AssertionError("refusing to emit an unverified factorization")
    rep("command", "factor")
    rep("group", args.group)
    rep("g", g)
    rep("d", d)
    rep("letters", len(w))
    rep("word", str(w))
    rep("verified", True)
    rep("digest", digest(m))
    return 0


def cmd_eval(args, stdin, rep: Report) -> int:
    text = _read_payload(args, stdin).strip()
    if args.g is None:
        raise UsageError("--g is required")
    rep("command", "eval")
    alphabet, w = _parse_any(text)
    rep("alphabet", alphabet)
    if alphabet == "matrix":
        m = evaluate_word(w, args.g)
        rep("ambient", ambient_of(w) or "GL")
    else:
        if args.rep == "eta":
            a = eta(w, args.g)
            rep("eta", str(a))
            m = eta_homology(w, args.g)
        else:
            m = psi(w, args.g)
    rep("word", format_word(w))
    rep("digest", digest(m))
    rep("matrix", "")
    rep.out.write(format_matrix(m) + "\n")
    return 0


def cmd_lift(args, stdin, rep: Report) -> int:
    m, g = _payload_matrix(args, stdin, "ursp")
    w = lift_ursp_to_mcg(m)
    ok = psi(w, g) == m
    rep("command", "lift")
    rep("g", g)
    rep("word", format_word(w))
    rep("verified", ok)
    rep("digest", digest(m))
    return 0 if ok else 2


def cmd_verify_relations(args, stdin, rep: Report) -> int:
    g = args.g or 3
    rep("command", "verify-relations")
    rep("g", g)
    results = []
    for name, (lhs, rhs) in RELATIONS.items():
        for level in ("psi", "eta"):
            ok = verify_relation(lhs, rhs, g, level)
            results.append(ok)
            rep(f"{name}.{level}", "pass" if ok else "fail")
    variants = alpha_variant_report(g)
    for v, ok in variants.items():
        rep(f"R2.eta.alpha_variant_{v}", "pass" if ok else "fail")
    exactly_one = sum(variants.values()) == 1
    results.append(exactly_one)
    rep("alpha_variant", selected_alpha_variant() if exactly_one else "ambiguous")
    for name, lhs, rhs in matrix_identity_corpus(g):
        ok = evaluate_word(parse_word(lhs), g) == evaluate_word(parse_word(rhs), g)
        results.append(ok)
        rep(f"identity[{name}]", "pass" if ok else "fail")
    rep("passed", sum(results))
    rep("failed", len(results) - sum(results))
    return 0 if all(results) else 1


def cmd_roundtrip(args, stdin, rep: Report) -> int:
    g, d = args.g or 3, args.d
    group = args.group
    if group in ("gamma", "ursp") and d >= 3 and g < 3:
        raise UsageError("round trip with d >= 3 needs g >= 3")
    rng = random.Random(args.seed)
    rep("command", "roundtrip")
    rep("group", group)
    rep("g", g)
    rep("d", d)
    rep("seed", args.seed)
    passed = failed = obstructed = 0
    for k in range(args.cases):
        w = random_normal_product(rng, group, g, d, args.max_letters, args.max_conj_len)
        amb = "GL" if group == "gamma" else "urSp"
        m = evaluate_word(w, g, amb)
        try:
            if group == "gamma":
                f = factor_gamma2(m) if d == 2 else factor_gammad(m, d)
            elif group == "sg":
                f = factor_Sg(m, d)
            else:
                f = factor_ursp_level(m, d)
            ok = verify_factorization(f, m)
            status = "pass" if ok else "fail"
        except ObstructionUnresolved:
            ok, status = False, "obstruction"
            obstructed += 1
        passed += ok
        failed += not ok
        rep(f"case.{k}", status)
    rep("passed", passed)
    rep("failed", failed)
    rep("obstructions", obstructed)
    return 0 if failed == 0 else 1


COMMANDS = {
    "check": cmd_check,
    "factor": cmd_factor,
    "eval": cmd_eval,
    "lift": cmd_lift,
    "verify-relations": cmd_verify_relations,
    "roundtrip": cmd_roundtrip,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="urspkit", description="Level structures on urSp(2g) and the handlebody group.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group_default="ursp"):
        sp.add_argument("--g", type=int, help="genus")
        sp.add_argument("--group", choices=("gamma", "sg", "ursp"), default=group_default)
        sp.add_argument("--file", help="read the payload from a file instead of stdin")

    sp = sub.add_parser("check", help="membership verdict for a matrix or word")
    common(sp)
    sp.add_argument("--level", type=int, default=1)
    sp = sub.add_parser("factor", help="factor a matrix into conjugates of normal generators")
    common(sp)
    sp.add_argument("--d", type=int, default=2)
    sp = sub.add_parser("eval", help="evaluate a matrix or mapping-class word")
    common(sp)
    sp.add_argument("--rep", choices=("psi", "eta"), default="psi")
    sp = sub.add_parser("lift", help="lift a urSp(2g) matrix to a mapping-class word")
    common(sp)
    sp = sub.add_parser("verify-relations", help="run the built-in relation corpus")
    common(sp)
    sp = sub.add_parser("roundtrip", help="random factor-and-verify harness")
    common(sp)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=20)
    sp.add_argument("--max-letters", type=int, default=20)
    sp.add_argument("--max-conj-len", type=int, default=8)
    return p


def main(argv=None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    rep = Report(stdout)
    for name in ("g", "d", "level"):
        v = getattr(args, name, None)
        if name == "g" and v is not None and v < 1:
            rep("error", "genus must be at least 1")
            return 2
        if name in ("d", "level") and v is not None and v < 1:
            rep("error", f"--{name} must be positive")
            return 2
    try:
        return COMMANDS[args.command](args, stdin, rep)
    except ObstructionUnresolved as exc:
        rep("error", f"obstruction: {exc}")
        rep("residual", "")
        stdout.write(format_matrix(exc.residual) + "\n")
        return 2
    except (MatrixFormatError, WordSyntaxError, SymbolError, DimensionError, NotUnimodularError,
            MembershipError, EtaUnresolvable, UsageError, ValueError, OSError) as exc:
        rep("error", f"{type(exc).__name__}: {exc}")
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
