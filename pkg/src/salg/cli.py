"""Command line front end: ``salg check|invariants|witness|selftest``.

Exit codes: 0 success, 2 input error, 3 size cap exceeded, 4 self-test
mismatch.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .invariants import condition_star, invariant_module
from .perm import Perm, adjacent_transpositions
from .ring import Ideal, Ring, RingElem
from .splitalg import AlgElem, SplitAlg, SplitAlgError, basis_index, construct, format_terms
from .witness import WitnessReport, build_witness

EXIT_INPUT = 2
EXIT_SIZE = 3
EXIT_MISMATCH = 4

VERDICT_HOLDS = "only invariants are A"
VERDICT_FAILS = "non-trivial invariants exist"


class InputError(ValueError):
    pass


class SizeCapError(ValueError):
    pass


# --- parsing -----------------------------------------------------------------


def split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_ring(spec: str) -> Ring:
    try:
        return Ring.parse(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_elements(ring: Ring, text: str, what: str) -> list[RingElem]:
    if not text or not text.strip():
        raise InputError(f"empty {what} list")
    try:
        return [ring.parse_element(p) for p in split_top_level(text)]
    except ValueError as exc:
        raise InputError(f"bad {what} {text!r}: {exc}") from None


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive) or a comma list."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise InputError(f"bad range {text!r}") from None


def parse_group(text: str, n: int) -> list[Perm]:
    """``Sn``, ``S<k>`` (S_k on 1..k) or generators like ``(1 2);(2 3 4)``."""
    text = text.strip()
    if text == "Sn":
        return adjacent_transpositions(n)
    if text.startswith("S") and text[1:].isdigit():
        k = int(text[1:])
        if not 1 <= k <= n:
            raise InputError(f"S{k} does not act on degree {n}")
        return adjacent_transpositions(n, k)
    try:
        return [Perm.parse(n, g) for g in text.split(";") if g.strip()]
    except ValueError as exc:
        raise InputError(f"bad group {text!r}: {exc}") from None


# --- rendering ---------------------------------------------------------------


def format_poly(S: SplitAlg) -> str:
    parts = [f"t^{S.n}" if S.n > 1 else "t"]
    for k, a in enumerate(S.coeffs, start=1):
        power = S.n - k
        if not a:
            continue
        mono = "t" if power == 1 else f"t^{power}"
        if power == 0:
            parts.append(str(a))
        else:
            parts.append(mono if a.is_one() else f"{a}*{mono}")
    return " + ".join(parts)


def elem_json(x: AlgElem) -> list[dict]:
    return [
        {"exp": list(e), "coeff": list(x.terms[e].residues)}
        for e in sorted(x.terms, key=basis_index)
    ]


def ideal_json(I: Ideal) -> list[int]:
    return list(I.generator.residues)


def elem_from_json(S: SplitAlg, terms: list[dict]) -> AlgElem:
    """Rebuild an element from ``elem_json`` output."""
    return S.normalize({tuple(t["exp"]): S.ring(t["coeff"]) for t in terms})


def condition_json(S: SplitAlg, cond) -> dict:
    return {
        "ring": list(S.ring.moduli),
        "coeffs": [list(a.residues) for a in S.coeffs],
        "d_f": list(cond.d_f.residues),
        "ann2": ideal_json(cond.ann2),
        "annD": ideal_json(cond.annD),
        "intersection": ideal_json(cond.intersection),
        "verdict": VERDICT_HOLDS if cond.holds else VERDICT_FAILS,
    }


def witness_json(report: WitnessReport | None) -> dict | None:
    if report is None:
        return None
    v = report.verification
    return {
        "seed": list(report.seed.residues),
        "trail": [{"pair": list(p), "product": elem_json(z)} for p, z in report.trail],
        "x": elem_json(report.sigma_invariant),
        "multiplied_by_tau_n": report.multiplied_by_tau_n,
        "y": elem_json(report.y),
        "verification": {
            "invariant": v.invariant,
            "in_A": v.in_A,
            "two_y_in_A": v.stability.two_x_in_A,
            "dfy_in_A": v.stability.dfx_in_A,
        },
    }


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


# --- commands ----------------------------------------------------------------


def _algebra(args) -> SplitAlg:
    ring = parse_ring(args.ring)
    coeffs = parse_elements(ring, args.coeffs, "coefficient")
    return construct(ring, coeffs)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise SizeCapError(f"degree {n} exceeds the size cap (max degree {cap})")


def cmd_check(args, out) -> int:
    S = _algebra(args)
    cond = condition_star(S)
    data = condition_json(S, cond)
    roots_ok = None
    if args.roots is not None:
        roots = parse_elements(S.ring, args.roots, "root")
        try:
            images = [S.specialize(S.tau(i), roots) for i in range(1, S.n + 1)]
        except SplitAlgError as exc:
            raise InputError(str(exc)) from None
        roots_ok = images == roots
        data["roots"] = [list(r.residues) for r in roots]
        data["roots_verified"] = roots_ok
    if args.format == "json":
        print(json.dumps(data), file=out)
        return 0
    print(f"ring: {S.ring}", file=out)
    print(f"f: {format_poly(S)}", file=out)
    print(f"d_f: {cond.d_f}", file=out)
    print(f"ann2: {cond.ann2}", file=out)
    print(f"annD: {cond.annD}", file=out)
    print(f"intersection: {cond.intersection}", file=out)
    if roots_ok is not None:
        print(f"roots: {_yes(roots_ok)}", file=out)
    print(f"verdict: {data['verdict']}", file=out)
    return 0


def cmd_invariants(args, out) -> int:
    S = _algebra(args)
    _check_cap(S.n, args.max_degree)
    gens = parse_group(args.group, S.n)
    M = invariant_module(S, gens)
    basis = []
    for B in M.bases:
        rows = []
        for row in B.rows:
            rows.append(
                [{"exp": list(S.basis[i]), "coeff": [r]} for i, r in enumerate(row) if r]
            )
        basis.append(rows)
    if args.format == "json":
        data = {
            "ring": list(S.ring.moduli),
            "coeffs": [list(a.residues) for a in S.coeffs],
            "group": [str(g) for g in gens],
            "basis": basis,
            "rank": list(M.ranks),
        }
        print(json.dumps(data), file=out)
        return 0
    print(f"ring: {S.ring}", file=out)
    print(f"f: {format_poly(S)}", file=out)
    print(f"group: <{', '.join(str(g) for g in gens)}>", file=out)
    for m, B, rows in zip(S.ring.moduli, M.bases, basis):
        print(f"factor Z/{m}: rank {len(B)}", file=out)
        for row in rows:
            terms = {tuple(t["exp"]): t["coeff"][0] for t in row}
            print(f"  {format_terms(terms, lambda c: c == 1)}", file=out)
    return 0


def cmd_witness(args, out) -> int:
    S = _algebra(args)
    _check_cap(S.n, args.max_degree)
    report = build_witness(S)
    if args.format == "json":
        data = condition_json(S, condition_star(S))
        data["witness"] = witness_json(report)
        print(json.dumps(data), file=out)
        return 0
    print(f"ring: {S.ring}", file=out)
    print(f"f: {format_poly(S)}", file=out)
    if report is None:
        print("condition holds: no witness exists", file=out)
        return 0
    print(f"seed: {report.seed}", file=out)
    print("trail:", file=out)
    for (i, j), z in report.trail:
        print(f"  ({i},{j}): {z}", file=out)
    print(f"x: {report.sigma_invariant}", file=out)
    print(f"multiplied_by_tau_n: {_yes(report.multiplied_by_tau_n)}", file=out)
    print(f"y: {report.y}", file=out)
    v = report.verification
    print(
        f"verification: invariant={_yes(v.invariant)} in_A={_yes(v.in_A)} "
        f"two_y_in_A={_yes(v.stability.two_x_in_A)} dfy_in_A={_yes(v.stability.dfx_in_A)}",
        file=out,
    )
    return 0


@dataclass(frozen=True)
class InstanceResult:
    modulus: int
    coeffs: tuple[int, ...]
    holds: bool
    only_constants: bool
    witness_ok: bool | None

    @property
    def mismatch(self) -> bool:
        return self.holds != self.only_constants or self.witness_ok is False


def run_instance(modulus: int, coeffs: tuple[int, ...]) -> InstanceResult:
    """Compare the condition against brute force, and check the witness."""
    S = construct(Ring((modulus,)), coeffs)
    holds = condition_star(S).holds
    M = invariant_module(S)
    witness_ok = None
    if not holds:
        report = build_witness(S)
        witness_ok = report.y in M and not report.y.is_constant()
    return InstanceResult(modulus, tuple(coeffs), holds, M.is_constants(), witness_ok)


def _run_batch(batch):
    return [run_instance(m, c) for m, c in batch]


def selftest_instances(moduli, degrees):
    for m in sorted(moduli):
        for d in sorted(degrees):
            for coeffs in itertools.product(range(m), repeat=d):
                yield m, coeffs


def cmd_selftest(args, out) -> int:
    moduli = parse_range(args.moduli)
    degrees = parse_range(args.degrees)
    if any(m < 2 for m in moduli) or any(d < 1 for d in degrees):
        raise InputError("moduli must be >= 2 and degrees >= 1")
    for d in degrees:
        _check_cap(d, args.max_degree)
    instances = list(selftest_instances(moduli, degrees))
    if args.jobs > 1:
        chunks = [instances[i :: args.jobs] for i in range(args.jobs)]
        with ProcessPoolExecutor(args.jobs) as pool:
            results = [r for chunk in pool.map(_run_batch, chunks) for r in chunk]
        results.sort(key=lambda r: (r.modulus, len(r.coeffs), r.coeffs))
    else:
        results = _run_batch(instances)
    holds = sum(r.holds for r in results)
    bad = [r for r in results if r.mismatch]
    witness_failures = sum(r.witness_ok is False for r in results)
    if args.format == "json":
        data = {
            "moduli": moduli,
            "degrees": degrees,
            "instances": len(results),
            "condition_holds": holds,
            "mismatches": len(bad),
            "witness_failures": witness_failures,
            "mismatched": [{"modulus": r.modulus, "coeffs": list(r.coeffs)} for r in bad],
        }
        print(json.dumps(data), file=out)
    else:
        print(f"instances: {len(results)}", file=out)
        print(f"condition holds: {holds}", file=out)
        print(f"condition fails: {len(results) - holds}", file=out)
        print(f"witness failures: {witness_failures}", file=out)
        print(f"mismatches: {len(bad)}", file=out)
        for r in bad:
            print(f"  Z/{r.modulus} coeffs {list(r.coeffs)}", file=out)
    return EXIT_MISMATCH if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="salg",
        description="Invariants of the symmetric group on splitting algebras over finite rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_poly=True):
        if needs_poly:
            p.add_argument("--ring", required=True, help="e.g. 'Z/12' or 'Z/4 x Z/3'")
            p.add_argument(
                "--coeffs",
                required=True,
                help="a_1,...,a_n of f = t^n + a_1 t^(n-1) + ... + a_n; '(2,1)' gives explicit residues",
            )
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-degree", type=int, default=6, help="size cap on n (default 6)")

    p = sub.add_parser("check", help="evaluate Ann 2 cap Ann D_f = 0")
    common(p)
    p.add_argument("--roots", help="claimed roots nu_1,...,nu_n of f, verified by substitution")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", help="Howell basis of the invariant module")
    common(p)
    p.add_argument("--group", default="Sn", help="'Sn', 'S<k>' or generators '(1 2);(2 3)'")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("witness", help="construct a non-trivial S_n-invariant")
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("selftest", help="exhaustive comparison against brute force")
    common(p, needs_poly=False)
    p.add_argument("--moduli", default="2..12", help="'a..b' or 'm1,m2,...'")
    p.add_argument("--degrees", default="2", help="'d1,d2,...' or 'a..b'")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"salg: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeCapError as exc:
        print(f"salg: error: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
