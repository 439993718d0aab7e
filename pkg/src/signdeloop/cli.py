"""Command line interface.

Permutations are written either in cycle notation, "(0 1 2)(3 4)" with
fixed points omitted, or in one-line notation, "1,2,0,4,3" giving the image
of each point in order.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .cycles import cycle_decompose
from .deloopings import (
    alternating_kernel,
    canonical_orientation,
    cartier_delooping,
    orientation_action,
    relative_inversions,
    sign_from_delooping,
)
from .errors import ContractError
from .finite import Bijection, fin
from .perms import factor_into_transpositions, sign_inversions
from .verify import run_verification

_CYCLE_TOKEN = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int | None = None) -> Bijection:
    """Parse either notation into a permutation of fin(n).

    For cycle notation the arity defaults to max(label) + 1 when not given.
    """
    text = text.strip()
    if not text:
        raise ContractError("empty permutation")
    if text.startswith("("):
        groups = _CYCLE_TOKEN.findall(text)
        leftover = _CYCLE_TOKEN.sub("", text).strip()
        if leftover:
            raise ContractError(f"unparsed cycle input: {leftover!r}")
        cycles = []
        for group in groups:
            labels = [int(tok) for tok in re.split(r"[,\s]+", group.strip()) if tok]
            cycles.append(labels)
        seen: set[int] = set()
        for cyc in cycles:
            if seen & set(cyc) or len(set(cyc)) != len(cyc):
                raise ContractError("cycles must be disjoint")
            seen.update(cyc)
        if any(x < 0 for x in seen):
            raise ContractError("labels must be unsigned")
        size = n if n is not None else (max(seen) + 1 if seen else 0)
        mapping = {x: x for x in range(size)}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a >= size:
                    raise ContractError(f"label {a} out of range for n={size}")
                mapping[a] = b
        base = fin(size)
        return Bijection(base, base, tuple(mapping[x] for x in range(size)))
    images = tuple(int(tok) for tok in text.split(","))
    if n is not None and n != len(images):
        raise ContractError(f"one-line form has {len(images)} entries, expected {n}")
    base = fin(len(images))
    return Bijection(base, base, images)


def format_permutation(e: Bijection, notation: str = "cycle") -> str:
    if notation == "oneline":
        return ",".join(str(x) for x in e.images)
    if notation != "cycle":
        raise ContractError(f"unknown notation {notation!r}")
    parts = []
    for cyc in cycle_decompose(e).cycles:
        orbit = cyc.orbit_from_min()
        if len(orbit) > 1:
            parts.append("(" + " ".join(str(x) for x in orbit) + ")")
    return "".join(parts) or "()"


def _nontrivial_cycles(e: Bijection) -> list[list[int]]:
    return [
        list(cyc.orbit_from_min())
        for cyc in cycle_decompose(e).cycles
        if len(cyc) > 1
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signdeloop",
        description="Sign deloopings on concrete finite sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sign", help="inversion-count sign of a permutation")
    p.add_argument("perm")
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("cycles", help="canonical cycle decomposition")
    p.add_argument("perm")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("factor", help="factor into transpositions")
    p.add_argument("perm")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cartier", help="orientation transport distance and class sign")
    p.add_argument("perm")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("orientation-dot", help="DOT digraph of an orientation")
    p.add_argument("perm", nargs="?", default=None)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--construction",
        choices=["all", "fixed", "orbit", "simpson", "cartier"],
        default="all",
    )
    p.add_argument("--exhaustive-fixed", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("alternating", help="list the even-sign kernel")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")

    return parser


def _cmd_sign(args) -> int:
    print(sign_inversions(parse_permutation(args.perm, args.n)))
    return 0


def _cmd_cycles(args) -> int:
    e = parse_permutation(args.perm, args.n)
    if args.json:
        print(json.dumps({"n": len(e.domain), "cycles": _nontrivial_cycles(e)}))
    else:
        print(format_permutation(e))
    return 0


def _cmd_factor(args) -> int:
    e = parse_permutation(args.perm, args.n)
    factors = factor_into_transpositions(e)
    if args.json:
        print(json.dumps({
            "n": len(e.domain),
            "factors": [list(f.members) for f in factors],
        }))
    else:
        text = "".join(f"({f.members[0]} {f.members[1]})" for f in factors)
        print(text or "()")
    return 0


def _cmd_cartier(args) -> int:
    e = parse_permutation(args.perm, args.n)
    base = fin(args.n)
    d = canonical_orientation(base)
    m = relative_inversions(d, orientation_action(e, d))
    s = sign_from_delooping(cartier_delooping(args.n), e)
    if args.json:
        print(json.dumps({"n": args.n, "relative_inversions": m, "sign": str(s)}))
    else:
        print(f"relative inversions: {m}")
        print(f"class sign: {s}")
    return 0


def _cmd_orientation_dot(args) -> int:
    base = fin(args.n)
    u = canonical_orientation(base)
    if args.perm is not None:
        u = orientation_action(parse_permutation(args.perm, args.n), u)
    lines = ["digraph orientation {"]
    for unchosen, chosen in u.choices():
        lines.append(f"  {unchosen} -> {chosen};")
    lines.append("}")
    print("\n".join(lines))
    return 0


def _cmd_verify(args) -> int:
    reports = run_verification(
        args.n,
        construction=args.construction,
        seed=args.seed,
        exhaustive_fixed=args.exhaustive_fixed,
    )
    if args.json:
        print(json.dumps({
            "n": args.n,
            "seed": args.seed,
            "construction": args.construction,
            "passed": all(r.passed for r in reports),
            "reports": [r.to_json() for r in reports],
        }))
    else:
        for report in reports:
            print(f"[{report.construction}] n={report.n} seed={report.seed}")
            for check in report.checks:
                status = "PASS" if check.passed else "FAIL"
                print(f"  {status} {check.name} ({check.duration:.2f}s) {check.detail}")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_alternating(args) -> int:
    kernel = alternating_kernel(args.n)
    if args.json:
        print(json.dumps({
            "n": args.n,
            "order": len(kernel),
            "kernel": [list(e.images) for e in kernel],
        }))
    else:
        for e in kernel:
            print(format_permutation(e))
        print(f"order {len(kernel)}")
    return 0


_COMMANDS = {
    "sign": _cmd_sign,
    "cycles": _cmd_cycles,
    "factor": _cmd_factor,
    "cartier": _cmd_cartier,
    "orientation-dot": _cmd_orientation_dot,
    "verify": _cmd_verify,
    "alternating": _cmd_alternating,
}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except (ContractError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
