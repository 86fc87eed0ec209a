"""Command line interface.

Exit codes: 0 success, 1 a verified property fails (``verify``), 2 usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from twostruct.bound import oracle_min_extension, primitive_bound
from twostruct.clans import is_primitive
from twostruct.core import TwoStructure, substructure
from twostruct.decomposition import clan_tree, completeness_profile, maximal_families
from twostruct.errors import TwoStructureError
from twostruct.extensions import (
    Extension,
    extend_asym_linear_top,
    extend_log,
    extend_power_case,
    extend_small_c,
    extend_tournament,
    extend_via_inclusive,
    is_faithful,
    sumner_extension,
    verify_clan_killing,
)
from twostruct.formats import FORMATS, dumps, loads
from twostruct.generators import random_structure
from twostruct.traverse import build_traverse, dense_bicoloration

METHODS = {
    "small-c": extend_small_c,
    "log": extend_log,
    "power": extend_power_case,
    "tournament": extend_tournament,
    "inclusive": extend_via_inclusive,
    "linear-top": extend_asym_linear_top,
    "sumner": sumner_extension,
}


def _read(path: str, fmt: Optional[str]):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return loads(text, fmt)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tree_lines(sigma: TwoStructure, node, depth=0):
    label = ""
    if node.label is not None:
        label = node.label.kind
        if node.label.color is not None:
            label += f"({sigma.color_name(node.label.color)})"
    yield "  " * depth + "{" + ",".join(map(str, node.vertices)) + "}" + (" " + label if label else "")
    for ch in node.children:
        yield from _tree_lines(sigma, ch, depth + 1)


def cmd_decompose(args) -> int:
    sigma, _ = _read(args.input, args.format)
    tree = clan_tree(sigma)
    if args.json:
        _write(json.dumps(tree.to_json(sigma)) + "\n", args.output)
    else:
        _write("\n".join(_tree_lines(sigma, tree)) + "\n", args.output)
    return 0


def cmd_families(args) -> int:
    sigma, _ = _read(args.input, args.format)
    out = maximal_families(sigma).to_json(sigma)
    if sigma.is_reversible:
        prof = completeness_profile(sigma)
        out["c"] = prof.c
        out["isolated"] = {sigma.color_name(e): list(vs) for e, vs in prof.isolated.items()}
    order = build_traverse(sigma)
    beta = dense_bicoloration(order)
    out["traverse"] = list(order)
    out["bicoloration"] = "".join(str(beta[v]) for v in range(sigma.n))
    _write(json.dumps(out) + "\n", args.output)
    return 0


def cmd_bound(args) -> int:
    sigma, _ = _read(args.input, args.format)
    _write(json.dumps(primitive_bound(sigma).to_json()) + "\n", args.output)
    return 0


def cmd_extend(args) -> int:
    sigma, _ = _read(args.input, args.format)
    if args.method == "auto":
        result = primitive_bound(sigma)
        ext = result.witness or result.sumner_witness
        if ext is None:
            raise TwoStructureError("this structure has no extension to print")
    else:
        ext = METHODS[args.method](sigma)
    _write(dumps(ext.tau, "2s", ext.original), args.output)
    return 0


def cmd_oracle(args) -> int:
    sigma, _ = _read(args.input, args.format)
    result = oracle_min_extension(sigma, args.kmax, args.budget)
    _write(json.dumps(result.to_json()) + "\n", args.output)
    return 0


def _as_extension(tau: TwoStructure, original: Optional[int], base_path: Optional[str], fmt):
    if base_path is not None:
        sigma, _ = _read(base_path, fmt)
        try:
            emb = tuple(tau.catalog.index(name) for name in sigma.catalog.names)
        except TwoStructureError as exc:
            raise TwoStructureError(f"base color missing from the extension: {exc}") from exc
        return sigma, Extension(tau, sigma.n, emb)
    if original is None:
        return None, None
    sub = substructure(tau, range(original))
    return sub.structure, Extension(tau, original, sub.colors)


def cmd_verify(args) -> int:
    tau, original = _read(args.input, args.format)
    sigma, ext = _as_extension(tau, original, args.base, args.format)
    primitive = is_primitive(tau)
    lines = [f"primitive: {'yes' if primitive else 'no'}"]
    ok = primitive
    if ext is not None:
        faith = is_faithful(sigma, ext)
        lines.append(f"faithful: {'yes' if faith.faithful else 'no'} "
                     f"(no new colors: {faith.e1}, star condition: {faith.e2})")
        lines += [f"  {v}" for v in faith.violations]
        ok = ok and faith.faithful
        if ext.k == 0:
            lines.append("clan killing: no new vertices, nothing to check")
        elif tau.n <= 16:
            report = verify_clan_killing(sigma, ext)
            lines.append("clan killing: " + ", ".join(f"{k}={v}" for k, v in report.hypotheses.items())
                         + f", no base clan survives={report.conclusion}")
            ok = ok and report.conclusion
    lines.append("OK" if ok else "VIOLATION")
    _write("\n".join(lines) + "\n", args.output)
    return 0 if ok else 1


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    sigma = random_structure(rng, args.max_n, args.max_eps)
    _write(dumps(sigma, args.to), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twostruct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text)
        if with_input:
            p.add_argument("input", help="input file, or - for stdin")
            p.add_argument("--format", choices=FORMATS, help="input format (sniffed by default)")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("decompose", cmd_decompose, "print the clan tree")
    p.add_argument("--json", action="store_true", help="nested JSON instead of an indented tree")
    add("families", cmd_families, "complete, linear and primitive families as JSON")
    add("bound", cmd_bound, "least number of new vertices for a primitive faithful extension")
    p = add("extend", cmd_extend, "write a primitive extension in .2s format")
    p.add_argument("--method", choices=["auto"] + sorted(METHODS), default="auto",
                   help="construction to use (default: whatever bound picks)")
    p = add("oracle", cmd_oracle, "brute-force the least extension size")
    p.add_argument("--kmax", type=int, default=3, help="largest number of new vertices to try")
    p.add_argument("--budget", type=int, default=None,
                   help="maximum number of candidates (default $TWOSTRUCT_BUDGET or 2^24)")
    p = add("verify", cmd_verify, "check primitivity, faithfulness and clan killing")
    p.add_argument("--base", help="base structure (default: the 'original' header)")
    p = add("random", cmd_random, "print a seeded random reversible structure", with_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-eps", type=int, default=4, help="upper limit on the number of colors")
    p.add_argument("--to", choices=["2s", "json"], default="2s")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TwoStructureError, OSError) as exc:
        print(f"twostruct: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
