"""Command line entry point: ``weylsig <command> ...``.

Every command is a thin adapter over a library call. JSON goes to stdout;
domain errors exit 1 with an error object, usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .partitions import (
    PartitionError,
    format_composition,
    format_partition,
    parse_composition,
    parse_partition,
    partitions_of,
)
from .tableaux import CACHE, kostka, lr_coefficient
from .type_a import SignatureError

CACHE_FILE = "coefficients.tsv"


class UsageError(Exception):
    pass


def _dump(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _pmap(fn: Callable, items: Sequence, workers: int) -> list:
    """Ordered map, optionally over a process pool."""
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# ------------------------------------------------------------------ labels


def _parse_irrep(tag: str, text: str):
    if tag == "A":
        return parse_partition(text)
    if tag == "B":
        from .type_b import parse_irrep_b

        return parse_irrep_b(text)
    if tag == "D":
        from .type_d import parse_irrep_d

        return parse_irrep_d(text)
    raise UsageError(f"unknown type {tag!r}; expected A, B or D")


def _irrep_text(tag: str, v) -> str:
    return format_partition(v) if tag == "A" else v.text()


def _parse_key(tag: str, text: str):
    if tag == "A":
        return parse_composition(text)
    if tag == "B":
        from .type_b import parse_parabolic_b

        return parse_parabolic_b(text)
    from .type_d import parse_parabolic_d

    return parse_parabolic_d(text)


def _key_text(tag: str, p) -> str:
    return format_composition(p) if tag == "A" else p.text()


def _load_signature(tag: str, text: str) -> dict:
    path = Path(text)
    raw = json.loads(path.read_text() if not text.lstrip().startswith("{") and path.exists() else text)
    if not isinstance(raw, dict):
        raise ValueError("signature JSON must be an object")
    out = {}
    for k, v in raw.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"multiplicity for {k!r} must be a non-negative integer")
        out[_parse_key(tag, k)] = v
    return out


# ---------------------------------------------------------------- commands


def cmd_kostka(args) -> str:
    return str(kostka(parse_partition(args.shape), parse_composition(args.content)))


def cmd_lr(args) -> str:
    return str(lr_coefficient(parse_partition(args.lam), parse_partition(args.mu), parse_partition(args.nu)))


def signature_json(tag: str, v, generalized: bool = False) -> dict[str, int]:
    if tag == "A":
        from .type_a import sign_signature_a

        sig = sign_signature_a(v)
        return {format_composition(p): sig.mult[p] for p in partitions_of(sum(v))}
    if tag == "B":
        from .type_b import enumerate_parabolics_b, sign_signature_b

        sig = sign_signature_b(v, generalized)
        return {p.text(): sig[p] for p in enumerate_parabolics_b(v.n, generalized)}
    from .type_d import enumerate_parabolics_d, sign_signature_d

    sig = sign_signature_d(v)
    return {p.text(): sig[p] for p in enumerate_parabolics_d(v.n)}


def cmd_sig(args) -> str:
    tag = args.type.upper()
    if args.generalized and tag != "B":
        raise UsageError("--generalized applies to type B only")
    return _dump(signature_json(tag, _parse_irrep(tag, args.label), args.generalized))


def cmd_recover(args) -> str:
    tag = args.type.upper()
    if tag not in "ABD" or len(tag) != 1:
        raise UsageError(f"unknown type {tag!r}")
    sig = _load_signature(tag, args.signature)
    if tag == "A":
        from .type_a import recover_a

        return format_partition(recover_a(sig))
    if tag == "B":
        from .type_b import recover_b

        return recover_b(sig).text()
    from .type_d import recover_d

    return recover_d(sig).text()


def branch_json(tag: str, v, target: str) -> Any:
    if target == "sn":
        if tag == "B":
            from .type_b import branch_b_to_sn

            res = branch_b_to_sn(v)
        else:
            from .type_d import branch_d_to_sn

            res = branch_d_to_sn(v)
        return {format_partition(k): c for k, c in sorted(res.items(), reverse=True) if c}
    kind, _, k = target.partition(":")
    if kind not in ("bb", "dd") or not k.isdigit():
        raise UsageError(f"--to expects sn, bb:<k> or dd:<k>, got {target!r}")
    k = int(k)
    if not 0 <= k <= v.n:
        raise ValueError(f"k={k} outside 0..{v.n}")
    if tag == "B":
        from .type_b import branch_b_to_bb

        res = branch_b_to_bb(v, k)
    else:
        from .type_d import branch_d_nonsplit, branch_d_split

        res = branch_d_split(v, k) if v.is_split else branch_d_nonsplit(v, k)
    rows = [{"left": x.text(), "right": y.text(), "mult": c} for (x, y), c in res.items() if c]
    rows.sort(key=lambda r: (r["left"], r["right"]))
    return rows


def cmd_branch(args) -> str:
    tag = args.type.upper()
    if tag not in ("B", "D"):
        raise UsageError("branch supports types B and D")
    return _dump(branch_json(tag, _parse_irrep(tag, args.label), args.to))


def cmd_decompose(args) -> str:
    tag = args.type.upper()
    sig = _load_signature(tag, args.signature)
    if tag == "A":
        from .type_a import decompose_a

        res = decompose_a(sig)
        return _dump({format_partition(k): v for k, v in res.items() if v})
    if tag == "B":
        from .type_b import decompose_b

        res = decompose_b(sig)
        return _dump({k.text(): v for k, v in res.items() if v})
    raise UsageError("decompose supports types A and B")


def wcell_report(text: str, tag: str) -> list[dict]:
    from . import wgraph as W

    cox = W.coxeter_data(tag)
    block = W.parse_wcell(text, cox)
    out = []
    for c, g in block.ordered_cells():
        sig = W.tau_signature(g)
        val = W.validate(g, cox)
        item: dict[str, Any] = {
            "cell": c,
            "size": g.size,
            "vertices": [int(x) for x in g.names or []],
            "tau_signature": sig.text(),
            "valid": val.ok,
        }
        if not val.ok:
            item["violation"] = val.violation
        if cox.family in ("A", "B", "C", "D") and val.ok:
            lab = W.identify_special(sig, cox)
            item["special"] = format_partition(lab) if cox.family == "A" else lab.text()
        if cox.tag == "G2":
            item["orbit"] = W.G2_ORBIT_NAMES.get(sig.subsets)
        out.append(item)
    return out


def cmd_wcell(args) -> str:
    path = Path(args.file)
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    return _dump(wcell_report(path.read_text(), args.type.upper()))


def table_b(n: int) -> tuple[list[str], list[tuple[str, list[int]]]]:
    from .type_b import sign_mult_b, table_rows_b

    cols = _b_columns(n)
    rows = [(v.text(), [sign_mult_b(v, p) for p in cols]) for v in table_rows_b(n)]
    return [p.text() for p in cols], rows


def _b_columns(n: int):
    """Columns of the printed type B table: B part decreasing, then the
    S parts in increasing lexicographic order of their padded form."""
    from .type_b import enumerate_parabolics_b

    def key(p):
        b = p.b_parts[0] if p.b_parts else 0
        padded = tuple(p.a_parts) + (0,) * (n - len(p.a_parts))
        return (-b, padded)

    return sorted(enumerate_parabolics_b(n), key=key)


def render_table(header: list[str], rows: list[tuple[str, list[int]]], fmt: str) -> str:
    if fmt == "json":
        return _dump({"columns": header, "rows": [{"irrep": r, "values": v} for r, v in rows]})
    lines = ["irrep\t" + "\t".join(header)]
    lines += [r + "\t" + "\t".join(str(x) for x in v) for r, v in rows]
    return "\n".join(lines)


def cmd_table(args) -> str:
    name = args.name
    fmt = args.format or "tsv"
    if name.upper().startswith("B") and name[1:].isdigit():
        header, rows = table_b(int(name[1:]))
    elif name in ("G2-extended", "F4-extended"):
        from . import exceptional as E

        tag = name[:2]
        if tag == "F4" and not E.F4_ENABLED:
            raise UsageError("F4 tables need WEYLSIG_F4=1")
        header, rows = E.extended_table(tag)
    else:
        raise UsageError(f"unknown table {name!r}; expected B<n>, G2-extended or F4-extended")
    return render_table(header, rows, fmt)


def _oracle_row(job: tuple[str, int, str]) -> tuple[str, list[tuple[str, int, int]]]:
    from . import oracle as O

    tag, n, label = job
    v = _parse_irrep(tag, label)
    if tag == "A":
        from .type_a import sign_mult_a

        mod = O.sn_module(v)
        keys = partitions_of(n)
        pairs = [(format_composition(p), sign_mult_a(v, p), O.oracle_sign_mult(mod, O.parabolic_gens_a(p))) for p in keys]
    elif tag == "B":
        from .type_b import enumerate_parabolics_b, sign_mult_b

        mod = O.bn_module(v.lam, v.mu)
        pairs = [
            (p.text(), sign_mult_b(v, p), O.oracle_sign_mult(mod, O.parabolic_gens_b(p)))
            for p in enumerate_parabolics_b(n, True)
        ]
    else:
        from .type_d import enumerate_parabolics_d, sign_mult_d

        mod = O.dn_module(v)
        pairs = [
            (p.text(), sign_mult_d(v, p), O.oracle_sign_mult(mod, O.parabolic_gens_d(p)))
            for p in enumerate_parabolics_d(n)
        ]
    return label, pairs


def oracle_check(tag: str, n: int, workers: int = 1) -> list[tuple[str, list[tuple[str, int, int]]]]:
    if tag == "A":
        labels = [format_partition(p) for p in partitions_of(n)]
    elif tag == "B":
        from .type_b import irreps_b_in_order

        labels = [v.text() for v in irreps_b_in_order(n)]
    else:
        from .type_d import irreps_d

        labels = [v.text() for v in irreps_d(n)]
    return _pmap(_oracle_row, [(tag, n, lab) for lab in labels], workers)


def cmd_oracle_check(args) -> tuple[str, int]:
    tag = (args.type or "").upper()
    if tag not in ("A", "B", "D"):
        raise UsageError("--type must be A, B or D")
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    caps = {"A": 6, "B": 4, "D": 6}
    if args.n > caps[tag]:
        raise ValueError(f"oracle cap for type {tag} is n <= {caps[tag]}")
    res = oracle_check(tag, args.n, args.parallel)
    bad = sum(1 for _, pairs in res for _, f, o in pairs if f != o)
    if args.format == "json":
        payload = {
            "type": tag,
            "n": args.n,
            "failures": bad,
            "rows": [{"irrep": lab, "cells": [{"parabolic": k, "formula": f, "oracle": o} for k, f, o in pairs]} for lab, pairs in res],
        }
        return _dump(payload), (1 if bad else 0)
    header = [k for k, _, _ in res[0][1]] if res else []
    lines = ["irrep\t" + "\t".join(header)]
    for lab, pairs in res:
        lines.append(lab + "\t" + "\t".join("pass" if f == o else f"FAIL({f}!={o})" for _, f, o in pairs))
    lines.append(f"# {sum(len(p) for _, p in res) - bad} pass, {bad} fail")
    return "\n".join(lines), (1 if bad else 0)


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv"], default=None)
    common.add_argument("--parallel", type=int, default=1, metavar="K")

    p = _Parser(prog="weylsig", description="Sign signatures of Weyl group representations.")
    p.add_argument("--version", action="version", version=f"weylsig {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("kostka", parents=[common], help="Kostka number K_{shape,content}")
    s.add_argument("shape")
    s.add_argument("content")
    s.set_defaults(func=cmd_kostka)

    s = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient c^lam_{mu,nu}")
    s.add_argument("lam")
    s.add_argument("mu")
    s.add_argument("nu")
    s.set_defaults(func=cmd_lr)

    s = sub.add_parser("sig", parents=[common], help="sign signature of an irreducible")
    s.add_argument("type")
    s.add_argument("label")
    s.add_argument("--generalized", action="store_true")
    s.set_defaults(func=cmd_sig)

    s = sub.add_parser("recover", parents=[common], help="irreducible label from a sign signature")
    s.add_argument("type")
    s.add_argument("signature", help="JSON object or a path to one")
    s.set_defaults(func=cmd_recover)

    s = sub.add_parser("branch", parents=[common], help="branching to block subgroups or S_n")
    s.add_argument("type")
    s.add_argument("label")
    s.add_argument("--to", required=True, help="sn, bb:<k> or dd:<k>")
    s.set_defaults(func=cmd_branch)

    s = sub.add_parser("decompose", parents=[common], help="irreducible content of a signature vector")
    s.add_argument("type")
    s.add_argument("signature", help="JSON object or a path to one")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("wcell", parents=[common], help="analyze Atlas wcell output")
    s.add_argument("file")
    s.add_argument("--type", required=True)
    s.set_defaults(func=cmd_wcell)

    s = sub.add_parser("table", parents=[common], help="B<n>, G2-extended or F4-extended")
    s.add_argument("name")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("oracle-check", parents=[common], help="formula vs brute-force sweep")
    s.add_argument("--type", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_oracle_check)
    return p


def _cache_path() -> Path | None:
    d = os.environ.get("WEYLSIG_CACHE_DIR")
    return Path(d) / CACHE_FILE if d else None


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cache = _cache_path()
    if cache is not None:
        CACHE.load(cache)
    try:
        res = args.func(args)
    except UsageError as e:
        sys.stderr.write(f"weylsig: error: {e}\n")
        return 2
    except (PartitionError, SignatureError, ValueError, ArithmeticError, RuntimeError, KeyError) as e:
        err = {"error": type(e).__name__, "message": str(e), "command": argv, "version": __version__}
        sys.stdout.write(_dump(err) + "\n")
        return 1
    code = 0
    if isinstance(res, tuple):
        res, code = res
    sys.stdout.write(res + "\n")
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        CACHE.dump(cache)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
