"""``qschubert`` command line.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import Polynomial
from .classical import InvalidTopClass, bgg_family, classical_product, default_top_class
from .fixtures import Coordinates, load_top_class
from .quantum import build_operators, gw_invariant, quantum_family, quantum_product
from .rootsystem import InvalidCartan, UnknownType
from .verify import verify
from .weylgroup import (
    DEFAULT_SIZE_LIMIT,
    NonFiniteGroup,
    SizeLimitExceeded,
    WeylGroup,
    load_group,
    weyl_group,
)

SCHEMA = "qschubert/1"

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


# argument handling


def _add_common(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--type", dest="type_label", help="root system type, e.g. B2, A3, G2")
    src.add_argument("--cartan", metavar="FILE", help='JSON file {"cartan": [[2,-1],[-1,2]]}')
    src.add_argument("--load", metavar="FILE", help="Weyl group saved earlier with --dump")
    p.add_argument("--top", metavar="FILE", help="top class JSON (default: product of positive roots / |W|)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT,
                   help="refuse Weyl groups larger than this (default %(default)s)")
    p.add_argument("--dump", metavar="FILE", help="write the generated Weyl group as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qschubert",
        description="Classical and quantum Schubert representatives for G/B.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="root data, Weyl group size and the quantum operators")
    _add_common(p)

    p = sub.add_parser("classical-table", help="BGG representatives c_w")
    _add_common(p)

    p = sub.add_parser("quantum-table", help="quantum representatives c_hat_w and their corrections")
    _add_common(p)

    p = sub.add_parser("product", help="quantum (or classical) product of two Schubert classes")
    _add_common(p)
    p.add_argument("--u", required=True, help="reduced word such as s1s2")
    p.add_argument("--v", required=True)
    p.add_argument("--classical", action="store_true", help="cup product instead of quantum product")

    p = sub.add_parser("gw", help="3-point structure constants")
    _add_common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", help="basis element; all elements when omitted")
    deg = p.add_mutually_exclusive_group()
    deg.add_argument("--d", help="degree vector, comma separated, e.g. 1,0")
    deg.add_argument("--all-d", action="store_true", help="every degree allowed by the grading (default)")

    p = sub.add_parser("verify", help="run the property suite (plus reference data for B2)")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=12, help="random cases per sampled check")
    return parser


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _group(args) -> WeylGroup:
    if args.load:
        try:
            group = load_group(args.load)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{args.load}: not a saved Weyl group ({exc})") from None
    elif args.cartan:
        data = _read_json(args.cartan)
        if "cartan" not in data:
            raise InputError(f"{args.cartan}: missing 'cartan' field")
        group = weyl_group(data["cartan"], args.size_limit)
    elif args.type_label:
        group = weyl_group(args.type_label, args.size_limit)
    else:
        raise InputError("one of --type, --cartan or --load is required")
    if len(group) > args.size_limit:
        raise SizeLimitExceeded(f"Weyl group has {len(group)} elements, limit is {args.size_limit}")
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(group.to_json(), fh, indent=1)
            fh.write("\n")
    return group


def _top(args, group: WeylGroup) -> tuple[Polynomial, Coordinates | None]:
    if not args.top:
        return default_top_class(group), None
    data = _read_json(args.top)
    try:
        top = load_top_class(data, group.rank)
        coords = Coordinates(group.rank, data["dictionary"]) if "dictionary" in data else None
    except (ValueError, KeyError) as exc:
        raise InputError(f"{args.top}: {exc}") from None
    return top, coords


def _element(group: WeylGroup, text: str):
    try:
        return group.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _degree(text: str, rank: int) -> tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad degree vector {text!r}") from None
    if len(d) != rank or min(d) < 0:
        raise InputError(f"degree vector needs {rank} non-negative entries")
    return d


# commands


def cmd_info(args, group: WeylGroup) -> dict:
    datum = group.datum
    ops = build_operators(group)
    roots = [{
        "root": list(a.root_coords),
        "label": a.label(),
        "weight": list(a.weight_coords),
        "coroot": list(a.coroot_coords),
        "coroot_height": a.height,
        "reflection_length": a.reflection_length,
        "tilde": a.is_tilde,
    } for a in datum.positive_roots]
    operators = []
    for i in range(1, group.rank + 1):
        operators.append({"index": i, "terms": [
            {"root": label, "coeff": str(c), "q": list(q), "word": list(word)}
            for label, c, q, word in ops.describe(i)]})
    return {
        "schema": SCHEMA, "kind": "info",
        "root_datum": datum.to_json(),
        "rank": group.rank,
        "order": len(group),
        "longest": group.longest.to_json(),
        "positive_roots": roots,
        "operators": operators,
    }


def _render(poly: Polynomial, coords: Coordinates | None) -> dict:
    out = {"poly": poly.to_json(), "text": poly.format()}
    if coords is not None:
        out["text_coords"] = coords.render(poly)
    return out


def cmd_classical_table(args, group: WeylGroup) -> dict:
    top, coords = _top(args, group)
    fam = bgg_family(top, group)
    rows = []
    for w in reversed(group.elements):
        row = {"word": list(w.word), "length": w.length}
        row.update(_render(fam[w], coords))
        rows.append(row)
    return {"schema": SCHEMA, "kind": "classical_table", "rows": rows}


def cmd_quantum_table(args, group: WeylGroup) -> dict:
    top, coords = _top(args, group)
    fam = bgg_family(top, group)
    qf = quantum_family(build_operators(group), fam)
    rows = []
    for w in reversed(group.elements):
        row = {"word": list(w.word), "length": w.length,
               "c_hat": _render(qf[w], coords),
               "correction": _render(qf.correction(w), coords)}
        rows.append(row)
    return {"schema": SCHEMA, "kind": "quantum_table", "rows": rows}


def _families(args, group):
    top, _ = _top(args, group)
    fam = bgg_family(top, group)
    return fam, quantum_family(build_operators(group), fam)


def cmd_product(args, group: WeylGroup) -> dict:
    u, v = _element(group, args.u), _element(group, args.v)
    if args.classical:
        top, _ = _top(args, group)
        exp = classical_product(bgg_family(top, group), u, v)
    else:
        _, qf = _families(args, group)
        exp = quantum_product(qf, u, v)
    out = {"schema": SCHEMA, "kind": "product", "u": u.to_json(), "v": v.to_json(),
           "quantum": not args.classical}
    out.update({k: val for k, val in exp.to_json().items() if k != "schema"})
    out["text"] = exp.format()
    return out


def _degrees(total: int, rank: int):
    """All non-negative integer vectors of length ``rank`` summing to ``total``."""
    if rank == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _degrees(total - first, rank - 1):
            yield (first,) + rest


def cmd_gw(args, group: WeylGroup) -> dict:
    u, v = _element(group, args.u), _element(group, args.v)
    targets = [_element(group, args.w)] if args.w else list(group.elements)
    _, qf = _families(args, group)
    product = quantum_product(qf, u, v)
    r = group.rank
    entries = []
    for w in targets:
        if args.d:
            degrees = [_degree(args.d, r)]
        else:
            twice = u.length + v.length - w.length
            degrees = list(_degrees(twice // 2, r)) if twice >= 0 and twice % 2 == 0 else []
        for d in degrees:
            value = gw_invariant(qf, u, v, w, d, product)
            if args.d or args.w or value:
                entries.append({"w": w.to_json(), "d": list(d), "value": str(value)})
    return {"schema": SCHEMA, "kind": "gw", "u": u.to_json(), "v": v.to_json(), "invariants": entries}


def cmd_verify(args, group: WeylGroup):
    top, _ = _top(args, group)
    spec = args.type_label if args.type_label else group
    report = verify(spec, top=top if args.top else None, size_limit=args.size_limit,
                    seed=args.seed, samples=args.samples)
    return report


# text rendering


def _word(item: dict) -> str:
    return "".join(f"s{i}" for i in item["word"]) or "e"


def to_text(doc: dict) -> str:
    kind = doc["kind"]
    lines = []
    if kind == "info":
        label = doc["root_datum"].get("type", "custom")
        lines.append(f"type {label}, rank {doc['rank']}, |W| = {doc['order']}, "
                     f"l(w0) = {doc['longest']['length']} (w0 = {_word(doc['longest'])})")
        lines.append("cartan " + json.dumps(doc["root_datum"]["cartan"]))
        lines.append(f"{'root':<12}{'coroot':<14}{'ht(a^v)':>8}{'l(s_a)':>8}  tilde")
        for a in doc["positive_roots"]:
            lines.append(f"{a['label']:<12}{str(tuple(a['coroot'])):<14}{a['coroot_height']:>8}"
                         f"{a['reflection_length']:>8}  {'yes' if a['tilde'] else 'no'}")
        for op in doc["operators"]:
            terms = " ".join(f"+ ({t['coeff']})*q^{tuple(t['q'])}*D[{_word(t)}]" for t in op["terms"])
            lines.append(f"Lambda_{op['index']} = l{op['index']} {terms}".rstrip())
    elif kind == "classical_table":
        for row in doc["rows"]:
            extra = f"    [{row['text_coords']}]" if "text_coords" in row else ""
            lines.append(f"{_word(row):<16} {row['text']}{extra}")
    elif kind == "quantum_table":
        for row in doc["rows"]:
            hat, corr = row["c_hat"], row["correction"]
            lines.append(f"{_word(row):<16} c_hat = {hat.get('text_coords', hat['text'])}")
            if corr["poly"]:
                lines.append(f"{'':<16} c_hat - c = {corr.get('text_coords', corr['text'])}")
    elif kind == "product":
        op = "o" if doc["quantum"] else "*"
        lines.append(f"sigma[{_word(doc['u'])}] {op} sigma[{_word(doc['v'])}] = {doc['text']}")
    elif kind == "gw":
        for e in doc["invariants"]:
            lines.append(f"<{_word(doc['u'])}, {_word(doc['v'])} | {_word(e['w'])}>_{tuple(e['d'])} = {e['value']}")
        if not doc["invariants"]:
            lines.append("no nonzero invariants")
    elif kind == "verification":
        for c in doc["checks"]:
            lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}: {c['detail']}")
        for e in doc.get("errata", []):
            flag = "confirmed" if e["printed_value_disagrees"] else "NOT confirmed"
            lines.append(f"[ERRATUM {flag}] {e['entry']}: printed {e['printed']} ; "
                         f"corrected {e['corrected']}")
        lines.append(f"{doc['type']}: {'all checks passed' if doc['passed'] else 'FAILED'}")
    return "\n".join(lines)


COMMANDS = {
    "info": cmd_info,
    "classical-table": cmd_classical_table,
    "quantum-table": cmd_quantum_table,
    "product": cmd_product,
    "gw": cmd_gw,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    status = EXIT_OK
    try:
        group = _group(args)
        result = COMMANDS[args.command](args, group)
        if args.command == "verify":
            status = EXIT_OK if result.passed else EXIT_FAILED
            doc = result.to_json()
        else:
            doc = result
    except (InputError, InvalidCartan, UnknownType, InvalidTopClass, NonFiniteGroup) as exc:
        _error(err, args, "invalid_input", exc)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        _error(err, args, "resource_limit", exc)
        return EXIT_LIMIT
    if args.format == "json":
        out.write(json.dumps(doc, indent=1, ensure_ascii=False) + "\n")
    else:
        out.write(to_text(doc) + "\n")
    return status


def _error(stream, args, kind: str, exc: Exception) -> None:
    source = args.top or args.cartan or args.load or args.type_label
    if args.format == "json":
        stream.write(json.dumps({"schema": SCHEMA, "kind": "error", "error": kind,
                                 "exception": type(exc).__name__, "message": str(exc),
                                 "source": source}) + "\n")
    else:
        stream.write(f"qschubert {args.command}: {kind}: {exc} (source: {source})\n")


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
