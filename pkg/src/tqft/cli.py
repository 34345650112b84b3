"""Command-line front end.

Every subcommand produces one output document.  With ``--format json`` that
document is a single JSON object on stdout; diagnostics always go to stderr.
Exit codes: 0 success, 1 domain error, 2 unreadable or unparsable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable

from . import catalog, category, center, diagram, fourmanifolds, links, statesum
from .errors import InputError, TqftError
from .scalars import CycloScalar, embed_complex

DEFAULT_DIGITS = 12


class Output:
    """Collects (key, value) pairs and renders them as text or JSON."""

    def __init__(self, fmt: str, digits: int):
        self.fmt = fmt
        self.digits = digits
        self.doc: dict[str, Any] = {}

    def scalar(self, x) -> Any:
        approx = embed_complex(x, self.digits).format(self.digits)
        if self.fmt == "json":
            return {"exact": x.to_json(), "approx": approx} if isinstance(x, CycloScalar) else {"approx": approx}
        return f"{x}  (~ {approx})" if isinstance(x, CycloScalar) else approx

    def matrix(self, m) -> Any:
        if self.fmt == "json":
            return [[self.scalar(x) for x in row] for row in m]
        return [[embed_complex(x, self.digits).format(self.digits) for x in row] for row in m]

    def put(self, key: str, value: Any) -> None:
        self.doc[key] = value

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.doc, indent=2, ensure_ascii=False)
        lines = []
        for k, v in self.doc.items():
            if isinstance(v, list) and v and isinstance(v[0], list):
                lines.append(f"{k}:")
                width = max(len(str(x)) for row in v for x in row)
                lines.extend("  " + "  ".join(str(x).rjust(width) for x in row) for row in v)
            elif isinstance(v, list):
                lines.append(f"{k}: " + ", ".join(map(str, v)))
            else:
                lines.append(f"{k}: {v}")
        return "\n".join(lines)


def _read(loader: Callable, path: str):
    """Load an input file, mapping every I/O or parse problem to ``InputError``."""
    try:
        return loader(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except (TqftError, KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _category(selector: str | None, *, check: bool = True):
    if selector is None:
        raise InputError("a --category (built-in name or file) is required")
    if selector in catalog.list_builtins():
        return catalog.builtin(selector)
    if not os.path.exists(selector):
        raise InputError(f"{selector!r} is neither a built-in category ({', '.join(catalog.list_builtins())}) nor a file")
    C = _read(category.PremodularData.load, selector)
    if check:
        rep = category.validate(C)
        if not rep.passed:
            raise category.CategoryDataError(f"{selector}: validation failed\n{rep.summary()}")
    return C


def _pair(text: str, C) -> tuple[int, ...]:
    try:
        return tuple(_label(x.strip(), C) for x in text.split(","))
    except KeyError as exc:
        raise InputError(str(exc.args[0] if exc.args else exc)) from exc


def _label(x: str, C) -> int:
    """Label by name, falling back to a numeric index."""
    if x in C.labels:
        return C.labels.index(x)
    return C.index(int(x) if x.isdigit() else x)


# ---------------------------------------------------------------------------
# subcommands


def cmd_cat_list(args, out: Output) -> None:
    out.put("builtins", catalog.list_builtins())


def cmd_cat_validate(args, out: Output) -> int:
    C = _category(args.target, check=False)
    rep = category.validate(C)
    out.put("category", C.name)
    out.put("passed", rep.passed)
    if not rep.passed:
        failed = [{"axiom": a, "witness": list(w)} for a, w, _, _ in rep.failures]
        out.put("failures", failed if out.fmt == "json" else [f"{f['axiom']}@{tuple(f['witness'])}" for f in failed])
        print(rep.summary(), file=sys.stderr)
        return 1
    return 0


def cmd_cat_info(args, out: Output) -> None:
    C = _category(args.target)
    consts = category.derived_constants(C)
    out.put("category", C.name)
    out.put("labels", C.labels)
    out.put("D", out.scalar(consts["D"]))
    out.put("p_plus", out.scalar(consts["p_plus"]))
    out.put("p_minus", out.scalar(consts["p_minus"]))
    out.put("kappa", None if C.kappa is None else out.scalar(C.kappa))
    out.put("S", out.matrix(category.s_matrix(C)))
    out.put("modular", category.is_modular(C))
    out.put("muger_center", [C.labels[i] for i in category.muger_center(C)])


def cmd_diagram_eval(args, out: Output) -> None:
    C = _category(args.category)
    d = _read(diagram.SlicedDiagram.load, args.file)
    m = diagram.evaluate(d, C)
    if not m.source and not m.target:
        out.put("value", out.scalar(m.scalar()))
        return
    lab = C.labels
    out.put("shape", list(m.shape))
    if out.fmt == "json":
        blocks = m.to_json()["blocks"]
        for b in blocks:
            b["matrix"] = [[out.scalar(CycloScalar.from_json(x)) if "N" in x else x for x in row] for row in b["matrix"]]
        out.put("blocks", blocks)
    else:
        for c, (_, _, mat) in sorted(m.blocks.items()):
            out.put(f"charge {lab[c]}", out.matrix(mat) if mat and mat[0] else "empty")


def cmd_rt(args, out: Output) -> None:
    C = _category(args.category)
    L = _read(links.FramedLink.load, args.file)
    out.put("components", len(L))
    out.put("signature", links.link_signature(L))
    out.put("zrt", out.scalar(links.zrt3(L, C)))


def cmd_cy(args, out: Output) -> int:
    C = _category(args.category)
    K = _read(fourmanifolds.KirbyPresentation.load, args.file)
    out.put("euler_characteristic", fourmanifolds.euler_char(K))
    out.put("signature", fourmanifolds.sigma4(K))
    closed = fourmanifolds.zcy_closed(K, C)
    out.put("zcy_closed", out.scalar(closed))
    if args.check_formula:
        formula = fourmanifolds.zcy_formula(K, C)
        out.put("zcy_formula", out.scalar(formula))
        out.put("equal", closed == formula)
        if closed != formula:
            print("zcy_closed and zcy_formula differ", file=sys.stderr)
            return 1
    return 0


def cmd_wall(args, out: Output) -> None:
    t = _read(fourmanifolds.LagrangianTriple.load, args.file)
    out.put("wall_index", fourmanifolds.wall_index(t))


def cmd_statesum(args, out: Output) -> None:
    C = _category(args.category)
    T = _read(statesum.OrderedTriangulation.load, args.file)
    out.put("n0", T.n0)
    out.put("n1", T.n1)
    out.put("projected_colorings", statesum.projected_cost(T, C))
    val = statesum.cy_statesum(T, C, budget=args.budget, convention=args.convention, threads=args.threads)
    out.put("zcy", out.scalar(val))


def _center_obj(obj, C, out: Output):
    if out.fmt == "json":
        return [{"left": C.labels[i], "right": C.labels[j], "mult": m} for i, j, m in obj.terms()]
    return obj.describe(C.labels)


def cmd_center_fuse(args, out: Output) -> None:
    C = _category(args.category)
    a, b = _pair(args.a, C), _pair(args.b, C)
    if len(a) != 2 or len(b) != 2:
        raise InputError("center fuse expects two label pairs i,j and k,l")
    n = C.rank
    res = center.reduced_tensor(center.CenterObject.simple(*a, n), center.CenterObject.simple(*b, n), C)
    out.put("product", _center_obj(res, C, out))


def cmd_center_qrank(args, out: Output) -> None:
    C = _category(args.category)
    q = _pair(args.labels, C)
    if len(q) != 4:
        raise InputError("center qrank expects four labels i,j,k,l")
    Q = center.q_projector(*q, C)
    out.put("rank", Q.rank())
    out.put("idempotent", (Q @ Q) == Q)
    out.put("predicted_rank", center.algebraic_q_rank(*q, C))


def cmd_center_table(args, out: Output) -> None:
    C = _category(args.category)
    lab = C.labels
    rows = []
    for (i, j), (k, l), res in center.fusion_table(C):
        if out.fmt == "json":
            rows.append({"a": [lab[i], lab[j]], "b": [lab[k], lab[l]], "product": _center_obj(res, C, out)})
        else:
            rows.append(f"({lab[i]},{lab[j]}) x ({lab[k]},{lab[l]}) = {res.describe(lab)}")
    if out.fmt == "json":
        out.put("table", rows)
    else:
        out.put("table", "\n  " + "\n  ".join(rows))


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--digits", type=int, default=argparse.SUPPRESS, help="digits of complex approximations")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    cat_opt = argparse.ArgumentParser(add_help=False)
    cat_opt.add_argument("--category", "-c", help="built-in name or category file")

    p = argparse.ArgumentParser(prog="tqft", description="Exact quantum invariants from premodular category data.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("cat", help="category catalog and checks").add_subparsers(dest="action", required=True)
    cat.add_parser("list", parents=[common]).set_defaults(func=cmd_cat_list)
    v = cat.add_parser("validate", parents=[common])
    v.add_argument("target")
    v.set_defaults(func=cmd_cat_validate)
    i = cat.add_parser("info", parents=[common])
    i.add_argument("target")
    i.set_defaults(func=cmd_cat_info)

    dg = sub.add_parser("diagram", help="sliced diagram evaluation").add_subparsers(dest="action", required=True)
    e = dg.add_parser("eval", parents=[common, cat_opt])
    e.add_argument("file")
    e.set_defaults(func=cmd_diagram_eval)

    rt = sub.add_parser("rt", parents=[common, cat_opt], help="surgery invariant of a framed link")
    rt.add_argument("file")
    rt.set_defaults(func=cmd_rt)

    cy = sub.add_parser("cy", parents=[common, cat_opt], help="4-manifold invariant from a Kirby presentation")
    cy.add_argument("file")
    cy.add_argument("--check-formula", action="store_true")
    cy.set_defaults(func=cmd_cy)

    w = sub.add_parser("wall", parents=[common], help="Wall index of a Lagrangian triple")
    w.add_argument("file")
    w.set_defaults(func=cmd_wall)

    ss = sub.add_parser("statesum", parents=[common, cat_opt], help="state sum on an ordered triangulation")
    ss.add_argument("file")
    ss.add_argument("--budget", type=int, default=None)
    ss.add_argument("--convention", choices=["dual", "cky"], default="dual")
    ss.set_defaults(func=cmd_statesum)

    ce = sub.add_parser("center", help="reduced tensor product on the center").add_subparsers(dest="action", required=True)
    f = ce.add_parser("fuse", parents=[common, cat_opt])
    f.add_argument("a", help="i,j")
    f.add_argument("b", help="k,l")
    f.set_defaults(func=cmd_center_fuse)
    q = ce.add_parser("qrank", parents=[common, cat_opt])
    q.add_argument("labels", help="i,j,k,l")
    q.set_defaults(func=cmd_center_qrank)
    t = ce.add_parser("table", parents=[common, cat_opt])
    t.set_defaults(func=cmd_center_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "text")
    digits = getattr(args, "digits", DEFAULT_DIGITS)
    args.threads = getattr(args, "threads", 1)
    out = Output(fmt, digits)
    try:
        code = args.func(args, out) or 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TqftError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    print(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
