"""Command-line front end: parse group/field descriptions, dispatch to the library,
emit JSON (default, schema ``edim/1``) or plain-text tables.

Exit codes: 0 success; 2 parse/usage errors; 3 a checker refused the size
(TooLarge/Unsupported); 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import (DegreeTooLarge, EdimError, Inconsistent, ParseError,
                     SplittingTooLarge, TooLarge, Unsupported)
from .exactfield import fq_context, is_prime
from .fielddesc import (INF, NO, UNKNOWN, YES, Custom, Cyclotomic,
                        FiniteField, RationalField, char_of,
                        finite_field_from_q)
from .groups import Alt, Cyc, Dih, ElemAb, Product, Sym
from .crossratio import CRSymbol, cr_rewrite, sn_action, verify_faithful
from .ratfunc import render
from .tschirnhaus import (general_poly, reduce_general, verify_specialization)
from .edengine import BoundInterval, bound, trace_json
from . import pgl2 as _pgl2

SCHEMA = "edim/1"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_group(text):
    """Expr := Atom | Expr "x" Expr; Atom := S|A|D|C int | E(p, r)."""
    s = "".join(text.split())
    pos = 0

    def fail(msg, at):
        raise ParseError("%s at position %d in %r" % (msg, at, text))

    def read_int(why):
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            fail("expected an integer (%s)" % why, start)
        return int(s[start:pos])

    def read_atom():
        nonlocal pos
        if pos >= len(s):
            fail("expected a group atom", pos)
        c = s[pos]
        if c in "SADC":
            pos += 1
            n = read_int("after %r" % c)
            return {"S": Sym, "A": Alt, "D": Dih, "C": Cyc}[c](n)
        if c == "E":
            pos += 1
            if pos >= len(s) or s[pos] != "(":
                fail("expected '(' after E", pos)
            pos += 1
            p = read_int("prime for E")
            if not is_prime(p):
                raise ValueError("%d is not prime" % p)
            if pos >= len(s) or s[pos] != ",":
                fail("expected ',' in E(p,r)", pos)
            pos += 1
            r = read_int("rank for E")
            if pos >= len(s) or s[pos] != ")":
                fail("expected ')' closing E(p,r)", pos)
            pos += 1
            if r < 1:
                raise ValueError("rank must be >= 1")
            return ElemAb(p, r)
        fail("unknown atom %r" % c, pos)

    expr = read_atom()
    while pos < len(s):
        if s[pos] != "x":
            fail("expected 'x' between factors", pos)
        pos += 1
        expr = Product(expr, read_atom())
    return expr


def parse_field(text):
    """Q | Qzeta(m) | F(q) | custom{key=value, ...}."""
    s = text.strip()
    if s == "Q":
        return RationalField()
    if s.startswith("Qzeta(") and s.endswith(")"):
        body = s[len("Qzeta("):-1]
        if not body.isdigit():
            raise ParseError("Qzeta needs an integer, got %r" % body)
        return Cyclotomic(int(body))
    if s.startswith("F(") and s.endswith(")"):
        body = s[2:-1]
        if not body.isdigit():
            raise ParseError("F needs a prime power, got %r" % body)
        q = int(body)
        if q < 2:
            raise ParseError("%d is not a prime power" % q)
        try:
            return finite_field_from_q(q)
        except EdimError:
            raise ParseError("%d is not a prime power" % q)
    if s.startswith("custom{") and s.endswith("}"):
        return _parse_custom(s[len("custom{"):-1], text)
    raise ParseError("unrecognized field description %r" % text)


def _parse_custom(body, original):
    kwargs = {}
    keymap = {"char": "characteristic", "zeta_yes": "zeta_yes",
              "zeta_no": "zeta_no", "real_zeta_yes": "real_zeta_yes",
              "real_zeta_no": "real_zeta_no", "fp_dim": "fp_dim"}
    for part in _split_custom(body):
        if not part:
            continue
        if "=" not in part:
            raise ParseError("expected key=value in %r" % original)
        key, _, val = part.partition("=")
        key, val = key.strip(), val.strip()
        if key not in keymap:
            raise ParseError("unknown custom key %r" % key)
        if key in ("zeta_yes", "zeta_no", "real_zeta_yes", "real_zeta_no"):
            if not (val.startswith("[") and val.endswith("]")):
                raise ParseError("%s needs [..] in %r" % (key, original))
            inner = val[1:-1].strip()
            items = [x.strip() for x in inner.split(",")] if inner else []
            if any(not x.isdigit() for x in items):
                raise ParseError("non-integer in %s of %r" % (key, original))
            kwargs[keymap[key]] = frozenset(int(x) for x in items)
        elif key == "fp_dim":
            if val == "inf":
                kwargs["fp_dim"] = INF
            elif val.isdigit():
                kwargs["fp_dim"] = int(val)
            else:
                raise ParseError("fp_dim must be an integer or inf")
        else:
            if not val.isdigit():
                raise ParseError("char must be an integer")
            kwargs["characteristic"] = int(val)
    return Custom(**kwargs)


def _split_custom(body):
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def render_group(expr):
    return str(expr)


def render_field(fd):
    if isinstance(fd, RationalField):
        return "Q"
    if isinstance(fd, Cyclotomic):
        return "Qzeta(%d)" % fd.m
    if isinstance(fd, FiniteField):
        return "F(%d)" % fd.q
    return fd.describe()


# ---------------------------------------------------------------------------
# subcommand bodies (each returns a JSON-able dict)
# ---------------------------------------------------------------------------

def _tri(t):
    return {YES: "Yes", NO: "No", UNKNOWN: "Unknown"}[t]


def _cmd_bound(args):
    g = parse_group(args.group)
    fd = parse_field(args.field)
    interval, nodes = bound(g, fd)
    out = trace_json(g, fd, interval, nodes)
    out["interval"] = interval.json()
    return out


def _cmd_table(args):
    groups = [parse_group(t) for t in args.groups.split(",")]
    fields = [parse_field(t) for t in args.fields.split(",")]
    rows = []
    for g in groups:
        for fd in fields:
            interval, _ = bound(g, fd)
            rows.append({"group": str(g), "field": fd.describe(),
                         "interval": interval.json()})
    return {"rows": rows}


def _parse_symbol(text, n):
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 4 or any(not x.isdigit() for x in parts):
        raise ParseError("--symbol needs four integers i,j,k,l")
    return CRSymbol(n, tuple(int(x) for x in parts))


def _cmd_crossratio(args):
    if args.mode == "rewrite":
        sym = _parse_symbol(args.symbol, args.n)
        return {"symbol": str(sym), "expr": render(cr_rewrite(sym))}
    if args.mode == "action":
        parts = [x.strip() for x in args.perm.split(",")]
        if len(parts) != args.n or any(not x.isdigit() for x in parts):
            raise ParseError("--perm needs the images of 1..n, comma-joined")
        images = [int(x) for x in parts]
        if sorted(images) != list(range(1, args.n + 1)):
            raise ParseError("--perm must be a permutation of 1..%d" % args.n)
        sigma = tuple(x - 1 for x in images)
        action = sn_action(sigma)
        return {"perm": images,
                "generators": {"t%d" % i: render(img)
                               for i, img in sorted(action.items())}}
    report = verify_faithful(args.n)
    return {"n": report.n, "passed": report.passed,
            "checked": report.checked}


def _cmd_tschirnhaus(args):
    if args.char and not is_prime(args.char):
        raise ParseError("--char must be 0 or a prime")
    h, record = reduce_general(args.n, args.char)
    steps = [{"kind": step.kind(),
              "lambda": None if step.lam is None else render(step.lam)}
             for step in record.steps]
    coeffs = [c.render() for c in h.coeffs]
    out = {"n": args.n, "char": args.char, "steps": steps,
           "reduced_coefficients": coeffs}
    if args.mode == "reduce":
        return out
    # verify: randomized specialization oracle over small prime fields
    rng = random.Random(args.seed)
    f = general_poly(args.n, args.char)
    passes = skips = trials = 0
    while passes < args.count and trials < 60 * args.count:
        trials += 1
        if args.char == 0:
            ctx = fq_context(101, 1)
        else:
            ctx = fq_context(args.char, rng.choice([1, 1, 2]))
        els = list(ctx.elements())
        assignment = {"t%d" % (i + 1): rng.choice(els)
                      for i in range(args.n)}
        try:
            ok = verify_specialization(f, h, record, assignment, ctx)
        except (EdimError, ZeroDivisionError) as exc:
            if isinstance(exc, (TooLarge, SplittingTooLarge)) \
                    or "pole" in str(exc).lower():
                skips += 1
                continue
            raise
        if not ok:
            raise Inconsistent("specialization mismatch at %r" % assignment)
        passes += 1
    out.update({"seed": args.seed, "passes": passes, "skips": skips,
                "verified": passes >= args.count})
    return out


def _cmd_pgl2(args):
    fd = finite_field_from_q(args.q)
    ctx = fq_context(fd.p, fd.k)
    if args.mode == "orders":
        census = _pgl2.order_census(ctx)
        return {"q": args.q,
                "orders": {str(o): len(v) for o, v in sorted(census.items())}}
    g = parse_group(args.group)
    if args.mode == "embed":
        wit = _pgl2.pgl2_embeds(g, ctx)
        if wit is None:
            return {"q": args.q, "group": str(g), "embeds": False}
        return {"q": args.q, "group": str(g), "embeds": True,
                "images": [_mat_json(e.rep) for e in wit.images]}
    # reps: explicit 2-dimensional representations
    if isinstance(g, Dih):
        if g.n == char_of(fd):
            mats = _pgl2.dp_representation(ctx)
        else:
            mats = _pgl2.dn_representation(ctx, g.n)
        return {"q": args.q, "group": str(g),
                "matrices": [_mat_json(m) for m in mats]}
    if isinstance(g, ElemAb):
        if g.p != fd.p or fd.k < g.r:
            raise Unsupported("E(%d,%d) has no faithful unipotent model "
                              "over F_%d" % (g.p, g.r, args.q))
        gen = ctx.gen() if fd.k > 1 else ctx.one
        alphas, acc = [], ctx.one
        for _ in range(g.r):
            alphas.append(acc)
            acc = acc * gen
        mats = _pgl2.elemab_representation(ctx, alphas)
        return {"q": args.q, "group": str(g),
                "matrices": [_mat_json(m) for m in mats]}
    raise Unsupported("reps supports D<n> and E(p,r) only")


def _mat_json(m):
    return [[x.encode() for x in row]
            for row in ((m.a, m.b), (m.c, m.d))]


def _cmd_field(args):
    fd = parse_field(args.field)
    if args.query == "char":
        return {"field": fd.describe(), "query": "char",
                "answer": char_of(fd)}
    if args.query == "fp_dim":
        if char_of(fd) == 0:
            raise ParseError("fp_dim is meaningless in characteristic 0")
        d = fd.fp_dimension()
        return {"field": fd.describe(), "query": "fp_dim",
                "answer": "inf" if d is INF else d}
    if args.n is None:
        raise ParseError("--n is required for query %r" % args.query)
    if args.query == "zeta":
        return {"field": fd.describe(), "query": "zeta", "n": args.n,
                "answer": _tri(fd.contains_zeta(args.n))}
    if args.query == "real_zeta":
        return {"field": fd.describe(), "query": "real_zeta", "n": args.n,
                "answer": _tri(fd.contains_real_zeta(args.n))}
    if args.query == "extend":
        new = fd.extend_with_zeta(args.n)
        return {"field": fd.describe(), "query": "extend", "n": args.n,
                "answer": render_field(new)}
    raise ParseError("unknown field query %r" % args.query)


# ---------------------------------------------------------------------------
# plain-text rendering
# ---------------------------------------------------------------------------

def _plain(cmd, out):
    lines = []
    if cmd == "bound":
        q = out["query"]
        lines.append("%s over %s: %s" % (q["group"], q["field"],
                                         _iv_str(out["interval"])))
        for node in out["nodes"]:
            c = node["conclusion"]
            lines.append("  %-12s %s / %s -> %s  [%s]"
                         % (node["rule"], c["group"], c["field"],
                            _iv_str(c["interval"]), node["citation"]))
    elif cmd == "table":
        for row in out["rows"]:
            lines.append("%-16s %-14s %s" % (row["group"], row["field"],
                                             _iv_str(row["interval"])))
    else:
        lines.append(json.dumps(out, indent=2, sort_keys=True))
    return "\n".join(lines)


def _iv_str(iv):
    return "[%s, %s]" % (iv["lo"], iv["hi"])


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    top = _Parser(prog="edim", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="certified interval for ed_K(G)")
    p.add_argument("--group", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--plain", action="store_true")

    p = sub.add_parser("table", help="grid of bounds")
    p.add_argument("--groups", required=True)
    p.add_argument("--fields", required=True)
    p.add_argument("--plain", action="store_true")

    p = sub.add_parser("crossratio")
    p.add_argument("mode", choices=("rewrite", "action", "verify"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--symbol", default=None)
    p.add_argument("--perm", default=None)
    p.add_argument("--plain", action="store_true")

    p = sub.add_parser("tschirnhaus")
    p.add_argument("mode", choices=("reduce", "verify"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--plain", action="store_true")

    p = sub.add_parser("pgl2")
    p.add_argument("mode", choices=("orders", "embed", "reps"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--group", default=None)
    p.add_argument("--plain", action="store_true")

    p = sub.add_parser("field")
    p.add_argument("--field", required=True)
    p.add_argument("--query", required=True,
                   choices=("zeta", "real_zeta", "char", "fp_dim", "extend"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--plain", action="store_true")
    return top


_BODIES = {"bound": _cmd_bound, "table": _cmd_table,
           "crossratio": _cmd_crossratio, "tschirnhaus": _cmd_tschirnhaus,
           "pgl2": _cmd_pgl2, "field": _cmd_field}


def run(argv):
    """Execute one command; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("crossratio",) and args.mode == "rewrite" \
                and args.symbol is None:
            raise ParseError("crossratio rewrite needs --symbol")
        if args.command in ("crossratio",) and args.mode == "action" \
                and args.perm is None:
            raise ParseError("crossratio action needs --perm")
        if args.command == "pgl2" and args.mode in ("embed", "reps") \
                and args.group is None:
            raise ParseError("pgl2 %s needs --group" % args.mode)
        out = _BODIES[args.command](args)
    except Inconsistent as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}))
        return 4
    except (TooLarge, Unsupported, DegreeTooLarge, SplittingTooLarge) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}))
        return 3
    except (ParseError, EdimError, ValueError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}))
        return 2
    out = {"schema": SCHEMA, "command": args.command, **out}
    if getattr(args, "plain", False):
        print(_plain(args.command, out))
    else:
        print(json.dumps(out, sort_keys=True))
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
