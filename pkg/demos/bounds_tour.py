"""A tour of the bound engine.

Derives certified intervals for the essential dimension of a gallery of
finite groups over several field descriptors, and shows the cited inference
trace behind one of them.

Run:  python3 demos/bounds_tour.py
"""

import json

from edim import (Alt, Cyc, Dih, ElemAb, Product, Sym, Cyclotomic,
                  FiniteField, RationalField, bound, trace_json)

Q = RationalField()
F2 = FiniteField(2, 1)
F4 = FiniteField(2, 2)

GALLERY = [
    (Sym(5), Q), (Sym(6), Q), (Sym(7), Q), (Sym(12), Q),
    (Sym(6), F2),
    (Alt(5), F4), (Alt(8), F2), (Alt(12), Q),
    (Dih(5), Q), (Dih(5), Cyclotomic(5)), (Dih(7), FiniteField(2, 3)),
    (Cyc(6), Q), (Cyc(7), Q),
    (ElemAb(2, 2), F2), (ElemAb(3, 2), F4), (ElemAb(2, 3), Q),
    (Product(Alt(5), Cyc(3)), Cyclotomic(3)),
]


def fmt(iv):
    hi = "inf" if iv.hi == float("inf") else iv.hi
    return "[%s, %s]" % (iv.lo, hi)


def main():
    print("%-14s %-12s %-10s %s" % ("group", "field", "interval", "rules"))
    print("-" * 60)
    for g, fd in GALLERY:
        iv, nodes = bound(g, fd)
        rules = ", ".join(sorted({n.rule for n in nodes}))
        print("%-14s %-12s %-10s %s" % (g, fd.describe(), fmt(iv), rules))

    print()
    print("Full cited trace for ed over F_4 of E(3,2):")
    g, fd = ElemAb(3, 2), F4
    iv, nodes = bound(g, fd)
    print(json.dumps(trace_json(g, fd, iv, nodes), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
