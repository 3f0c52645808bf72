"""PGL_2(F_q) as a source of lower-bound obstructions.

A finite group has essential dimension 1 over F_q only if it embeds into
PGL_2(F_q).  The element-order census and the trace invariant
tr(A)^2/det(A) make "does not embed" decidable, which is exactly how the
bound engine rules out ed = 1.  The script prints the census for a few q,
runs the exhaustive embedding search for dihedral groups, and compares
with the closed-form criterion the engine uses.

Run:  python3 demos/pgl2_obstructions.py
"""

from edim.edengine import dn_criterion
from edim.exactfield import fq_context
from edim.fielddesc import YES, finite_field_from_q
from edim.groups import Dih
from edim.pgl2 import order_census, pgl2_embeds, trace_invariant


def main():
    for q in (2, 3, 4, 5):
        ctx = fq_context(*_pk(q))
        census = order_census(ctx)
        sizes = {n: len(v) for n, v in sorted(census.items())}
        print("PGL_2(F_%d): |G| = %d, elements per order %s"
              % (q, q ** 3 - q, sizes))

    q = 5
    ctx = fq_context(5, 1)
    print()
    print("Trace invariants of the order-3 elements of PGL_2(F_%d):" % q)
    taus = {trace_invariant(e) for e in order_census(ctx)[3]}
    print("  ", sorted(str(t) for t in taus),
          " (always zeta_3 + zeta_3^{-1} + 2 = 1)")

    print()
    print("Which D_n embed into PGL_2(F_q)?  search vs closed criterion:")
    print("%-6s" % "n", *("q=%-3d" % q for q in (2, 3, 4, 5, 7, 9)))
    for n in (1, 3, 5, 7, 9, 11):
        row = ["%-6d" % n]
        for q in (2, 3, 4, 5, 7, 9):
            ctx = fq_context(*_pk(q))
            found = pgl2_embeds(Dih(n), ctx) is not None
            crit = dn_criterion(n, finite_field_from_q(q)) is YES
            mark = "yes" if found else "no "
            row.append(mark + ("  " if found == crit else "!!"))
        print(" ".join(row))
    print("(a '!!' would flag disagreement between search and criterion)")


def _pk(q):
    fd = finite_field_from_q(q)
    return fd.p, fd.k


if __name__ == "__main__":
    main()
