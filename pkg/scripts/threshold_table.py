"""Blow-up thresholds per criterion for the hypersurface and double-plane families.

Prints a Markdown table; the Noether-match column is the k landing the blow-up
on c1^2 = 2 p_g - 4, marked with * when it is at least the 25/57 threshold.
"""

import argparse

from swobstruct.homeo import noether_match_k
from swobstruct.obstructions import threshold_table
from swobstruct.surface_algebra import double_plane_invariants, hypersurface_invariants


def rows(name, maker, params):
    for p in params:
        X = maker(p)
        t = threshold_table(X)
        k = noether_match_k(X)
        mark = "*" if k >= t["New_25_57"] else ""
        yield (f"{name}({p})", X.c1sq(), X.p_g, t["ASD_11_27"], t["New_25_57"], t["LNO_2_3"], t["HT"], f"{k}{mark}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=20)
    ap.add_argument("--m-max", type=int, default=40)
    args = ap.parse_args()
    head = ("X", "c1^2", "p_g", "11/27", "25/57", "2/3", "HT", "noether k")
    print("| " + " | ".join(head) + " |")
    print("|" + "---|" * len(head))
    for r in list(rows("hypersurface", hypersurface_invariants, range(5, args.l_max + 1))) + \
            list(rows("doubleplane", double_plane_invariants, range(5, args.m_max + 1))):
        print("| " + " | ".join(map(str, r)) + " |")


if __name__ == "__main__":
    main()
