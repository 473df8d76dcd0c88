"""List homeomorphic (obstructed, Kahler-Einstein) pairs and why each parameter is skipped."""

import argparse

from swobstruct.homeo import KStrategy, candidate_pair, noether_match_k, noether_partner
from swobstruct.obstructions import NEW, k_threshold
from swobstruct.surface_algebra import DoublePlane, Hypersurface, SurfaceSpec, blow_up


def explain(root: SurfaceSpec) -> str:
    X = root.evaluate()
    k, k_min = noether_match_k(X), k_threshold(NEW, X.c1sq())
    if k < k_min:
        return f"k={k} below threshold {k_min}"
    M = blow_up(X, k)
    if M.tau % 16 == 0:
        return f"k={k}: tau={M.tau} = 0 mod 16, partner parity undecided"
    return f"k={k}: partner {noether_partner(M.c1sq(), M.p_g)} rejected"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=20)
    ap.add_argument("--m-max", type=int, default=40)
    args = ap.parse_args()
    roots = [SurfaceSpec(Hypersurface(l)) for l in range(5, args.l_max + 1)]
    roots += [SurfaceSpec(DoublePlane(m)) for m in range(5, args.m_max + 1)]
    for root in roots:
        pair = candidate_pair(root, KStrategy.NoetherMatch)
        if pair:
            print(f"{pair.obstructed}  ~  {pair.einstein_witness}  [{pair.shared_type}]")
        else:
            print(f"{root}: none ({explain(root)})")


if __name__ == "__main__":
    main()
