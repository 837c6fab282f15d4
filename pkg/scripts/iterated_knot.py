#!/usr/bin/env python3
"""The iterated example: Seifert -2 and -3 surgeries on the trefoil, connect
sum, then the -1/6 surgery on the sum.  Prints the intermediate Alexander
range table (six Spin^c classes) and the final knot's genus."""

from fractions import Fraction

from knotlattice.family import family_from_line, tensor_families
from knotlattice.homology import alexander_range, top_alexander_rank
from knotlattice.reduction import ar_line
from knotlattice.surgery import surgered_family


def main():
    X = family_from_line(ar_line([2, 3]))
    print("trefoil line family: sigma0^2 =", X.sigma0_sq)
    A = surgered_family(X, framing=-8)
    B = surgered_family(X, framing=-9)
    print(f"surgeries: Sigma^2 = {A.meta['sigma_sq']} and {B.meta['sigma_sq']}")
    Z = tensor_families(A, B)
    print(f"\nconnect sum: {len(Z.spinc)} Spin^c classes, "
          f"sigma0^2 = {Z.sigma0_sq}")
    print("[j,k]\tmin A\tmax A")
    for lab in Z.spinc:
        j, k = int(lab[0][2]), int(lab[1][2])
        mn, mx = alexander_range(Z.complexes[lab])
        print(f"[{j},{k}]\t{mn}\t{mx}")

    final = surgered_family(Z, framing=-1)
    sigma = final.meta["sigma_sq"]
    assert sigma == Fraction(-1, 6)
    print(f"\nfinal surgery: graph framing -1 -> Seifert framing {sigma}")
    cx = final.complexes[final.spinc[0]]
    print(f"final complex: {len(final.spinc)} Spin^c class, "
          f"{len(cx.cells)} cells")
    top, rank = top_alexander_rank(cx)
    print(f"top Alexander grading: {top} (rank {rank}) -> genus {top}")


if __name__ == "__main__":
    main()
