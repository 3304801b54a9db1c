"""Print dim S(m|n,d) and dim Q(n,d), commutant rank next to the closed form."""

import argparse

from superpoly.centralizer import schur_I_commutant, schur_I_dim, schur_II_commutant, schur_II_dim
from superpoly.scalars import make_field


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=0)
    ap.add_argument("--max", type=int, default=2, help="largest m, n and d")
    args = ap.parse_args()
    f = make_field(args.p)
    print(f"field {f.name}")
    print(f"{'algebra':<12}{'commutant':>10}{'closed':>8}")
    for d in range(1, args.max + 1):
        for m in range(args.max + 1):
            for n in range(args.max + 1):
                if m + n == 0:
                    continue
                print(f"{f'S({m}|{n},{d})':<12}{schur_I_commutant(m, n, d, f).dim:>10}{schur_I_dim(m, n, d):>8}")
        for n in range(1, args.max + 1):
            print(f"{f'Q({n},{d})':<12}{schur_II_commutant(n, d, f).dim:>10}{schur_II_dim(n, d):>8}")


if __name__ == "__main__":
    main()
