"""Operator norm of two unit disks as a function of their separation.

Usage: python3 scripts/separation_decay.py [--trunc 32]

For disks of radius 1 centered at -d/2 and d/2 the leading off-diagonal
entry is -1/d^2, so sigma_max should track 1/d^2 closely once d is a few
radii: the printed ratio column is sigma_max * d^2.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from faberkit import ConformalMapSpec, MultiDomainConfig, assemble, operator_norm


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trunc", type=int, default=32)
    args = parser.parse_args()

    print("%-8s %-18s %-10s" % ("d", "sigma_max", "sigma*d^2"))
    for d in (2.5, 3.0, 4.0, 5.0, 7.0, 10.0, 15.0):
        config = MultiDomainConfig(
            maps=(ConformalMapSpec(center=-d / 2, coeffs=(1.0,)),
                  ConformalMapSpec(center=d / 2, coeffs=(1.0,))))
        gr = assemble(config, args.trunc, policy="definitional")
        sigma = operator_norm(gr)
        print("%-8.2f %-18.12f %-10.6f" % (d, sigma, sigma * d * d))


if __name__ == "__main__":
    main()
