"""Scan the Werner family and print where each criterion switches on.

    python scripts/werner_scan.py --points 41
"""

import argparse

import numpy as np
from scipy.optimize import brentq

from qsep import classify, maximize_chsh, werner
from qsep.densecoding import dc_advantage


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'p':>6} {'pt_margin':>11} {'maj_margin':>11} {'ent_margin':>11} {'chsh_max':>9} {'dc_adv':>9}  class")
    for p in np.linspace(0, 1, args.points):
        rho = werner(p)
        r = classify(rho)
        chsh, _ = maximize_chsh(rho, restarts=8, seed=args.seed)
        print(f"{p:6.3f} {r.ppt.margin:11.6f} {r.majorization.margin:11.6f} {r.entropy.margin:11.6f} "
              f"{chsh:9.6f} {r.dc_advantage:9.5f}  {r.class_label}")

    def pt(p):
        return classify(werner(p)).ppt.margin

    print()
    print(f"PPT threshold        p = {brentq(pt, 0, 1, xtol=1e-14):.12f}")
    print(f"CHSH threshold       p = {1 / np.sqrt(2):.12f} (2 sqrt(2) p = 2)")
    print(f"dense-coding onset   p = {brentq(lambda p: dc_advantage(werner(p)), 0.5, 1, xtol=1e-14):.12f}")


if __name__ == "__main__":
    main()
