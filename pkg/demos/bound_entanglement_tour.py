#!/usr/bin/env python3
"""A guided tour of bound entanglement in the two-qutrit family.

Classifies a few landmark states, finds the bound-entangled layer by
sampling, and runs the best-separable-approximation at a showcase point.
"""

from magicsimplex import QPoint, profile
from magicsimplex import geometry, liqiao

def describe(name, q):
    pr = profile(q, mode="both")
    verdict = ("separable candidate" if pr.ppt and not (pr.P or pr.S)
               else "bound entangled" if pr.ppt else "free entangled")
    print(f"{name}: Q = {tuple(round(x, 6) for x in q.q)}")
    print(f"  ppt={pr.ppt}  S={pr.S}  P={pr.P}  ccnr={pr.ccnr}  "
          f"s={pr.s:.6f}  p={pr.p:.3e}")
    print(f"  -> {verdict}\n")

def main():
    describe("maximally mixed", QPoint(3, (1 / 9, 1 / 9, 1 / 9)))
    describe("PPT-boundary showcase", QPoint(3, (2 / 7, 4 / 21, 0)))
    describe("Q1 vertex region", QPoint(3, (0.9, 0.01, 0.01)))

    print("sampling the bound-entangled layer (PPT but S or P)...")
    cloud = geometry.region_cloud("PPT && (P || S)", 300, max_raw=20_000_000)
    frac_s = cloud.flags["S"].mean()
    print(f"  300 states found; {100 * frac_s:.1f}% flagged by S, "
          f"{100 * cloud.flags['P'].mean():.1f}% by P\n")

    q = QPoint(3, (4235 / 50001, 1 / 166, 30 / 113))
    print(f"best separable approximation at Q = {tuple(round(x, 5) for x in q.q)}")
    r = liqiao.bsa(q, restarts=16)
    print(f"  B = {r.B:.6f}")
    print(f"  q_ent = {tuple(round(x, 7) for x in r.q_ent.q)}")
    print(f"  q_sep = {tuple(round(x, 7) for x in r.q_sep.q)}")
    print(f"  reconstruction residual = {r.residual:.2e}")

if __name__ == "__main__":
    main()
