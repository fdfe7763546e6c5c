"""Iteration count and final gap of the SDP solver as the initial dual scale varies."""
import argparse

import numpy as np

import warmqaoa.gw as gw
from warmqaoa.graphs import generate_u3r


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--graphs", type=int, default=5)
    ap.add_argument("--scales", default="1.5,2,3,4.4,6,10,20")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    graphs = [generate_u3r(args.n, s) for s in np.random.SeedSequence(args.seed).spawn(args.graphs)
              for s in [np.random.default_rng(s)]]
    ref = [gw.solve_sdp(g, tol=1e-9).objective for g in graphs]
    print("scale  solved  mean_iters  max_objective_drift")
    for scale in map(float, args.scales.split(",")):
        gw.INIT_DUAL_SCALE = scale
        iters, drift = [], []
        for g, r in zip(graphs, ref):
            try:
                st = gw.solve_sdp(g)
            except gw.NumericalBreakdown:
                continue
            iters.append(st.iterations)
            drift.append(abs(st.objective - r))
        if iters:
            print(f"{scale:5.1f}  {len(iters):3d}/{len(graphs)}  {np.mean(iters):10.1f}  {max(drift):.2e}")
        else:
            print(f"{scale:5.1f}  {0:3d}/{len(graphs)}  breakdown at the starting point")

if __name__ == "__main__":
    main()
