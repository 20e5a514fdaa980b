"""Sweep k(e)/beta_tilde(nu) over t and the bump radius for O(5,2).

At R = 1 the ratio only settles for large ||nu||: the transform of the
mollifier decays like exp(-c sqrt(|xi|)), while beta grows with degree 8,
so mass far from nu dominates for small t.
"""
import argparse

import numpy as np

from thetabounds.density import beta_tilde
from thetabounds.paleywiener import BumpSpec, TestFunctionTransform, k_at_identity
from thetabounds.rootsys import SpectralParameter, build_root_system, orthogonal


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radii", default="1,4")
    ap.add_argument("--t", default="5,10,20,50,100,200")
    args = ap.parse_args()
    sys_ = build_root_system(orthogonal(5, 2))
    ts = [float(x) for x in args.t.split(",")]
    for R in (float(x) for x in args.radii.split(",")):
        bump = BumpSpec(R, radius_cap=max(R, 1.0))
        ratios = []
        for t in ts:
            nu = SpectralParameter.tempered(t * np.array([1.0, 0.4]))
            kv = k_at_identity(TestFunctionTransform(bump, nu, sys_))
            ratios.append(kv.value / beta_tilde(sys_, nu))
            print(f"R={R:g} t={t:g} ratio={ratios[-1]:.6g} tail={kv.tail_fraction:.2g}")
        first4 = ratios[:4]
        print(f"R={R:g} band over the first four t: {max(first4) / min(first4):.4g}")


if __name__ == "__main__":
    main()
