"""Measure the empirical constants frozen in the acceptance suite.

Prints decay constants C_A, the beta/beta_tilde bands on regular rays and
the identity-value ratios to beta_tilde.
"""
import time

import numpy as np

from thetabounds.density import ball_integral, beta_tilde, plancherel_density
from thetabounds.paleywiener import BumpSpec, TestFunctionTransform, decay_constant, ratio_to_majorant
from thetabounds.rootsys import SpectralParameter, build_root_system, orthogonal, regular_direction, unitary


def eqreg_band(desc, n=400):
    sys_ = build_root_system(desc)
    d = regular_direction(sys_)
    ts = np.geomspace(2.0, 200.0, n)
    r = plancherel_density(sys_, ts[:, None] * d) / beta_tilde(sys_, 1j * ts[:, None] * d)
    return r.max() / r.min()


def main():
    b52 = build_root_system(orthogonal(5, 2))
    t = TestFunctionTransform(BumpSpec(), SpectralParameter.tempered([20.0, 8.0]), b52)
    for A in (2, 4, 8):
        t0 = time.time()
        print(f"decay A={A}: C_A={decay_constant(t, A):.6g}  ({time.time() - t0:.1f}s)")
    for desc in (orthogonal(3, 1), orthogonal(4, 1), orthogonal(5, 2), unitary(2, 1)):
        print(f"eqreg {desc.label()}: band {eqreg_band(desc):.6g}")
    o41 = build_root_system(orthogonal(4, 1))
    r = [ball_integral(o41, [1j * s], 1.0) / beta_tilde(o41, [1j * s]) for s in (5, 10, 20, 50)]
    print("ball O(4,1):", np.round(r, 6), "band", max(r) / min(r))
    for desc, direction in ((orthogonal(4, 1), [1.0]), (orthogonal(5, 2), [1.0, 0.4])):
        sys_ = build_root_system(desc)
        r = []
        for s in (5, 10, 20, 50):
            tf = TestFunctionTransform(BumpSpec(), SpectralParameter.tempered(s * np.array(direction)), sys_)
            r.append(ratio_to_majorant(tf))
        print(f"k(e)/beta_tilde {desc.label()}:", np.round(r, 4), "band", max(r) / min(r))


if __name__ == "__main__":
    main()
