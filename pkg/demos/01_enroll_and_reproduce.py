"""Enroll a noisy reading, then recover the same key from a second reading.

Run: python3 demos/01_enroll_and_reproduce.py
"""

import numpy as np

from fuzex import Params, ToeplitzSeed, generate_crs, rfe, srrfe
from fuzex.sources import NoiseModel, perturb

rng = np.random.default_rng(1)
w = rng.integers(0, 2, 2048, dtype=np.uint8)
w_later = perturb(w, NoiseModel.random(4), rng)
print(f"two readings, {int((w != w_later).sum())} bits apart")

# construction 1: one public seed shared by every enrollment
p1 = Params.build(1, 2048, 256, 7, 11, 128, t_err=4)
z = ToeplitzSeed.random(p1.m, p1.nu, rng)
key, helper = rfe.rfe_gen(w, z, p1, rng)
again = rfe.rfe_rep(w_later, helper, z, p1)
print("construction 1 recovered key:", again is not None and bool(np.array_equal(again, key)))

# construction 2: a common random string fixes the subsamples and the seed;
# the helper carries a MAC tag, so tampering is caught
p2 = Params.build(2, 2048, 256, 7, 2, 128, lam=16, t_err=4)
crs = generate_crs(p2, rng)
key, helper = srrfe.srrfe_gen(w, crs, p2, rng)
print("construction 2 recovered key:", bool(np.array_equal(srrfe.srrfe_rep(w_later, helper, crs, p2), key)))

tampered = srrfe.SrrfeHelperData(helper.p ^ np.eye(*helper.p.shape, dtype=np.uint8), helper.tag,
                                 helper.digest)
print("tampered helper rejected:", srrfe.srrfe_rep(w_later, tampered, crs, p2) is None)

far = rng.integers(0, 2, 2048, dtype=np.uint8)
print("unrelated reading rejected:", srrfe.srrfe_rep(far, helper, crs, p2) is None)
