"""Why fresh subsamples matter when an attacker knows how readings differ.

Eight enrollments of one source, each reading shifted by a public offset.
The attacker sees every helper and every key except one, then guesses
whether a challenge is that key or random noise.

Run: python3 demos/03_known_shift.py
"""

import numpy as np

from fuzex.games import XorOfPadsDistinguisher, run_reusability_suite
from fuzex.params import Params
from fuzex.sources import SourceModel

model = SourceModel.uniform(2048)
attack = [XorOfPadsDistinguisher()]
rng = np.random.default_rng(3)

p1 = Params.build(1, 2048, 32, 4, 12, 8, t_err=8, sigma=2**-4, eta=8)
p2 = Params.build(2, 2048, 32, 4, 12, 8, lam=8, t_err=8, sigma=2**-4, eta=8)

for name, p in (("fresh index sets (rfe)", p1), ("shared CRS (srrfe)", p2)):
    scheme = "rfe" if p.construction == 1 else "srrfe"
    est = run_reusability_suite(scheme, attack, model, p, 300, rng)["xor-of-p"]
    print(f"{name:24s} advantage {est.point:.3f}  95% CI [{est.lower:.3f}, {est.upper:.3f}]")

# With a shared CRS, the XOR of two enrollments' locks cancels the unknown
# reading and leaves E(d_j ^ d_k on A_i), which the attacker can compute,
# so a revealed key unmasks the hidden one.
