"""From a source description and a failure budget to a full parameter set.

Run: python3 demos/02_planning.py
"""

from fractions import Fraction

from fuzex.cli import plan
from fuzex.params import max_key_length, report, solve_ell

# how many locks does a 1024-bit source with 16 flipped bits need,
# if each lock reads 64 bits and we accept a 1% failure rate?
ell = solve_ell(1024, 64, 16, 32, 0.01)
print(f"locks needed: {ell}")

# key length against the entropy budget: alpha=180, 256 locks, sigma=2^-32, t=64
print("key bits:", max_key_length(180, 256, Fraction(1, 2**32), 64))
print("same with a 128-bit MAC:", max_key_length(180, 256, Fraction(1, 2**32), 64, lam=128,
                                                 construction=2))

params, problems = plan(2, 256, 2048, 256, 4, 1e-6, 0.01, lam=16)
print(report(params))
print("problems:", problems or "none")

# asking for more entropy than a subsample can hold is refused
_, problems = plan(1, 1024, 1024, 64, 16, 1e-9, 0.01)
print("alpha=1024 from 64-bit subsamples:", problems)
