#!/usr/bin/env python3
# Copyright 2026 The stegoledger Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference values for the statistics tests, computed with SciPy.

The output is frozen into tests/test_stats.cpp.
"""
import numpy as np
from scipy import stats

print("chi2.sf(300, 255) =", repr(stats.chi2.sf(300, 255)))
print("chi2.sf(10, 4)    =", repr(stats.chi2.sf(10, 4)))
print("chi2.sf(3.5, 1)   =", repr(stats.chi2.sf(3.5, 1)))
print("binom upper P(X>=7; 10, 0.5)   =", repr(stats.binom.sf(6, 10, 0.5)))
print("binom upper P(X>=3; 100, 0.01) =", repr(stats.binom.sf(2, 100, 0.01)))

# Monobit on bytes 0..99: bits counted, z = |2*ones - n| / sqrt(n).
data = bytes(range(100))
bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
n = bits.size
s = abs(2 * int(bits.sum()) - n)
z = s / np.sqrt(n)
print("monobit(0..99) stat =", repr(z), "p =", repr(2 * stats.norm.sf(z)))

# Byte chi-square on bytes i*i mod 256 for i in 0..999.
data = bytes((i * i) % 256 for i in range(1000))
counts = np.bincount(np.frombuffer(data, dtype=np.uint8), minlength=256)
chi, p = stats.chisquare(counts)
print("byte_chi_square(i^2) stat =", repr(chi), "p =", repr(p))

# Homogeneity of two byte samples: contingency table over observed symbols.
a = bytes((3 * i) % 7 for i in range(500))
b = bytes((5 * i + 1) % 9 for i in range(400))
ca = np.bincount(np.frombuffer(a, dtype=np.uint8), minlength=256)
cb = np.bincount(np.frombuffer(b, dtype=np.uint8), minlength=256)
keep = (ca + cb) > 0
chi, p, dof, _ = stats.chi2_contingency(np.vstack([ca[keep], cb[keep]]), correction=False)
print("byte_homogeneity stat =", repr(chi), "p =", repr(p), "dof =", dof)

# Two-proportion z test on bit frequencies.
a = bytes([0xFF] * 30 + [0x00] * 70)
b = bytes([0xF0] * 100)
oa = np.unpackbits(np.frombuffer(a, dtype=np.uint8)).sum()
ob = np.unpackbits(np.frombuffer(b, dtype=np.uint8)).sum()
na, nb = 8 * len(a), 8 * len(b)
pool = (oa + ob) / (na + nb)
z = abs(oa / na - ob / nb) / np.sqrt(pool * (1 - pool) * (1 / na + 1 / nb))
print("monobit_two_sample stat =", repr(z), "p =", repr(2 * stats.norm.sf(z)))
