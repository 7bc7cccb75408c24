"""Writes moments.json and truth.json: the shifted-target moments of a known
hermitian energy on the d=2, radius-2 window with a 4-term exponential series.

Convolution powers are computed without truncation and restricted at the end.
"""
import json
import math

import numpy as np

R, N2 = 2, 4
side = 2 * R + 1
y = np.zeros((side, side), dtype=complex)


def put(a, b, v):
    y[a + R, b + R] = v
    y[-a + R, -b + R] = np.conj(v)


put(0, 0, -math.log1p((2 * math.pi) ** -2) + 0.05)
put(1, 0, 0.1 - 0.05j)
put(0, 1, -0.08)
put(1, 1, 0.03 + 0.02j)
put(1, -1, 0.04)
put(2, 0, -0.02j)


def conv(a, b):
    out = np.zeros((a.shape[0] + b.shape[0] - 1,) * 2, dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
    return out


total = np.zeros((1, 1), dtype=complex)
total[0, 0] = 1.0
power = total.copy()
series = {0: total.copy()}
for n in range(1, N2 + 1):
    power = conv(power, y)
    series[n] = power * ((-1) ** n / math.factorial(n))


def restrict(f):
    c = (f.shape[0] - 1) // 2
    return f[c - R:c + R + 1, c - R:c + R + 1]


model = sum(restrict(series[n]) if n else np.pad(series[0], R) for n in series)
model[R, R] -= 1.0
model *= (2 * math.pi) ** 2


def entries(f):
    return [[a, b, float(f[a + R, b + R].real), float(f[a + R, b + R].imag)]
            for a in range(-R, R + 1) for b in range(-R, R + 1) if f[a + R, b + R] != 0]


with open("moments.json", "w") as out:
    json.dump({"dim": 2, "radius": R, "sample_count": 1, "entries": entries(model)}, out, indent=1)
with open("truth.json", "w") as out:
    json.dump({"dim": 2, "radius": R, "n2": N2, "entries": entries(y)}, out, indent=1)
