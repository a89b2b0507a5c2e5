#!/usr/bin/env python3
# Copyright (c) 2026 vpriv authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference values for the unit tests, computed without the C++ library."""

import itertools
import math

import mpmath
from scipy import optimize

mpmath.mp.dps = 30


def log_f0_stats(values):
    logs = [mpmath.log(v) for v in values if v > 0]
    n = len(logs)
    mean = sum(logs) / n
    var = sum((x - mean) ** 2 for x in logs) / n
    return mean, mpmath.sqrt(var), n


def transform(values, src, tgt):
    out = []
    for v in values:
        if v == 0:
            out.append(mpmath.mpf(0))
            continue
        out.append(mpmath.exp(tgt[0] + tgt[1] / src[1] * (mpmath.log(v) - src[0])))
    return out


def plda_llr_by_integration(psi, enroll, test):
    # Latent speaker y ~ N(0, psi); observations x = y + N(0, 1).
    total = mpmath.mpf(0)
    for p, u, v in zip(psi, enroll, test):
        def normal(x, m, var):
            return mpmath.exp(-(x - m) ** 2 / (2 * var)) / mpmath.sqrt(2 * mpmath.pi * var)

        prior = lambda y: normal(y, 0, p)
        joint = mpmath.quad(lambda y: prior(y) * normal(u, y, 1) * normal(v, y, 1),
                            [-mpmath.inf, 0, mpmath.inf])
        mu = mpmath.quad(lambda y: prior(y) * normal(u, y, 1), [-mpmath.inf, mpmath.inf])
        mv = mpmath.quad(lambda y: prior(y) * normal(v, y, 1), [-mpmath.inf, mpmath.inf])
        total += mpmath.log(joint / (mu * mv))
    return total


def det_points(tar, non):
    cuts = sorted(set(tar) | set(non))
    thresholds = [-math.inf] + [c + 0.5e-9 for c in cuts] + [math.inf]
    pts = set()
    for t in thresholds:
        pfa = sum(s > t for s in non) / len(non)
        pmiss = sum(s <= t for s in tar) / len(tar)
        pts.add((pfa, pmiss))
    for c in cuts:
        pts.add((sum(s >= c for s in non) / len(non), sum(s < c for s in tar) / len(tar)))
    return sorted(pts)


def hull_eer(tar, non):
    # Smallest max(Pfa, Pmiss) reachable by mixing two operating points.
    pts = det_points(tar, non)
    best = 1.0
    for (a, b), (c, d) in itertools.product(pts, repeat=2):
        lo, hi = 0.0, 1.0
        for _ in range(200):
            m1, m2 = lo + (hi - lo) / 3, hi - (hi - lo) / 3
            f = lambda t: max(a + t * (c - a), b + t * (d - b))
            if f(m1) < f(m2):
                hi = m2
            else:
                lo = m1
        best = min(best, max(a + lo * (c - a), b + lo * (d - b)))
    return best


def cllr(tar, non):
    t = sum(math.log2(1 + math.exp(-s)) for s in tar) / len(tar)
    n = sum(math.log2(1 + math.exp(s)) for s in non) / len(non)
    return 0.5 * (t + n)


def min_cllr_brute(tar, non):
    # Optimise a nondecreasing step map over the distinct score values.
    levels = sorted(set(tar) | set(non))
    k = len(levels)

    def unpack(z):
        vals = [z[0]]
        for d in z[1:]:
            vals.append(vals[-1] + d * d)
        return dict(zip(levels, vals))

    def cost(z):
        f = unpack(z)
        return cllr([f[s] for s in tar], [f[s] for s in non])

    best = math.inf
    for start in itertools.product([-3.0, 0.0, 3.0], repeat=min(k, 3)):
        z0 = list(start) + [0.5] * (k - len(start))
        res = optimize.minimize(cost, z0, method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 20000})
        best = min(best, res.fun)
    return best


def main():
    m, s, n = log_f0_stats([100, 0, 400])
    print(f"stats [100,0,400]: mean={mpmath.nstr(m, 17)} std={mpmath.nstr(s, 17)} count={n}")
    out = transform([100, 0, 400], (m, s), (mpmath.log(300), mpmath.log(2) / 2))
    print("transform:", [mpmath.nstr(v, 17) for v in out])

    print("plda psi=1 (0,0):", mpmath.nstr(plda_llr_by_integration([1], [0], [0]), 17))
    same = plda_llr_by_integration([1], [2], [2])
    diff = plda_llr_by_integration([1], [2], [-2])
    print("plda psi=1 (2,2):", mpmath.nstr(same, 17), "(2,-2):", mpmath.nstr(diff, 17))
    a = plda_llr_by_integration([1], [0], [0])
    b = plda_llr_by_integration([1], [0], [3])
    print("rank d=1 source 0: A(0)=", mpmath.nstr(a, 10), "B(3)=", mpmath.nstr(b, 10),
          "furthest:", "B" if b < a else "A")

    print("eer tar=[2,3] non=[0,1]:", hull_eer([2, 3], [0, 1]))
    print("eer tar=[0,1] non=[0,1]:", hull_eer([0, 1], [0, 1]))
    print("eer tar=[1] non=[0,2]:", hull_eer([1], [0, 2]))
    print("det tar=[0,1] non=[0,1]:", det_points([0, 1], [0, 1]))
    print("cllr tar=[-2] non=[1]:", repr(cllr([-2], [1])))
    print("min_cllr tar=[1,3] non=[1,3]:", repr(min_cllr_brute([1, 3], [1, 3])))
    print("min_cllr tar=[0,2,3] non=[1,2,-1]:", repr(min_cllr_brute([0, 2, 3], [1, 2, -1])))


if __name__ == "__main__":
    main()
