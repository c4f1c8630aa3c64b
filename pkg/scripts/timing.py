"""Naive scan vs orbit scan timings for the h = 3 primitive codes."""

import time

from twoweight.codes import CodeSpec, weight_distribution_enum

for p in (5, 7, 11):
    spec = CodeSpec(p, 3, 1)
    for orbits in (False, True):
        t = time.perf_counter()
        dist = weight_distribution_enum(spec, use_orbits=orbits, override=True)
        print(f"p={p:<3} orbits={orbits!s:<5} {time.perf_counter() - t:7.2f}s  {dist.paper()}")
