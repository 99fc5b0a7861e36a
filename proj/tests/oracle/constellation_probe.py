#!/usr/bin/env python3
"""Independent constellation/visibility probe.

Brute-force reference for the topology facts asserted in tests, computed
from first principles (Walker shell generation, circular two-body
propagation, range + Earth-occlusion visibility) without touching the
C++ implementation. Used to

  * confirm every node has ISL degree >= 2 at t=0 for the 4x10 / 550 km
    shell with max_range slightly under the grazing limit,
  * confirm the degree-over-time series of a node is non-constant over
    the 300 s window,
  * choose the example plan's cross-plane workers (pairs with at least
    one contact window to the master satellite inside [0, 300) s),
  * print chord / grazing spot values quoted in unit tests.

Run:  python3 tests/oracle/constellation_probe.py
"""

import math

RE_KM = 6371.0
MU = 398600.4418  # km^3/s^2

PLANES = 4
SATS_PER_PLANE = 10
ALT_KM = 550.0
INCL_DEG = 45.0
F = 1
RAAN_SPREAD_DEG = 360.0
MAX_RANGE_KM = 5500.0
T0, T1, STEP = 0.0, 300.0, 1.0


def sat_id(p, s):
    return f"sat-{p:03d}-{s:03d}"


def specs():
    a = RE_KM + ALT_KM
    incl = math.radians(INCL_DEG)
    out = []
    for p in range(PLANES):
        raan = math.radians(RAAN_SPREAD_DEG) * p / PLANES
        for s in range(SATS_PER_PLANE):
            anom = (2 * math.pi * s / SATS_PER_PLANE
                    + 2 * math.pi * F * p / (PLANES * SATS_PER_PLANE))
            out.append((sat_id(p, s), a, incl, raan % (2 * math.pi), anom % (2 * math.pi)))
    return out


def position(spec, t):
    _, a, incl, raan, anom = spec
    n = math.sqrt(MU / a**3)
    th = anom + n * t
    xo, yo = a * math.cos(th), a * math.sin(th)
    x1, y1, z1 = xo, yo * math.cos(incl), yo * math.sin(incl)
    return (x1 * math.cos(raan) - y1 * math.sin(raan),
            x1 * math.sin(raan) + y1 * math.cos(raan),
            z1)


def seg_point_dist_to_origin(pa, pb):
    ab = tuple(b - a for a, b in zip(pa, pb))
    ab2 = sum(c * c for c in ab)
    if ab2 == 0.0:
        return math.dist(pa, (0, 0, 0))
    t = max(0.0, min(1.0, -sum(a * d for a, d in zip(pa, ab)) / ab2))
    q = tuple(a + t * d for a, d in zip(pa, ab))
    return math.dist(q, (0, 0, 0))


def visible(pa, pb, max_range, margin=0.0):
    if math.dist(pa, pb) > max_range:
        return False
    return seg_point_dist_to_origin(pa, pb) > RE_KM + margin


def main():
    sp = specs()
    ids = [s[0] for s in sp]
    a = RE_KM + ALT_KM

    chord36 = 2 * a * math.sin(math.radians(18.0))
    grazing = 2 * math.sqrt(a * a - RE_KM * RE_KM)
    period = 2 * math.pi * math.sqrt(a**3 / MU)
    speed = math.sqrt(MU / a)
    print(f"in-plane 36-deg chord = {chord36:.4f} km")
    print(f"grazing chord limit   = {grazing:.4f} km")
    print(f"orbital period        = {period:.4f} s")
    print(f"orbital speed         = {speed:.6f} km/s")

    # t=0 degrees with max_range just under the grazing limit
    pos0 = {s[0]: position(s, 0.0) for s in sp}
    deg0 = {i: 0 for i in ids}
    for i, x in enumerate(ids):
        for y in ids[i + 1:]:
            if visible(pos0[x], pos0[y], 5407.0):
                deg0[x] += 1
                deg0[y] += 1
    print(f"t=0, max_range=5407: min degree = {min(deg0.values())},"
          f" max degree = {max(deg0.values())}")

    # time series with plan defaults
    steps = int(round((T1 - T0) / STEP))
    present = {}  # (x, y) -> list of step indices
    degseries = {i: [] for i in ids}
    for k in range(steps):
        t = T0 + k * STEP
        pos = {s[0]: position(s, t) for s in sp}
        deg = {i: 0 for i in ids}
        for i, x in enumerate(ids):
            for y in ids[i + 1:]:
                if visible(pos[x], pos[y], MAX_RANGE_KM):
                    present.setdefault((x, y), []).append(k)
                    deg[x] += 1
                    deg[y] += 1
        for i in ids:
            degseries[i].append(deg[i])

    nonconst = [i for i in ids if len(set(degseries[i])) > 1]
    print(f"nodes with non-constant degree over [0,300): {len(nonconst)}/{len(ids)}")
    print(f"degree series sat-000-000: min={min(degseries['sat-000-000'])}"
          f" max={max(degseries['sat-000-000'])}")

    # contact windows with the master over [0, 300)
    master = "sat-000-000"
    print(f"\npairs with windows to {master} (start..end steps, count):")
    for (x, y), ks in sorted(present.items()):
        if master not in (x, y):
            continue
        other = y if x == master else x
        runs = []
        run_start = ks[0]
        prev = ks[0]
        for k in ks[1:]:
            if k != prev + 1:
                runs.append((run_start, prev))
                run_start = k
            prev = k
        runs.append((run_start, prev))
        total = len(ks)
        print(f"  {other}: total={total}s windows={[(r[0], r[1] + 1) for r in runs]}")


if __name__ == "__main__":
    main()
