#!/usr/bin/env python3
"""Reference transcription of the substep relaxation for short end-driven chains.

Point 0 is the driven point; points 1..I are visited in order on every substep.
Positions are rebuilt each substep from the frame-start position plus the
running sums of inward (toward the driven side) and outward pulls, which is the
closed form the incremental solver must agree with.

Run directly to print the frozen values used by tests/chain_core_test.cpp.
"""
import math

GATE_FRACTION = 0.05


def pull(frm, to, rest, phi, gate):
    dx, dy = to[0] - frm[0], to[1] - frm[1]
    dist = math.hypot(dx, dy)
    e = dist - rest
    if e <= gate:
        return (0.0, 0.0)
    return (phi * e * dx / dist, phi * e * dy / dist)


def frame(points, rest, c, dt, substeps, clamp=0.5, theta=GATE_FRACTION):
    """One frame: points[0] already holds the driven target."""
    phi = min(c * dt * dt / 2.0, clamp)
    gate = theta * rest
    count = len(points)
    start = [tuple(p) for p in points]
    plus_sum = [(0.0, 0.0)] * count
    minus_sum = [(0.0, 0.0)] * count
    prev = [tuple(p) for p in points]  # substep n-1
    for _ in range(substeps):
        cur = list(prev)  # substep n, filled in visiting order
        for i in range(1, count):
            r_i = prev[i]
            r_plus = pull(r_i, cur[i - 1], rest, phi, gate)
            big_r = (r_i[0] + r_plus[0], r_i[1] + r_plus[1])
            r_minus = (0.0, 0.0)
            if i + 1 < count:
                outer = prev[i + 1]
                pre = math.hypot(outer[0] - r_i[0], outer[1] - r_i[1]) - rest
                if pre > gate:
                    toward = pull(big_r, outer, rest, phi, gate)
                    r_minus = (-toward[0], -toward[1])
            plus_sum[i] = (plus_sum[i][0] + r_plus[0], plus_sum[i][1] + r_plus[1])
            minus_sum[i] = (minus_sum[i][0] + r_minus[0], minus_sum[i][1] + r_minus[1])
            cur[i] = (start[i][0] + plus_sum[i][0] - minus_sum[i][0],
                      start[i][1] + plus_sum[i][1] - minus_sum[i][1])
        prev = cur
    return [list(p) for p in prev]


def drive(points, target_path, rest, c, dt, substeps):
    pts = [list(p) for p in points]
    frames = []
    for target in target_path:
        pts[0] = list(target)
        pts = frame(pts, rest, c, dt, substeps)
        frames.append([tuple(p) for p in pts])
    return frames


def show(label, frames):
    print(label)
    for k, fr in enumerate(frames):
        print("  frame", k + 1, ", ".join("{{{:.12f}, {:.12f}}}".format(*p) for p in fr))


if __name__ == "__main__":
    # two points, driven end pulled to separation l + d (d = 2), one substep, c = 1
    show("two_point_single_substep", drive([(0, 0), (5, 0)], [(-2, 0)], 5.0, 1.0, 0.1, 1))
    # three collinear points, driven end moved +10 axially in one frame, one substep
    show("three_point_axial_one_substep", drive([(10, 0), (5, 0), (0, 0)], [(20, 0)], 5.0, 10.0, 0.1, 1))
    # four points, driven end moved 10 laterally in 1 um frames, ten substeps each
    lateral = [(15, float(k)) for k in range(1, 11)]
    show("four_point_lateral", drive([(15, 0), (10, 0), (5, 0), (0, 0)], lateral, 5.0, 10.0, 0.1, 10))
    # two points, end dragged laterally 4 um then axially 4 um, ten substeps
    show("two_point_lateral_then_axial",
         drive([(5, 0), (0, 0)], [(5, 1), (5, 2), (5, 3), (5, 4), (6, 4), (7, 4), (8, 4), (9, 4)], 5.0, 10.0, 0.1, 10))
    # three points, end dragged laterally 6 um, ten substeps, larger rate
    show("three_point_lateral",
         drive([(10, 0), (5, 0), (0, 0)], [(10, float(k)) for k in range(1, 7)], 5.0, 40.0, 0.1, 10))
    # four points, end dragged axially 8 um in 2 um frames, ten substeps
    show("four_point_axial",
         drive([(15, 0), (10, 0), (5, 0), (0, 0)], [(15 + 2.0 * k, 0) for k in range(1, 5)], 5.0, 10.0, 0.1, 10))
