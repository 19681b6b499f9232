"""Stand-alone reference for best travel times, written against plain tick values.

Shares no code with the package: a network here is a list of
``(source, target, pieces, synthetic)`` with ``pieces`` as ``(from_tick,
duration)`` pairs, and every walk of at most ``max_edges`` legs is tried.
"""

from __future__ import annotations

import math
from fractions import Fraction


def duration(pieces, s):
    current = None
    for start, d in pieces:
        if start <= s:
            current = d
    return current


def boardable(seg, s, period, bounded):
    _, _, pieces, synthetic = seg
    t0, t1 = period
    if synthetic:
        return s >= t1 + 1
    if s < max(t0, pieces[0][0]):
        return False
    return s <= t1 or not bounded


def board_times(seg, s, period, waiting):
    if not waiting:
        return [s]
    _, _, pieces, synthetic = seg
    if synthetic:
        return [max(s, period[1] + 1)]
    return [s] + [start for start, _ in pieces if start > s]


def best_time(segments, period, a, b, t, waiting, bounded=True, max_edges=6):
    if a == b:
        return Fraction(0)
    best = math.inf
    t = Fraction(t)

    def walk(u, s, left):
        nonlocal best
        if u == b:
            best = min(best, s - t)
            return
        if left == 0 or s - t >= best:
            return
        for seg in segments:
            if seg[0] != u:
                continue
            for board in board_times(seg, s, period, waiting):
                if boardable(seg, board, period, bounded):
                    walk(seg[1], board + Fraction(duration(seg[2], board)), left - 1)

    walk(a, t, max_edges)
    return best


def describe(net):
    """Plain-data view of a package network, via its public attributes only."""
    segs = [(s.source, s.target, [(Fraction(x), Fraction(d)) for x, d in s.profile.pieces_ticks()],
             s.synthetic) for s in net.segments]
    return segs, tuple(Fraction(x) for x in net.period.as_ticks())
