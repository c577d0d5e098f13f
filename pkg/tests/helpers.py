"""Shared randomized generators and sampling oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from gtsreal.realset import (
    EMPTY,
    NEG_INF,
    POS_INF,
    Interval,
    RealSet,
    TopologyKind,
    normalize,
    with_tails,
)

GRID_WINDOW = Interval(Fraction(-8), Fraction(8), True, True)
GRID_STEP = Fraction(1, 16)


def probe_corpus():
    """Fixed battery of >= 24 RealSets spanning the shapes the identity
    tables discriminate: finite sets, bounded and unbounded intervals of all
    flag combinations, half-lines, unions, and periodic-tail sets."""
    from gtsreal.realset import (
        REALS, closed, closed_open, interval, open_closed, open_iv, point,
        points,
    )

    F12 = Fraction(1, 2)
    half_open_pat = (Interval(Fraction(0), F12, True, False),)
    open_pat = (Interval(Fraction(0), F12, False, False),)
    point_pat = (Interval(Fraction(0), Fraction(0), True, True),)
    return [
        EMPTY,
        point(0),
        points([0, 1, 2]),
        points([Fraction(-5), 3, Fraction(7, 2)]),
        closed(0, 1),
        open_iv(0, 1),
        closed_open(0, 1),
        open_closed(0, 1),
        closed(-2, 5),
        interval(NEG_INF, 0),
        interval(NEG_INF, 0, False, True),
        interval(0, POS_INF),
        interval(0, POS_INF, True, False),
        REALS,
        interval(NEG_INF, -1).union(open_iv(1, POS_INF)),
        closed(0, 1).union(closed(2, 3)),
        closed_open(0, 1).union(closed_open(2, 3)),
        point(0).union(open_iv(1, 2)),
        interval(NEG_INF, 0).union(point(1)),
        with_tails(EMPTY, left=(point_pat, Fraction(1), Fraction(0))),
        with_tails(EMPTY, right=(point_pat, Fraction(1), F12)),
        with_tails(EMPTY, left=(open_pat, Fraction(1), Fraction(0))),
        with_tails(EMPTY, right=(half_open_pat, Fraction(1), Fraction(0))),
        with_tails(EMPTY, left=(half_open_pat, Fraction(1), Fraction(0)),
                   right=(half_open_pat, Fraction(1), Fraction(0))),
        with_tails(closed(-3, -2), right=(open_pat, Fraction(1), Fraction(0))),
        with_tails(point(-4), left=(point_pat, Fraction(2), Fraction(-5))),
    ]


def rand_fraction(rng: random.Random, lo=-6, hi=6, den=8) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_interval(rng: random.Random) -> Interval:
    kind = rng.randrange(6)
    if kind == 0:
        q = rand_fraction(rng)
        return Interval(q, q, True, True)
    a, b = sorted((rand_fraction(rng), rand_fraction(rng)))
    if a == b:
        return Interval(a, b, True, True)
    if kind == 1:
        return Interval(NEG_INF, b, False, rng.random() < 0.5)
    if kind == 2:
        return Interval(a, POS_INF, rng.random() < 0.5, False)
    return Interval(a, b, rng.random() < 0.5, rng.random() < 0.5)


def rand_realset(rng: random.Random, allow_tails=True) -> RealSet:
    n = rng.randrange(4)
    core = [rand_interval(rng) for _ in range(n)]
    if not allow_tails or rng.random() < 0.6:
        return normalize(core)
    # tailed variant: bounded core, simple patterns
    core = [iv for iv in core if iv.lo != NEG_INF and iv.hi != POS_INF]
    period = Fraction(rng.choice((1, 2)), rng.choice((1, 2)))
    lo_q = period * Fraction(rng.randrange(4), 4)
    hi_q = period * Fraction(rng.randrange(4), 4)
    lo_q, hi_q = sorted((lo_q, hi_q))
    if hi_q == lo_q or hi_q >= period:
        lo_q, hi_q = Fraction(0), period / 2
    pat = (Interval(lo_q, hi_q, rng.random() < 0.5, False),)
    cut = rand_fraction(rng, -3, 3, 2)
    side = rng.choice(("left", "right", "both"))
    left = (pat, period, cut) if side in ("left", "both") else None
    right = (pat, period, cut) if side in ("right", "both") else None
    return with_tails(normalize(core), left=left, right=right)


def signature(a: RealSet, window=GRID_WINDOW, step=GRID_STEP):
    return tuple(a.sample_points(window, step))


def _basic_nbhd(x: Fraction, eps: Fraction, kind: TopologyKind) -> RealSet:
    from gtsreal.realset import closed_open, interval, open_closed, open_iv

    if kind is TopologyKind.NAT:
        return open_iv(x - eps, x + eps)
    if kind is TopologyKind.SORG_R:
        return closed_open(x, x + eps)
    if kind is TopologyKind.SORG_L:
        return open_closed(x - eps, x)
    if kind is TopologyKind.UPPER:
        return interval(NEG_INF, x + eps)
    return interval(x - eps, POS_INF)


def oracle_closure_member(a: RealSet, x: Fraction, kind: TopologyKind, depth=20) -> bool:
    """x in cl(a)?  Basic neighborhoods are nested, so only the smallest
    probe radius is decisive (sound for endpoints coarser than 2^-depth)."""
    if kind is TopologyKind.DISCRETE:
        return a.contains_point(x)
    nb = _basic_nbhd(x, Fraction(1, 2**depth), kind)
    return not a.intersect(nb).is_empty


def oracle_interior_member(a: RealSet, x: Fraction, kind: TopologyKind, depth=20) -> bool:
    """x in int(a)?  Dual probe: the smallest basic neighborhood must fit."""
    if kind is TopologyKind.DISCRETE:
        return a.contains_point(x)
    nb = _basic_nbhd(x, Fraction(1, 2**depth), kind)
    return nb.is_subset(a)
