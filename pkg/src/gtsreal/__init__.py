"""gtsreal: exact machinery for generalized-topology real lines."""

from gtsreal.realset import (  # noqa: F401
    EMPTY,
    REALS,
    Bounds,
    ConstructionError,
    Interval,
    PeriodicTail,
    RealSet,
    TopologyKind,
    closed,
    closed_open,
    interval,
    normalize,
    open_closed,
    open_iv,
    point,
    points,
    rat,
    with_tails,
)
