"""Finitely presented families of RealSets and essential-finiteness decisions.

A family is Finite, Periodic (translates of a seed), a Split along a cut
point, a Restricted view of another family, or a dense Fan of rays.
Periodic seeds are either bounded (all members are translates of one
bounded set) or a single half-line (the members are nested rays); these
shapes give exact closed forms for every essential-finiteness question the
corpus asks.

Essential countability needs no operator here: every representable family
is countable (finitely many members, integer-indexed translates, or
rational-indexed rays), so membership in the essentially countable
families is uniformly true and is recorded rather than implemented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from gtsreal.realset import (
    EMPTY,
    NEG_INF,
    POS_INF,
    REALS,
    ConstructionError,
    RealSet,
    TopologyKind,
    interval,
)


class PreconditionError(ValueError):
    """A stated precondition was violated; carries the witness."""


class DepthCapError(ValueError):
    """Requested generation depth exceeds the configured cap."""


# ---------------------------------------------------------------------------
# family specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndexRange:
    lo: Optional[int] = None   # None = -infinity
    hi: Optional[int] = None   # None = +infinity

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ConstructionError("empty index range")

    @property
    def is_finite(self) -> bool:
        return self.lo is not None and self.hi is not None

    def indices(self):
        if not self.is_finite:
            raise ConstructionError("cannot enumerate an infinite index range")
        return range(self.lo, self.hi + 1)

    def __str__(self):
        if self.lo is None and self.hi is None:
            return "all"
        if self.hi is None:
            return f"from({self.lo})"
        if self.lo is None:
            return f"upto({self.hi})"
        return f"span({self.lo},{self.hi})"


ALL_INDICES = IndexRange()


@dataclass(frozen=True)
class FiniteFamily:
    members_tuple: Tuple[RealSet, ...]

    def __str__(self):
        return "finite{%s}" % ", ".join(sorted(str(m) for m in self.members_tuple))


@dataclass(frozen=True)
class Periodic:
    seed: RealSet
    period: Fraction
    index_range: IndexRange = ALL_INDICES

    def __post_init__(self):
        if self.period <= 0:
            raise ConstructionError("period must be positive")
        if self.seed.is_empty:
            raise ConstructionError("seed must be nonempty")
        if self.seed.left_tail is not None or self.seed.right_tail is not None:
            raise ConstructionError("seed must be tail-free")
        if self.seed_kind is None:
            raise ConstructionError(
                "seed must be bounded or a single half-line (nested family)")

    @property
    def seed_kind(self) -> Optional[str]:
        b = self.seed.boundedness()
        if b.bounded:
            return "bounded"
        core = self.seed.core
        if len(core) == 1 and core[0].lo == NEG_INF and core[0].hi != POS_INF:
            return "nested_up"
        if len(core) == 1 and core[0].hi == POS_INF and core[0].lo != NEG_INF:
            return "nested_down"
        return None

    def member(self, k: int) -> RealSet:
        return self.seed.shift(k * self.period)

    def __str__(self):
        return f"periodic(seed={self.seed}, p={self.period}, {self.index_range})"


@dataclass(frozen=True)
class Split:
    """Members of `left` clipped to (-inf, cut), of `right` to [cut, +inf)."""

    cut: Fraction
    left: "FamilySpec"
    right: "FamilySpec"

    def windows(self) -> Tuple[RealSet, RealSet]:
        return (interval(NEG_INF, self.cut), interval(self.cut, POS_INF, True, False))

    def __str__(self):
        return f"split({self.cut}; {self.left}; {self.right})"


@dataclass(frozen=True)
class Restricted:
    base: "FamilySpec"
    window: RealSet

    def __str__(self):
        return f"restricted({self.base}; {self.window})"


@dataclass(frozen=True)
class Fan:
    """Dense nested fan of rays: {(-inf, q) : q rational, lo < q < hi} when
    side is "down", {(q, +inf) : ...} when side is "up".

    No finite subfamily reaches the accumulation bound, so the fan is the
    canonical witness against smallness of bounded sets that cluster at hi
    (resp. lo); it is not locally essentially finite there.
    """

    lo: Fraction
    hi: Fraction
    side: str = "down"

    def __post_init__(self):
        if self.side not in ("down", "up"):
            raise ConstructionError("fan side must be 'down' or 'up'")
        if not self.lo < self.hi:
            raise ConstructionError("fan needs lo < hi")

    def sample_member(self) -> RealSet:
        q = (self.lo + self.hi) / 2
        if self.side == "down":
            return interval(NEG_INF, q)
        return interval(q, POS_INF)

    def __str__(self):
        return f"fan({self.side}; {self.lo}, {self.hi})"


FamilySpec = Union[FiniteFamily, Periodic, Split, Restricted, Fan]


def finite_family(members: Iterable[RealSet]) -> FiniteFamily:
    seen = []
    for m in members:
        if m not in seen:
            seen.append(m)
    return FiniteFamily(tuple(seen))


@dataclass(frozen=True)
class EssFinVerdict:
    essentially_finite: bool
    witness: Optional[Tuple[RealSet, ...]] = None
    obstruction: Optional[str] = None

    def __bool__(self):
        return self.essentially_finite


# ---------------------------------------------------------------------------
# unions and enumeration
# ---------------------------------------------------------------------------

def union_of(f: FamilySpec) -> RealSet:
    """Exact union of all members."""
    if isinstance(f, FiniteFamily):
        out = EMPTY
        for m in f.members_tuple:
            out = out.union(m)
        return out
    if isinstance(f, Periodic):
        return _periodic_union(f)
    if isinstance(f, Split):
        lw, rw = f.windows()
        return union_of(f.left).intersect(lw).union(union_of(f.right).intersect(rw))
    if isinstance(f, Restricted):
        return union_of(f.base).intersect(f.window)
    if isinstance(f, Fan):
        if f.side == "down":
            return interval(NEG_INF, f.hi)
        return interval(f.lo, POS_INF)
    raise TypeError(f)


def _periodic_union(f: Periodic) -> RealSet:
    from gtsreal.realset import _assemble, _pattern_reduce

    rng, p = f.index_range, f.period
    kind = f.seed_kind
    if kind == "nested_up":
        if rng.hi is not None:
            return f.member(rng.hi)
        return REALS
    if kind == "nested_down":
        if rng.lo is not None:
            return f.member(rng.lo)
        return REALS
    if rng.is_finite:
        out = EMPTY
        for k in rng.indices():
            out = out.union(f.member(k))
        return out
    germ = _pattern_reduce(f.seed.core, p)
    lo_v, hi_v = f.seed.core[0].lo, f.seed.core[-1].hi
    span = hi_v - lo_v
    if rng.lo is None and rng.hi is None:
        lo_w = lo_v - 2 * p - span - 2
        hi_w = hi_v + 2 * p + span + 2
        window = _materialize_occurrences(f, lo_w, hi_w)
        return _assemble(window, germ, germ, lo_w, hi_w)
    if rng.hi is None:  # from(k0): periodic to the right
        lo_w = lo_v + rng.lo * p - 1
        hi_w = lo_w + span + 4 * p + 2
        window = _materialize_occurrences(f, lo_w, hi_w)
        return _assemble(window, ("empty",), germ, lo_w, hi_w)
    hi_w = hi_v + rng.hi * p + 1
    lo_w = hi_w - span - 4 * p - 2
    window = _materialize_occurrences(f, lo_w, hi_w)
    return _assemble(window, germ, ("empty",), lo_w, hi_w)


def _materialize_occurrences(f: Periodic, lo: Fraction, hi: Fraction):
    from gtsreal.realset import merge_intervals, _clip

    lo_v, hi_v = f.seed.core[0].lo, f.seed.core[-1].hi
    p = f.period
    import math
    k_lo = math.floor((lo - hi_v) / p) - 1
    k_hi = math.ceil((hi - lo_v) / p) + 1
    if f.index_range.lo is not None:
        k_lo = max(k_lo, f.index_range.lo)
    if f.index_range.hi is not None:
        k_hi = min(k_hi, f.index_range.hi)
    out = []
    for k in range(k_lo, k_hi + 1):
        for iv in f.seed.core:
            out.append(iv.shift(k * p))
    return _clip(merge_intervals(out), lo, hi)


def members(f: FamilySpec) -> Optional[list[RealSet]]:
    """Distinct nonempty members, or None when not finitely enumerable."""
    if isinstance(f, Fan):
        return None
    if isinstance(f, FiniteFamily):
        return _dedupe(m for m in f.members_tuple if not m.is_empty)
    if isinstance(f, Periodic):
        if f.index_range.is_finite:
            return _dedupe(f.member(k) for k in f.index_range.indices())
        return None
    if isinstance(f, Split):
        lw, rw = f.windows()
        lm = members(Restricted(f.left, lw))
        rm = members(Restricted(f.right, rw))
        if lm is None or rm is None:
            return None
        return _dedupe(lm + rm)
    if isinstance(f, Restricted):
        base, w = f.base, f.window
        if w.is_empty:
            return []
        if isinstance(base, Fan):
            return None
        if isinstance(base, Restricted):
            return members(Restricted(base.base, base.window.intersect(w)))
        if isinstance(base, Split):
            lw, rw = base.windows()
            lm = members(Restricted(base.left, lw.intersect(w)))
            rm = members(Restricted(base.right, rw.intersect(w)))
            if lm is None or rm is None:
                return None
            return _dedupe(lm + rm)
        if isinstance(base, FiniteFamily):
            return _dedupe(m.intersect(w) for m in base.members_tuple
                           if not m.intersect(w).is_empty)
        # Periodic base
        if base.index_range.is_finite:
            return _dedupe(m for m in (base.member(k).intersect(w)
                                       for k in base.index_range.indices())
                           if not m.is_empty)
        wb = w.boundedness()
        if not wb.bounded:
            return None
        import math
        lo_w, hi_w = w.inf_value(), w.sup_value()
        p = base.period
        if base.seed_kind == "bounded":
            lo_v, hi_v = base.seed.core[0].lo, base.seed.core[-1].hi
            k_lo = math.floor((lo_w - hi_v) / p) - 1
            k_hi = math.ceil((hi_w - lo_v) / p) + 1
        else:
            # nested rays: outside this k-window the restriction saturates to
            # the empty set or to the full restricted trace, both of which the
            # window's extreme translates already realize
            edge = base.seed.core[0].hi if base.seed_kind == "nested_up" \
                else base.seed.core[0].lo
            k_lo = math.floor((lo_w - edge) / p) - 2
            k_hi = math.ceil((hi_w - edge) / p) + 2
        if base.index_range.lo is not None:
            k_lo = max(k_lo, base.index_range.lo)
        if base.index_range.hi is not None:
            k_hi = min(k_hi, base.index_range.hi)
        got = [base.member(k).intersect(w) for k in range(k_lo, k_hi + 1)]
        return _dedupe(g for g in got if not g.is_empty)
    raise TypeError(f)


def _dedupe(items) -> list[RealSet]:
    out = []
    for m in items:
        if m not in out:
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# essential finiteness
# ---------------------------------------------------------------------------

def ess_finite_on(f: FamilySpec, k_set: RealSet) -> EssFinVerdict:
    """Exact essential-finiteness decision on k_set, with a verified witness."""
    verdict = _essfin(f, k_set)
    if verdict.essentially_finite:
        trace = k_set.intersect(union_of(f))
        cover = EMPTY
        for w in verdict.witness or ():
            cover = cover.union(w)
        if not trace.is_subset(cover):
            raise AssertionError("internal: witness fails to cover the trace")
    return verdict


def _essfin(f: FamilySpec, k_set: RealSet) -> EssFinVerdict:
    if isinstance(f, FiniteFamily):
        return EssFinVerdict(True, tuple(f.members_tuple))
    if isinstance(f, Periodic):
        return _essfin_periodic(f, k_set)
    if isinstance(f, Split):
        lw, rw = f.windows()
        lv = _essfin(Restricted(f.left, lw), k_set.intersect(lw))
        if not lv:
            return lv
        rv = _essfin(Restricted(f.right, rw), k_set.intersect(rw))
        if not rv:
            return rv
        return EssFinVerdict(True, tuple(lv.witness or ()) + tuple(rv.witness or ()))
    if isinstance(f, Restricted):
        return _essfin_restricted(f, k_set)
    if isinstance(f, Fan):
        return _essfin_fan(f, k_set)
    raise TypeError(f)


def _essfin_restricted(f: Restricted, k_set: RealSet) -> EssFinVerdict:
    sub = _essfin(f.base, k_set.intersect(f.window))
    if not sub:
        return EssFinVerdict(False, None, sub.obstruction)
    wit = tuple(m.intersect(f.window) for m in (sub.witness or ()))
    wit = tuple(m for m in wit if not m.is_empty)
    return EssFinVerdict(True, wit)


def _essfin_periodic(f: Periodic, k_set: RealSet) -> EssFinVerdict:
    rng = f.index_range
    kind = f.seed_kind
    u = union_of(f)
    trace = k_set.intersect(u)
    if trace.is_empty:
        return EssFinVerdict(True, ())
    if rng.is_finite:
        return EssFinVerdict(True, tuple(f.member(k) for k in rng.indices()))
    b = trace.boundedness()
    if kind == "bounded":
        if not b.bounded:
            return EssFinVerdict(
                False, None,
                "trace K n UF is unbounded while every member is bounded")
        return EssFinVerdict(True, _covering_occurrences(f, trace))
    if kind == "nested_up":
        if rng.hi is not None:
            return EssFinVerdict(True, (f.member(rng.hi),))
        if not b.bounded_above:
            return EssFinVerdict(
                False, None,
                "trace unbounded above while the nested members are all bounded above")
        return EssFinVerdict(True, (_nested_cover(f, trace, up=True),))
    # nested_down
    if rng.lo is not None:
        return EssFinVerdict(True, (f.member(rng.lo),))
    if not b.bounded_below:
        return EssFinVerdict(
            False, None,
            "trace unbounded below while the nested members are all bounded below")
    return EssFinVerdict(True, (_nested_cover(f, trace, up=False),))


def _covering_occurrences(f: Periodic, trace: RealSet) -> Tuple[RealSet, ...]:
    import math
    m, mm = trace.inf_value(), trace.sup_value()
    lo_v, hi_v = f.seed.core[0].lo, f.seed.core[-1].hi
    p = f.period
    k_lo = math.floor((m - hi_v) / p) - 1
    k_hi = math.ceil((mm - lo_v) / p) + 1
    if f.index_range.lo is not None:
        k_lo = max(k_lo, f.index_range.lo)
    if f.index_range.hi is not None:
        k_hi = min(k_hi, f.index_range.hi)
    return tuple(f.member(k) for k in range(k_lo, k_hi + 1))


def _nested_cover(f: Periodic, trace: RealSet, up: bool) -> RealSet:
    import math
    p = f.period
    if up:
        edge = f.seed.core[0].hi
        k = math.ceil((trace.sup_value() - edge) / p) + 1
    else:
        edge = f.seed.core[0].lo
        k = math.floor((trace.inf_value() - edge) / p) - 1
    for _ in range(4):
        m = f.member(k)
        if trace.is_subset(m):
            return m
        k = k + 1 if up else k - 1
    raise AssertionError("internal: nested cover search failed")


def _essfin_fan(f: Fan, k_set: RealSet) -> EssFinVerdict:
    trace = k_set.intersect(union_of(f))
    if trace.is_empty:
        return EssFinVerdict(True, ())
    if f.side == "down":
        s = trace.sup_value()
        if s >= f.hi:
            return EssFinVerdict(
                False, None,
                f"trace accumulates at {f.hi} but every ray stops short of it")
        q = (max(f.lo, s) + f.hi) / 2
        return EssFinVerdict(True, (interval(NEG_INF, q),))
    s = trace.inf_value()
    if s <= f.lo:
        return EssFinVerdict(
            False, None,
            f"trace accumulates at {f.lo} but every ray stops short of it")
    q = (f.lo + min(f.hi, s)) / 2
    return EssFinVerdict(True, (interval(q, POS_INF),))


def ess_finite(f: FamilySpec) -> EssFinVerdict:
    return ess_finite_on(f, union_of(f))


def locally_ess_finite(f: FamilySpec) -> bool:
    """Every point has an open-interval neighborhood on which f is
    essentially finite.  True for every representable family shape: finite
    families trivially, bounded-seed translates because a bounded window
    meets finitely many members, nested rays because one member covers any
    bounded window's trace; Split/Restricted reduce componentwise (the cut
    point is covered by intersecting the two component neighborhoods)."""
    if isinstance(f, (FiniteFamily, Periodic)):
        return True
    if isinstance(f, Fan):
        # fails exactly at the accumulation bound
        return False
    if isinstance(f, Split):
        lw, rw = f.windows()
        return locally_ess_finite(Restricted(f.left, lw)) and \
            locally_ess_finite(Restricted(f.right, rw))
    if isinstance(f, Restricted):
        base, w = f.base, f.window
        if isinstance(base, (FiniteFamily, Periodic)):
            return True
        if isinstance(base, Fan):
            # non-lef only when the window accumulates at the fan bound
            return _essfin(f, REALS).essentially_finite
        if isinstance(base, Split):
            lw, rw = base.windows()
            return locally_ess_finite(Restricted(base.left, lw.intersect(w))) and \
                locally_ess_finite(Restricted(base.right, rw.intersect(w)))
        return locally_ess_finite(Restricted(base.base, base.window.intersect(w)))
    raise TypeError(f)


def restrict_family(f: FamilySpec, y: RealSet) -> FamilySpec:
    """The family {U n Y : U in f}."""
    if y.is_reals:
        return f
    if isinstance(f, FiniteFamily):
        return finite_family(m.intersect(y) for m in f.members_tuple)
    if isinstance(f, Periodic):
        return Restricted(f, y)
    if isinstance(f, Split):
        return Split(f.cut, restrict_family(f.left, y), restrict_family(f.right, y))
    if isinstance(f, Restricted):
        return Restricted(f.base, f.window.intersect(y))
    if isinstance(f, Fan):
        return Restricted(f, y)
    raise TypeError(f)


# ---------------------------------------------------------------------------
# full rings and generated topologies
# ---------------------------------------------------------------------------

def sort_key(rs: RealSet) -> str:
    return str(rs)


def full_ring_closure(generators: Sequence[RealSet], y: RealSet) -> list[RealSet]:
    """L_Y[A]: least collection containing A, empty, Y closed under finite
    unions and intersections; computed as a pairwise fixpoint."""
    for g in generators:
        if not g.is_subset(y):
            raise PreconditionError(f"generator {g} is not a subset of Y={y}")
    ring = {EMPTY, y}
    ring.update(generators)
    while True:
        fresh = set()
        items = sorted(ring, key=sort_key)
        for a, b in itertools.combinations(items, 2):
            u = a.union(b)
            if u not in ring:
                fresh.add(u)
            i = a.intersect(b)
            if i not in ring:
                fresh.add(i)
        if not fresh:
            return sorted(ring, key=sort_key)
        ring.update(fresh)


def gen_topology(generators: Sequence[RealSet]) -> list[RealSet]:
    """tau(A) for finitely many generators: all unions of finite
    intersections, i.e. the full ring over the whole line."""
    return full_ring_closure(generators, REALS)


def gen_topology_member(generators: Sequence[RealSet], u: RealSet) -> bool:
    return u in set(gen_topology(generators))


# ---------------------------------------------------------------------------
# EF(L, B) membership
# ---------------------------------------------------------------------------

def is_open_in(a: RealSet, kind: TopologyKind) -> bool:
    return a.interior(kind) == a


def _as_member_pred(l_pred) -> Callable[[RealSet], bool]:
    if isinstance(l_pred, TopologyKind):
        return lambda a: is_open_in(a, l_pred)
    if callable(l_pred):
        return l_pred
    pool = set(l_pred)
    return lambda a: a in pool


def _family_members_ok(f: FamilySpec, pred) -> Optional[RealSet]:
    """None when every member satisfies pred; otherwise a violating member.

    Infinite periodic families are checked on a window of translates: the
    member predicates used here are translation-stable, so the seed member
    decides for all of them.  Fan members all share one shape."""
    if isinstance(f, Fan):
        probe = f.sample_member()
        return None if pred(probe) else probe
    mats = members(f)
    if mats is not None:
        for m in mats:
            if not pred(m):
                return m
        return None
    if isinstance(f, Periodic):
        k0 = f.index_range.lo if f.index_range.lo is not None else 0
        probe = f.member(k0)
        return None if pred(probe) else probe
    if isinstance(f, Split):
        lw, rw = f.windows()
        return _family_members_ok(Restricted(f.left, lw), pred) or \
            _family_members_ok(Restricted(f.right, rw), pred)
    if isinstance(f, Restricted):
        base, w = f.base, f.window
        if isinstance(base, Fan):
            got = base.sample_member().intersect(w)
            if not got.is_empty and not pred(got):
                return got
            return None
        if isinstance(base, Periodic):
            k0 = base.index_range.lo if base.index_range.lo is not None else -4
            k1 = base.index_range.hi if base.index_range.hi is not None else 4
            for k in range(k0, min(k1, k0 + 9) + 1):
                got = base.member(k).intersect(w)
                if not got.is_empty and not pred(got):
                    return got
            return None
        if isinstance(base, Split):
            lw, rw = base.windows()
            return _family_members_ok(Restricted(base.left, lw.intersect(w)), pred) or \
                _family_members_ok(Restricted(base.right, rw.intersect(w)), pred)
        if isinstance(base, Restricted):
            return _family_members_ok(Restricted(base.base, base.window.intersect(w)), pred)
        raise TypeError(f)
    raise TypeError(f)


@dataclass(frozen=True)
class Directions:
    unbounded_below: bool
    unbounded_above: bool


def ess_finite_on_all_base(f: FamilySpec, dirs: Directions) -> bool:
    """Is f essentially finite on every base element of a monotone base whose
    elements all have the given unboundedness directions?  Exact closed form
    by induction on the family shape."""
    if isinstance(f, FiniteFamily):
        return True
    if isinstance(f, Periodic):
        u = union_of(f).boundedness()
        kind = f.seed_kind
        if kind == "bounded" or f.index_range.is_finite:
            if f.index_range.is_finite:
                return True
            return not (dirs.unbounded_below and not u.bounded_below) and \
                not (dirs.unbounded_above and not u.bounded_above)
        if kind == "nested_up":
            if f.index_range.hi is not None:
                return True
            return not (dirs.unbounded_above and not u.bounded_above)
        if f.index_range.lo is not None:
            return True
        return not (dirs.unbounded_below and not u.bounded_below)
    if isinstance(f, Split):
        lw, rw = f.windows()
        dl = Directions(dirs.unbounded_below, False)
        dr = Directions(False, dirs.unbounded_above)
        return ess_finite_on_all_base(Restricted(f.left, lw), dl) and \
            ess_finite_on_all_base(Restricted(f.right, rw), dr)
    if isinstance(f, Restricted):
        wb = f.window.boundedness()
        d2 = Directions(dirs.unbounded_below and not wb.bounded_below,
                        dirs.unbounded_above and not wb.bounded_above)
        return ess_finite_on_all_base(f.base, d2)
    raise TypeError(f)


def _contains_fan(f: FamilySpec) -> bool:
    if isinstance(f, Fan):
        return True
    if isinstance(f, Split):
        return _contains_fan(f.left) or _contains_fan(f.right)
    if isinstance(f, Restricted):
        return _contains_fan(f.base)
    return False


def ef_member(f: FamilySpec, l_pred, bornology, n_max: int = 64) -> bool:
    """Membership in EF(L, B): every member satisfies the L predicate and the
    family is essentially finite on every base element of the bornology."""
    pred = _as_member_pred(l_pred)
    bad = _family_members_ok(f, pred)
    if bad is not None:
        raise PreconditionError(f"family member {bad} is outside L")
    schema = bornology.base_schema()
    if schema is None:
        raise PreconditionError(f"bornology {bornology} supplies no indexed base")
    dirs = schema.directions()
    if dirs is not None and not _contains_fan(f):
        return ess_finite_on_all_base(f, dirs)
    for n in range(n_max + 1):
        b_n = schema.element(n)
        if not ess_finite_on(restrict_family(f, b_n), b_n):
            return False
    return True


# ---------------------------------------------------------------------------
# bounded generation engine for <Psi>
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenCaps:
    max_family_size: int = 3
    max_opens: int = 48
    max_families: int = 6000
    depth_cap: int = 8


@dataclass(frozen=True)
class GenerationResult:
    found: bool
    truncated: bool
    depth_used: int


Family = frozenset  # frozenset[RealSet], empty members dropped


@dataclass(frozen=True)
class CovCollection:
    """Materialized finite collection of finite families over a carrier."""

    carrier: RealSet
    families: frozenset
    opens: frozenset
    truncated: bool = False

    @staticmethod
    def from_specs(specs: Sequence[FamilySpec], carrier: RealSet = REALS) -> "CovCollection":
        fams = set()
        ops = set()
        for s in specs:
            mats = members(s)
            if mats is None:
                raise PreconditionError(
                    f"family {s} is not finitely enumerable; the generation "
                    f"engine works on materialized finite families")
            fam = frozenset(mats)
            fams.add(fam)
            ops.update(mats)
        return CovCollection(carrier, frozenset(fams), frozenset(ops))

    def sorted_opens(self) -> list[RealSet]:
        return sorted(self.opens, key=sort_key)

    def sorted_families(self) -> list:
        return sorted(self.families,
                      key=lambda f: tuple(sorted(sort_key(m) for m in f)))

    def contains_family(self, fam: Iterable[RealSet]) -> bool:
        return frozenset(m for m in fam if not m.is_empty) in self.families


def _family_union(fam: Family, cache: dict) -> RealSet:
    if fam not in cache:
        u = EMPTY
        for m in sorted(fam, key=sort_key):
            u = u.union(m)
        cache[fam] = u
    return cache[fam]


def plus_step(psi: CovCollection, rule: str, caps: GenCaps = GenCaps()) -> CovCollection:
    """One bounded application of a single gts-axiom closure rule."""
    fams = set(psi.families)
    ops = set(psi.opens)
    truncated = psi.truncated
    ucache: dict = {}
    opens_sorted = psi.sorted_opens()
    fams_sorted = psi.sorted_families()

    if rule == "finiteness":
        # axiom (i): finite unions/intersections of opens are open and every
        # finite family of opens is admissible
        ops.add(psi.carrier)
        ops.add(EMPTY)
        for size in range(1, caps.max_family_size + 1):
            for combo in itertools.combinations(opens_sorted, size):
                u = EMPTY
                inter = combo[0]
                for m in combo:
                    u = u.union(m)
                    inter = inter.intersect(m)
                ops.add(u)
                ops.add(inter)
                fam = frozenset(m for m in combo if not m.is_empty)
                fams.add(fam)
        fams.add(frozenset())
    elif rule == "stability":
        # axiom (ii): intersect an admissible family with an open
        for fam in fams_sorted:
            for v in opens_sorted:
                got = frozenset(x for x in (m.intersect(v) for m in fam)
                                if not x.is_empty)
                fams.add(got)
    elif rule == "transitivity":
        # axiom (iii): replace each member by an admissible family unioning to it
        by_union: dict = {}
        for fam in fams_sorted:
            by_union.setdefault(_family_union(fam, ucache), []).append(fam)
        for fam in fams_sorted:
            choices = []
            for m in sorted(fam, key=sort_key):
                cands = by_union.get(m, [])
                if not cands:
                    choices = None
                    break
                choices.append(cands)
            if not choices:
                continue
            n_combo = 1
            for c in choices:
                n_combo *= len(c)
            pick = itertools.product(*choices)
            if n_combo > 64:
                pick = [tuple(c[0] for c in choices)]
                truncated = True
            for combo in pick:
                merged = frozenset().union(*combo)
                fams.add(frozenset(m for m in merged if not m.is_empty))
    elif rule == "saturation":
        # axiom (iv): coarsen a family keeping the union and the refinement
        for size in range(1, caps.max_family_size + 1):
            for combo in itertools.combinations(opens_sorted, size):
                cu = EMPTY
                for m in combo:
                    cu = cu.union(m)
                cand = frozenset(m for m in combo if not m.is_empty)
                for fam in fams_sorted:
                    if _family_union(fam, ucache) != cu:
                        continue
                    if all(any(v.is_subset(u) for u in combo) for v in fam):
                        fams.add(cand)
                        break
    elif rule == "regularity":
        # axiom (v): glue a set along an admissible family
        for size in range(1, caps.max_family_size + 1):
            for combo in itertools.combinations(opens_sorted, size):
                v = EMPTY
                for m in combo:
                    v = v.union(m)
                if v in ops:
                    continue
                for fam in fams_sorted:
                    if not v.is_subset(_family_union(fam, ucache)):
                        continue
                    if all(v.intersect(u) in psi.opens for u in fam):
                        ops.add(v)
                        break
    else:
        raise ValueError(f"unknown plus rule {rule!r}")

    if len(ops) > caps.max_opens or len(fams) > caps.max_families:
        truncated = True
    return CovCollection(psi.carrier, frozenset(fams), frozenset(ops), truncated)


RULES = ("finiteness", "stability", "transitivity", "saturation", "regularity")


def generate_upto(psi: CovCollection, k: int, caps: GenCaps = GenCaps()) -> CovCollection:
    if k > caps.depth_cap:
        raise DepthCapError(f"depth {k} exceeds the configured cap {caps.depth_cap}")
    for _ in range(k):
        for rule in RULES:
            psi = plus_step(psi, rule, caps)
            if len(psi.opens) > caps.max_opens:
                return CovCollection(psi.carrier, psi.families, psi.opens, True)
    return psi


def member_generated(f: FamilySpec, psi: CovCollection, k: int,
                     caps: GenCaps = GenCaps()) -> GenerationResult:
    """Semi-decision: found=True proves f in <Psi>; found=False only means
    "not found within depth k" (with truncated flagging cap pressure)."""
    if k > caps.depth_cap:
        raise DepthCapError(f"depth {k} exceeds the configured cap {caps.depth_cap}")
    mats = members(f)
    if mats is None:
        return GenerationResult(False, True, 0)
    target = frozenset(m for m in mats if not m.is_empty)
    cur = psi
    if target in cur.families:
        return GenerationResult(True, cur.truncated, 0)
    for depth in range(1, k + 1):
        for rule in RULES:
            cur = plus_step(cur, rule, caps)
        if target in cur.families:
            return GenerationResult(True, cur.truncated, depth)
    return GenerationResult(False, cur.truncated, k)
