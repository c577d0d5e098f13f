import random
from fractions import Fraction as F

import pytest

from gtsreal.covers import (
    ALL_INDICES,
    CovCollection,
    DepthCapError,
    Directions,
    FiniteFamily,
    GenCaps,
    IndexRange,
    Periodic,
    PreconditionError,
    Restricted,
    Split,
    ef_member,
    ess_finite,
    ess_finite_on,
    finite_family,
    full_ring_closure,
    gen_topology,
    gen_topology_member,
    generate_upto,
    locally_ess_finite,
    member_generated,
    members,
    plus_step,
    restrict_family,
    union_of,
)
from gtsreal.oracles import OracleRefusal, oracle_ess_finite
from gtsreal.realset import (
    EMPTY,
    NEG_INF,
    POS_INF,
    REALS,
    Interval,
    RealSet,
    TopologyKind,
    closed,
    closed_open,
    interval,
    open_iv,
    point,
    with_tails,
)

PER_02 = Periodic(open_iv(0, 2), F(1))
PER_HALF_FROM0 = Periodic(open_iv(0, F(1, 2)), F(1), IndexRange(0, None))
NESTED_UP = Periodic(interval(NEG_INF, 0), F(1))  # {(-inf, k) : k in Z}


class TestUnionOf:
    def test_spec_examples(self):
        assert union_of(PER_02) == REALS
        assert union_of(finite_family([closed_open(0, 1), closed_open(1, 2)])) == \
            closed_open(0, 2)
        got = union_of(PER_HALF_FROM0)
        expect = with_tails(EMPTY, right=((Interval(F(0), F(1, 2), False, False),),
                                          F(1), F(0)))
        assert got == expect
        # point sampling cross-check
        for k in range(-64, 64):
            q = F(k, 8)
            assert got.contains_point(q) == any(
                PER_HALF_FROM0.member(i).contains_point(q) for i in range(0, 20))

    def test_nested_union(self):
        assert union_of(NESTED_UP) == REALS
        top = Periodic(interval(NEG_INF, 0), F(1), IndexRange(None, 5))
        assert union_of(top) == interval(NEG_INF, 5)


class TestEssFiniteOn:
    def test_periodic_on_bounded_k(self):
        v = ess_finite_on(PER_02, closed(0, 5))
        assert v.essentially_finite
        ks = sorted((m.inf_value(), m.sup_value()) for m in v.witness)
        assert (F(-1), F(1)) in ks and (F(4), F(6)) in ks

    def test_periodic_on_reals(self):
        v = ess_finite_on(PER_02, REALS)
        assert not v.essentially_finite
        assert "unbounded" in v.obstruction

    def test_finite_always(self):
        assert ess_finite_on(finite_family([REALS]), REALS).essentially_finite

    def test_nested(self):
        assert ess_finite_on(NESTED_UP, closed(0, 100)).essentially_finite
        v = ess_finite_on(NESTED_UP, interval(0, POS_INF, True, False))
        assert not v.essentially_finite

    def test_monotone_in_k(self):
        rng = random.Random(31)
        fams = [PER_02, PER_HALF_FROM0, NESTED_UP,
                finite_family([open_iv(0, 3), closed(2, 9)])]
        for f in fams:
            for _ in range(20):
                a = F(rng.randint(-40, 40), 4)
                b = a + F(rng.randint(0, 60), 4)
                if a + 1 > b:
                    continue
                big = closed(a, b + 3)
                small = closed(a + 1, b)
                if ess_finite_on(f, big).essentially_finite:
                    assert ess_finite_on(f, small).essentially_finite


class TestEssFiniteAndLocal:
    def test_spec_examples(self):
        assert not ess_finite(PER_02).essentially_finite
        assert locally_ess_finite(PER_02)
        five = finite_family([interval(NEG_INF, n) for n in range(1, 6)])
        assert ess_finite(five).essentially_finite

    def test_split(self):
        f = Split(F(0), finite_family([interval(NEG_INF, 1)]),
                  Periodic(closed_open(0, 2), F(1), ALL_INDICES))
        assert locally_ess_finite(f)
        assert ess_finite_on(f, interval(NEG_INF, 0)).essentially_finite
        assert not ess_finite_on(f, REALS).essentially_finite


class TestRestrict:
    def test_spec_examples(self):
        got = restrict_family(finite_family([open_iv(0, 2), open_iv(1, 3)]), closed(0, 1))
        assert isinstance(got, FiniteFamily)
        assert members(got) == [interval(0, 1, False, True)]
        f = PER_02
        assert restrict_family(f, REALS) is f
        r = restrict_family(f, closed(0, 5))
        assert isinstance(r, Restricted)
        ms = members(r)
        # occurrences (k, k+2) meeting [0,5]: k = -1..4, six nonempty members
        assert len(ms) == 6
        assert interval(0, 1, True, False) in ms
        assert interval(4, 5, False, True) in ms


class TestFullRing:
    def test_spec_examples(self):
        got = full_ring_closure([closed_open(0, 1), closed_open(1, 2)], REALS)
        assert set(got) == {EMPTY, REALS, closed_open(0, 1), closed_open(1, 2),
                            closed_open(0, 2)}
        assert full_ring_closure([], closed(0, 1)) == sorted(
            [EMPTY, closed(0, 1)], key=str)
        got = full_ring_closure([open_iv(0, 2), open_iv(1, 3)], REALS)
        assert set(got) == {EMPTY, REALS, open_iv(0, 2), open_iv(1, 3),
                            open_iv(1, 2), open_iv(0, 3)}

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            full_ring_closure([open_iv(0, 2)], closed(0, 1))

    def test_closure_laws_exhaustive(self):
        gens = [open_iv(0, 2), closed_open(3, 4), point(1)]
        y = closed(-1, 6)
        ring = full_ring_closure(gens, y)
        rs = set(ring)
        assert EMPTY in rs and y in rs
        for a in ring:
            for b in ring:
                assert a.union(b) in rs
                assert a.intersect(b) in rs

    def test_gen_topology(self):
        assert gen_topology([]) == sorted([EMPTY, REALS], key=str)
        assert gen_topology_member([open_iv(0, 2), open_iv(1, 3)], open_iv(0, 3))


class _FakeSchema:
    def __init__(self, dirs):
        self._dirs = dirs

    def directions(self):
        return self._dirs

    def element(self, n):
        raise AssertionError("closed form should not enumerate")


class _FakeBornology:
    def __init__(self, dirs):
        self._schema = _FakeSchema(dirs)

    def base_schema(self):
        return self._schema


class TestEfMember:
    def test_upper_family_on_ub(self):
        fam = finite_family([interval(NEG_INF, n) for n in range(0, 6)])
        ub = _FakeBornology(Directions(True, False))
        assert ef_member(fam, TopologyKind.UPPER, ub)

    def test_periodic_on_nat_bounded(self):
        nat = _FakeBornology(Directions(False, False))
        assert ef_member(PER_02, TopologyKind.NAT, nat)

    def test_periodic_on_all_sets(self):
        all_b = _FakeBornology(Directions(True, True))
        assert not ef_member(PER_02, TopologyKind.NAT, all_b)

    def test_member_outside_l(self):
        fam = finite_family([closed(0, 1)])
        nat = _FakeBornology(Directions(False, False))
        with pytest.raises(PreconditionError):
            ef_member(fam, TopologyKind.NAT, nat)

    def test_nested_on_ub(self):
        ub = _FakeBornology(Directions(True, False))
        assert ef_member(NESTED_UP, TopologyKind.UPPER, ub)
        lb = _FakeBornology(Directions(False, True))
        assert not ef_member(NESTED_UP, TopologyKind.UPPER, lb)


class TestGeneration:
    def test_member_at_depth_zero(self):
        psi = CovCollection.from_specs([finite_family([open_iv(0, 1)])])
        got = member_generated(finite_family([open_iv(0, 1)]), psi, 0)
        assert got.found and got.depth_used == 0

    def test_spec_generation_example(self):
        # {(0,1),(1,2)} obtainable from opens {(0,1),(1,2),(0,2)} by finiteness
        psi = CovCollection.from_specs([
            finite_family([open_iv(0, 2)]),
            finite_family([open_iv(0, 1)]),
            finite_family([open_iv(1, 2)]),
        ])
        target = finite_family([open_iv(0, 1), open_iv(1, 2)])
        got = member_generated(target, psi, 1)
        assert got.found

    def test_periodic_not_found(self):
        psi = CovCollection.from_specs([
            finite_family([open_iv(0, 2), open_iv(1, 3)])])
        got = member_generated(PER_02, psi, 3)
        assert not got.found

    def test_depth_cap(self):
        psi = CovCollection.from_specs([finite_family([open_iv(0, 1)])])
        with pytest.raises(DepthCapError):
            member_generated(finite_family([open_iv(0, 1)]), psi, 99)

    def test_monotone_and_contains_input(self):
        psi = CovCollection.from_specs([
            finite_family([open_iv(0, 2)]), finite_family([open_iv(1, 3)])])
        one = generate_upto(psi, 1, GenCaps(max_opens=64))
        two = generate_upto(psi, 2, GenCaps(max_opens=64))
        assert psi.families <= one.families <= two.families
        for rule in ("finiteness", "stability", "transitivity", "saturation",
                     "regularity"):
            stepped = plus_step(psi, rule)
            assert psi.families <= stepped.families
            assert psi.opens <= stepped.opens


class TestOracleAgreement:
    def test_oracle_spec_examples(self):
        mats = [PER_02.member(k) for k in range(-3, 9)]
        assert oracle_ess_finite(mats, closed(0, 5), 8, full_union=union_of(PER_02))
        assert oracle_ess_finite([open_iv(0, 1)], open_iv(2, 3), 2)
        with pytest.raises(OracleRefusal):
            oracle_ess_finite([PER_02.member(0)], closed(0, 5), 8,
                              full_union=union_of(PER_02))

    def test_randomized_agreement(self):
        rng = random.Random(61)
        agreements = 0
        for _ in range(120):
            kind = rng.randrange(3)
            if kind == 0:
                ms = [open_iv(q, q + rng.randint(1, 3))
                      for q in (F(rng.randint(-8, 8), 2) for _ in range(rng.randint(1, 5)))]
                fam = finite_family(ms)
                trunc = members(fam)
                fu = union_of(fam)
            elif kind == 1:
                seed = open_iv(0, rng.randint(1, 3))
                fam = Periodic(seed, F(rng.randint(1, 2)), ALL_INDICES)
                trunc = [fam.member(k) for k in range(-9, 10)]
                fu = union_of(fam)
            else:
                fam = Periodic(interval(NEG_INF, rng.randint(-2, 2)), F(1), ALL_INDICES)
                trunc = [fam.member(k) for k in range(-9, 10)]
                fu = union_of(fam)
            a = F(rng.randint(-12, 6), 2)
            k_set = closed(a, a + rng.randint(0, 3))
            try:
                expect = oracle_ess_finite(trunc, k_set, 8, full_union=fu)
            except OracleRefusal:
                continue
            got = ess_finite_on(fam, k_set)
            assert got.essentially_finite == expect, (str(fam), str(k_set))
            agreements += 1
        assert agreements >= 100
