from fractions import Fraction as F

import pytest

from gtsreal.checkers import (
    AxiomProbeReport,
    ChainReport,
    MetrizabilityReport,
    PiecewiseAffineMap,
    ProperReport,
    StrictContReport,
    UnrepresentableError,
    axiom_probe,
    base_check,
    chain_check,
    chain_search,
    initial_bornology_member,
    metrizable_verdict,
    preimage_family,
    proper_check,
    strict_cont_refute,
    uniform_chain_check,
)
from gtsreal.covers import IndexRange, Periodic, PreconditionError, finite_family
from gtsreal.lines import (
    ALL_SETS,
    FB,
    LB,
    NAT_BOUNDED,
    UB,
    BaseSchema,
    line,
    metric_bounded,
)
from gtsreal.qmetric import metric
from gtsreal.realset import (
    NEG_INF,
    POS_INF,
    REALS,
    TopologyKind,
    closed,
    closed_open,
    interval,
    open_iv,
    point,
)

from helpers import probe_corpus

SYM_SCHEMA = BaseSchema(lo=(F(-1), F(-1)), hi=(F(1), F(1)))          # [-(n+1), n+1]
UB_SCHEMA = BaseSchema(lo=None, hi=(F(0), F(1)), hi_closed=False)    # (-inf, n)


class TestPiecewiseAffine:
    def test_eval_and_windows(self):
        f = PiecewiseAffineMap((F(0),), ((F(1), F(0)), (F(2), F(-1))))
        assert f(-3) == -3
        assert f(0) == -1
        assert f(2) == 3

    def test_image_preimage_roundtrip(self):
        f = PiecewiseAffineMap.affine(2, 1)
        a = closed(0, 1) | point(3)
        img = f.image(a)
        assert img == closed(1, 3) | point(7)
        assert f.preimage(img) == a

    def test_negative_slope_and_constant(self):
        g = PiecewiseAffineMap.affine(-1, 0)
        assert g.image(closed_open(0, 1)) == interval(-1, 0, False, True)
        h = PiecewiseAffineMap((), ((F(0), F(5)),))
        assert h.image(REALS) == point(5)
        assert h.preimage(point(5)) == REALS
        assert h.preimage(open_iv(0, 1)).is_empty


class TestProperCheck:
    def test_spec_examples(self):
        got = proper_check(UB, TopologyKind.UPPER, TopologyKind.LOWER, 16)
        assert got.proper
        got = proper_check(LB, TopologyKind.UPPER, TopologyKind.UPPER, 16)
        assert not got.proper
        got = proper_check(LB, TopologyKind.UPPER, TopologyKind.LOWER, 16)
        assert not got.proper
        got = proper_check(FB, TopologyKind.SORG_R, TopologyKind.NAT, 16)
        assert not got.proper

    def test_certificates_reverify(self):
        got = proper_check(NAT_BOUNDED, TopologyKind.NAT, TopologyKind.NAT, 12)
        assert got.proper
        sc = NAT_BOUNDED.base_schema()
        for n, m in got.certificates:
            assert sc.element(n).closure(TopologyKind.NAT).is_subset(
                sc.element(m).interior(TopologyKind.NAT))


class TestBaseCheck:
    def test_spec_examples(self):
        assert base_check(NAT_BOUNDED, TopologyKind.NAT)
        assert not base_check(FB, TopologyKind.SORG_R)
        assert base_check(UB, TopologyKind.UPPER)

    def test_more(self):
        assert base_check(ALL_SETS, TopologyKind.NAT)
        assert not base_check(FB, TopologyKind.NAT)
        assert not base_check(UB, TopologyKind.LOWER)


class TestChainChecks:
    def test_d_n_uniform_pass(self):
        rep = chain_check(metric("d_n"), SYM_SCHEMA, F(1, 2), 64)
        assert rep.verdict == "pass" and rep.uniform

    def test_d_n_plus_fails_early(self):
        # left end of [B_n]^delta is phi^-1(1/(n+2) - delta), which escapes
        # B_(n+1) as soon as (n+2)(n+3) > 1/delta; for delta = 1/8 that is n=1
        rep = chain_check(metric("d_n_plus"), SYM_SCHEMA, F(1, 8), 64)
        assert rep.verdict == "fail_at"
        assert rep.fail_index == 1
        assert rep.missing is not None and not rep.missing.is_empty

    def test_d_n_plus_failure_law(self):
        import math
        for k in (2, 3, 4, 5, 7, 9, 12):
            d = F(1, 2**k)
            rep = chain_check(metric("d_n_plus"), SYM_SCHEMA, d, 64)
            predicted = next(n for n in range(200) if (n + 2) * (n + 3) > 1 / d)
            assert rep.verdict == "fail_at"
            assert rep.fail_index == predicted
            assert rep.fail_index <= math.ceil(1 / d)

    def test_d_n_plus_ub_schema_uniform(self):
        rep = chain_check(metric("d_n_plus"), UB_SCHEMA, F(1, 2), 64)
        assert rep.verdict == "pass" and rep.uniform
        got = uniform_chain_check(metric("d_n_plus"), UB_SCHEMA, 64)
        assert got.verdict == "pass"

    def test_chain_failures_carry_missing_region(self):
        rep = chain_check(metric("d_n"), SYM_SCHEMA, F(3), 64)
        assert rep.verdict == "fail_at" and rep.fail_index == 0
        # [B_0]^3 = (-4, 4) vs B_1 = [-2, 2]
        assert rep.missing == open_iv(-4, -2) | open_iv(2, 4)

    def test_chain_search_theorem_style(self):
        rep = chain_search(metric("d_n"), SYM_SCHEMA, 32)
        assert rep.verdict == "pass"
        # per-index deltas exist for d_n_plus (delta_n ~ n^-2) although no
        # single delta works: the theorem-style search passes up to N while
        # the uniform check refutes, reproducing the equivalence/uniformity gap
        rep = chain_search(metric("d_n_plus"), SYM_SCHEMA, 32)
        assert rep.verdict == "truncated"
        assert all(c.holds for c in rep.certificates)
        rep = uniform_chain_check(metric("d_n_plus"), SYM_SCHEMA, 32)
        assert rep.verdict == "fail_at"

    def test_rho_s_minus_not_uniform_on_nat(self):
        rep = uniform_chain_check(metric("rho_S_minus"), SYM_SCHEMA, 32)
        assert rep.verdict == "fail_at"

    def test_grid_schema_fails(self):
        rep = chain_check(metric("d_n"), FB.base_schema(), F(1, 2), 8)
        assert rep.verdict == "fail_at" and rep.fail_index == 0


class TestMetrizableVerdict:
    PROBES = probe_corpus()

    def test_consistent_spec_examples(self):
        got = metrizable_verdict(line("standard/lst"), NAT_BOUNDED, metric("d_n"),
                                 self.PROBES)
        assert got.consistent
        got = metrizable_verdict(line("sorgenfrey/lst"),
                                 metric_bounded(metric("rho_0")), metric("rho_0"),
                                 self.PROBES)
        assert got.consistent

    def test_inconsistent_spec_example(self):
        got = metrizable_verdict(line("standard/ut"), FB, metric("d_n"), self.PROBES)
        assert not got.consistent
        assert got.failing_part == "bornology"

    def test_topology_mismatch(self):
        got = metrizable_verdict(line("standard/ut"), NAT_BOUNDED, metric("rho_u"),
                                 self.PROBES)
        assert got.failing_part == "topology"


class TestStrictCont:
    def test_spec_examples(self):
        battery = [Periodic(open_iv(0, 2), F(1))]
        ident = PiecewiseAffineMap.identity()
        got = strict_cont_refute(ident, line("standard/st"), line("standard/ut"),
                                 battery)
        assert got.verdict == "REFUTED"
        got = strict_cont_refute(ident, line("standard/ut"), line("standard/lst"),
                                 battery)
        assert got.verdict == "UNREFUTED"
        shift = PiecewiseAffineMap.affine(1, 1)
        got = strict_cont_refute(shift, line("standard/lst"), line("standard/lst"),
                                 battery)
        assert got.verdict == "UNREFUTED"

    def test_battery_precondition(self):
        battery = [Periodic(open_iv(0, 2), F(1))]
        with pytest.raises(PreconditionError):
            strict_cont_refute(PiecewiseAffineMap.identity(),
                               line("standard/ut"), line("standard/st"), battery)

    def test_refuted_witness_reverifies(self):
        from gtsreal.lines import cov_member
        battery = [Periodic(open_iv(0, 2), F(1))]
        got = strict_cont_refute(PiecewiseAffineMap.identity(),
                                 line("standard/st"), line("standard/lst"), battery)
        assert got.verdict == "REFUTED"
        assert cov_member(line("standard/lst"), got.witness)
        assert not cov_member(line("standard/st"), got.preimage)

    def test_unrepresentable_preimage_reported(self):
        bent = PiecewiseAffineMap((F(0),), ((F(-1), F(0)), (F(1), F(0))))
        battery = [Periodic(open_iv(0, 2), F(1))]
        got = strict_cont_refute(bent, line("standard/lst"), line("standard/lst"),
                                 battery)
        assert got.verdict == "UNREFUTED"
        assert got.notes  # the escape is reported, never silent


class TestAxiomProbes:
    def test_spec_lines_pass(self):
        for name in ("standard/om", "sorgenfrey/lst", "standard/uu",
                     "sorgenfrey/om", "standard/lst", "standard/uf"):
            rep = axiom_probe(line(name))
            assert rep.passed, (name, rep.failures)
            assert rep.checks > 10


class TestInitialBornology:
    def test_spec_examples(self):
        ident = PiecewiseAffineMap.identity()
        neg = PiecewiseAffineMap.affine(-1, 0)
        assert initial_bornology_member([ident, neg], [UB, UB], closed(0, 1))
        assert not initial_bornology_member([ident, neg], [UB, UB],
                                            interval(0, POS_INF, True, False))
        assert initial_bornology_member([], [], REALS)


class TestCoherenceInvariants:
    def test_consistent_triples_are_proper(self):
        # whenever the verdict is CONSISTENT with metric d, the bornology is
        # (tau(d), tau(d^-1))-proper
        from gtsreal.report import _metrizability_table
        from helpers import probe_corpus
        probes = probe_corpus()
        seen = 0
        for l, b, d, expect, anchor, part in _metrizability_table():
            if expect != "CONSISTENT":
                continue
            got = metrizable_verdict(l, b, d, probes)
            assert got.consistent, (str(l), str(b), d.label())
            pr = proper_check(b, d.topology_of(), d.conjugate().topology_of(), 16)
            assert pr.proper, (str(l), str(b), d.label())
            seen += 1
        assert seen >= 20

    def test_chain_certificates_reverify(self):
        rep = chain_check(metric("d_n"), SYM_SCHEMA, F(1, 2), 16)
        assert rep.certificates
        for cert in rep.certificates:
            nb = metric("d_n").nbhd(SYM_SCHEMA.element(cert.index), cert.delta)
            assert nb.is_subset(SYM_SCHEMA.element(cert.index + 1)) == cert.holds
        rep = chain_check(metric("d_n_plus"), SYM_SCHEMA, F(1, 8), 16)
        for cert in rep.certificates:
            nb = metric("d_n_plus").nbhd(SYM_SCHEMA.element(cert.index), cert.delta)
            assert nb.is_subset(SYM_SCHEMA.element(cert.index + 1)) == cert.holds
