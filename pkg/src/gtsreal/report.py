"""Deterministic evaluation reports and the built-in corpus verification
battery: identity tables, the pt map with its bornology invariance, the
small/compact subsumption sweep, the metrizability verdict table, chain
criteria, properness/base anchors, axiom probes, smallness refuters, weak
local smallness, and the restriction/generation agreement battery."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from gtsreal import checkers, covers, oracles
from gtsreal.checkers import (
    axiom_probe,
    base_check,
    chain_check,
    chain_search,
    metrizable_verdict,
    proper_check,
    uniform_chain_check,
)
from gtsreal.covers import (
    CovCollection,
    GenCaps,
    ess_finite,
    ess_finite_on,
    finite_family,
    full_ring_closure,
    locally_ess_finite,
    member_generated,
    members,
    restrict_family,
    union_of,
)
from gtsreal.lines import (
    ALL_SETS,
    CORPUS,
    FB,
    LB,
    NAT_BOUNDED,
    UB,
    UF_SMALL,
    Bornology,
    acb_bornology,
    acb_member,
    admissible_battery,
    bornology_member,
    cb_bornology,
    cb_member,
    cov_member,
    line,
    op_member,
    pt_of,
    sm_bornology,
    sm_member,
    smallness_refuter,
    weak_local_small_cover,
    weak_local_small_verdict,
)
from gtsreal.qmetric import EquivVerdict, metric, uniform_equiv_refute
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
    open_closed,
    open_iv,
    point,
    points,
    with_tails,
)

SCHEMA_VERSION = "gtsreal-report-v1"


@dataclass(frozen=True)
class Caps:
    chain_n: int = 64
    depth: int = 4
    oracle_subfamily: int = 8

    def __str__(self):
        return f"chain={self.chain_n} depth={self.depth} oracle={self.oracle_subfamily}"


@dataclass(frozen=True)
class Record:
    ident: str
    kind: str
    status: str          # "pass" | "fail" | "error" | "info"
    detail: str

    def machine(self) -> str:
        detail = self.detail.replace("|", "!").replace("\n", " ")
        return f"{self.ident}|{self.kind}|{self.status}|{detail}"


@dataclass(frozen=True)
class Report:
    caps: Caps
    records: Tuple[Record, ...]
    engine_version: str = SCHEMA_VERSION

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if r.status in ("fail", "error"))

    @property
    def passes(self) -> int:
        return sum(1 for r in self.records if r.status in ("pass", "ok"))

    def machine_text(self) -> str:
        head = [self.engine_version, f"caps {self.caps}"]
        body = [r.machine() for r in self.records]
        tail = [f"summary pass={self.passes} fail={self.failures} total={len(self.records)}"]
        return "\n".join(head + body + tail) + "\n"

    def human_text(self) -> str:
        width = max((len(r.ident) for r in self.records), default=8)
        out = [f"{self.engine_version}  (caps: {self.caps})", ""]
        for r in self.records:
            out.append(f"  {r.ident.ljust(width)}  {r.status.upper():5}  {r.detail}")
        out.append("")
        out.append(f"  {self.passes} passed, {self.failures} failed, "
                   f"{len(self.records)} records")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# query evaluation
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (RealSet, Fraction)):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _eval_query(doc, kind: str, args: tuple, caps: Caps) -> str:
    if kind == "normalize":
        return str(args[0])
    if kind == "boundedness":
        b = args[0].boundedness()
        return (f"bounded={_fmt(b.bounded)} above={_fmt(b.bounded_above)} "
                f"below={_fmt(b.bounded_below)} finite={_fmt(b.finite)}")
    if kind == "subset":
        return _fmt(args[0].is_subset(args[1]))
    if kind == "equal":
        return _fmt(args[0] == args[1])
    if kind == "contains":
        return _fmt(args[0].contains_point(args[1]))
    if kind == "sample":
        a, lo, hi, step = args
        pts = a.sample_points(Interval(lo, hi, True, True), step)
        return _fmt(pts)
    if kind == "closure":
        return str(args[0].closure(args[1]))
    if kind == "interior":
        return str(args[0].interior(args[1]))
    if kind == "eval":
        return _fmt(args[0].eval(args[1], args[2]))
    if kind == "ball":
        return str(args[0].ball(args[1], args[2]))
    if kind == "nbhd":
        return str(args[0].nbhd(args[1], args[2]))
    if kind == "bounded_set":
        return _fmt(args[0].is_bounded_set(args[1]))
    if kind == "topology_of":
        return args[0].topology_of().value
    if kind == "union_of":
        return str(union_of(args[0]))
    if kind == "members":
        ms = members(args[0])
        return "not finitely enumerable" if ms is None else _fmt(sorted(ms, key=str))
    if kind == "ess_finite":
        v = ess_finite(args[0])
        return _verdict_text(v)
    if kind == "ess_finite_on":
        v = ess_finite_on(args[0], args[1])
        return _verdict_text(v)
    if kind == "locally_ess_finite":
        return _fmt(locally_ess_finite(args[0]))
    if kind == "full_ring":
        y, gens = args
        ring = full_ring_closure(list(gens), y)
        return _fmt(ring)
    if kind == "gen_topology":
        return _fmt(covers.gen_topology(list(args[0])))
    if kind == "gen_topology_member":
        return _fmt(covers.gen_topology_member(list(args[0]), args[1]))
    if kind == "ef_member":
        return _fmt(covers.ef_member(args[0], args[1], args[2]))
    if kind == "member_generated":
        fam, coll_name, depth = args
        got = member_generated(fam, doc.collections[coll_name], depth,
                               GenCaps(depth_cap=max(8, depth)))
        extra = " truncated" if got.truncated else ""
        return f"found={_fmt(got.found)} depth={got.depth_used}{extra}"
    if kind == "op_member":
        return _fmt(op_member(args[0], args[1]))
    if kind == "cov_member":
        return _fmt(cov_member(args[0], args[1]))
    if kind == "sm_member":
        return _fmt(sm_member(args[0], args[1]))
    if kind == "cb_member":
        return _fmt(cb_member(args[0], args[1]))
    if kind == "acb_member":
        return _fmt(acb_member(args[0], args[1]))
    if kind == "pt_of":
        return str(pt_of(args[0]))
    if kind == "bornology_member":
        return _fmt(bornology_member(args[0], args[1]))
    if kind == "proper_check":
        b, t1, t2, n = args
        got = proper_check(b, t1, t2, n)
        if got.proper:
            return "PROPER"
        return f"IMPROPER at n={got.witness_index} closure={got.witness_closure}"
    if kind == "base_check":
        return _fmt(base_check(args[0], args[1]))
    if kind == "chain_check":
        d, b, delta, n = args
        return _chain_text(chain_check(d, _schema_of(b), delta, n))
    if kind == "chain_search":
        d, b, n = args
        return _chain_text(chain_search(d, _schema_of(b), n))
    if kind == "uniform_chain":
        d, b, n = args
        return _chain_text(uniform_chain_check(d, _schema_of(b), n))
    if kind == "metrizable":
        l, b, d = args
        got = metrizable_verdict(l, b, d, _default_probes())
        if got.consistent:
            return "CONSISTENT"
        return f"INCONSISTENT part={got.failing_part}: {got.detail}"
    if kind == "strict_cont_refute":
        f, src, dst, battery = args
        got = checkers.strict_cont_refute(f, src, dst, list(battery))
        if got.verdict == "REFUTED":
            return f"REFUTED witness={got.witness}"
        notes = f" notes={'; '.join(got.notes)}" if got.notes else ""
        return "UNREFUTED" + notes
    if kind == "axiom_probe":
        got = axiom_probe(args[0])
        if got.passed:
            return f"all pass ({got.checks} checks)"
        return "violations: " + "; ".join(got.failures)
    if kind == "initial_member":
        maps, borns, a = args
        return _fmt(checkers.initial_bornology_member(list(maps), list(borns), a))
    if kind == "oracle_ess_finite":
        fam, k0, k1, k_set, cap = args
        from gtsreal.covers import Periodic
        if isinstance(fam, Periodic):
            lo = fam.index_range.lo
            hi = fam.index_range.hi
            lo = k0 if lo is None else max(lo, k0)
            hi = k1 if hi is None else min(hi, k1)
            trunc = [fam.member(k) for k in range(lo, hi + 1)]
        else:
            mats = members(fam)
            if mats is None:
                raise oracles.OracleRefusal("family is not finitely enumerable")
            trunc = mats
        got = oracles.oracle_ess_finite(trunc, k_set, cap, full_union=union_of(fam))
        return _fmt(got)
    raise ValueError(f"unhandled query kind {kind!r}")


def _verdict_text(v) -> str:
    if v.essentially_finite:
        return f"essentially_finite witness_size={len(v.witness or ())}"
    return f"not essentially finite: {v.obstruction}"


def _chain_text(rep) -> str:
    extra = f" delta={rep.delta_used}" if rep.delta_used is not None else ""
    if rep.verdict == "fail_at":
        return f"fail_at({rep.fail_index}) missing={rep.missing}{extra}"
    return rep.summary()


def _schema_of(b: Bornology):
    sc = b.base_schema()
    if sc is None:
        raise covers.PreconditionError(f"{b} has no indexed base")
    return sc


_PROBES_CACHE = None


def _default_probes() -> list[RealSet]:
    global _PROBES_CACHE
    if _PROBES_CACHE is None:
        half = (Interval(Fraction(0), Fraction(1, 2), True, False),)
        opat = (Interval(Fraction(0), Fraction(1, 2), False, False),)
        ppat = (Interval(Fraction(0), Fraction(0), True, True),)
        _PROBES_CACHE = [
            EMPTY, point(0), points([0, 1, 2]), points([Fraction(-5), 3, Fraction(7, 2)]),
            closed(0, 1), open_iv(0, 1), closed_open(0, 1), open_closed(0, 1),
            closed(-2, 5), interval(NEG_INF, 0), interval(NEG_INF, 0, False, True),
            interval(0, POS_INF), interval(0, POS_INF, True, False), REALS,
            interval(NEG_INF, -1).union(open_iv(1, POS_INF)),
            closed(0, 1).union(closed(2, 3)),
            closed_open(0, 1).union(closed_open(2, 3)),
            point(0).union(open_iv(1, 2)),
            interval(NEG_INF, 0).union(point(1)),
            with_tails(EMPTY, left=(ppat, Fraction(1), Fraction(0))),
            with_tails(EMPTY, right=(ppat, Fraction(1), Fraction(1, 2))),
            with_tails(EMPTY, left=(opat, Fraction(1), Fraction(0))),
            with_tails(EMPTY, right=(half, Fraction(1), Fraction(0))),
            with_tails(EMPTY, left=(half, Fraction(1), Fraction(0)),
                       right=(half, Fraction(1), Fraction(0))),
            with_tails(closed(-3, -2), right=(opat, Fraction(1), Fraction(0))),
            with_tails(point(-4), left=(ppat, Fraction(2), Fraction(-5))),
        ]
    return _PROBES_CACHE


def run(doc, caps: Caps = Caps()) -> Report:
    """Evaluate every query of a document; per-query errors become records,
    never aborts."""
    records = []
    for i, (kind, args) in enumerate(doc.queries):
        ident = f"q{i:03d}"
        try:
            detail = _eval_query(doc, kind, args, caps)
            records.append(Record(ident, kind, "ok", detail))
        except Exception as e:  # noqa: BLE001 - per-query isolation is the contract
            records.append(Record(ident, kind, "error", f"{type(e).__name__}: {e}"))
    return Report(caps, tuple(records))


# ---------------------------------------------------------------------------
# the corpus battery
# ---------------------------------------------------------------------------

def _check(records, ident, kind, ok: bool, detail: str):
    records.append(Record(ident, kind, "pass" if ok else "fail", detail))


def _metrizability_table():
    """(line, bornology, metric, expected, anchor, expected failing part)."""
    t = []

    def c(ln, b, d, anchor):
        t.append((line(ln), b, metric(d), "CONSISTENT", anchor, None))

    def x(ln, b, d, anchor, part):
        t.append((line(ln), b, metric(d), "INCONSISTENT", anchor, part))

    c("standard/uu", UB, "rho_u", "small=adm-compact=bounded-above, by rho_u")
    c("standard/ul", ALL_SETS, "rho_u1", "everything small, by the capped rho_u1")
    c("standard/uf", UB, "rho_u", "adm-compact=compact=bounded-above, by rho_u")
    c("standard/ul", UB, "rho_u", "compact bornology by rho_u")
    c("standard/ut", NAT_BOUNDED, "d_n", "adm-compact metrized by d_n")
    c("standard/lst", NAT_BOUNDED, "d_n", "small=bounded, by d_n")
    c("standard/lom", NAT_BOUNDED, "d_n", "small=bounded, by d_n")
    c("standard/l_plus_om", UB, "d_n_plus", "small=adm-compact, by the damped metric")
    c("standard/l_plus_st", UB, "d_n_plus", "small=adm-compact, by the damped metric")
    c("standard/l_plus_om", UB, "d_u", "bounded-above sets, by d_u")
    c("standard/l_plus_st", UB, "d_u", "bounded-above sets, by d_u")
    for ln in ("standard/om", "standard/slom", "standard/rom", "standard/st"):
        c(ln, ALL_SETS, "d_n1", "everything small, by the capped d_n1")
        c(ln, NAT_BOUNDED, "d_n", "compact bornology by d_n")
    c("sorgenfrey/lst", NAT_BOUNDED, "rho_0", "small=adm-compact=bounded, by rho_0")
    c("sorgenfrey/lom", NAT_BOUNDED, "rho_0", "small=adm-compact=bounded, by rho_0")
    c("sorgenfrey/l_plus_st", UB, "rho_S", "bounded-above sets, by rho_S")
    c("sorgenfrey/l_plus_om", UB, "rho_S", "bounded-above sets, by rho_S")
    c("sorgenfrey/l_minus_om", LB, "rho_L", "bounded-below sets, by rho_L")
    c("sorgenfrey/l_minus_st", LB, "rho_L", "bounded-below sets, by rho_L")
    for ln in ("sorgenfrey/om", "sorgenfrey/slom", "sorgenfrey/st",
               "sorgenfrey/sl_plus_om"):
        c(ln, ALL_SETS, "rho_S1", "everything small, by the capped rho_S1")

    x("standard/ut", FB, "d_n", "finite sets never match d_n-bounded sets",
      "bornology")
    x("standard/uf", UF_SMALL, "rho_u", "reverse-well-ordered sets never match "
      "rho_u-bounded sets", "bornology")
    x("standard/uf", LB, "rho_u",
      "bounded-below sets never match (their upper-interiors are empty)",
      "bornology")
    x("sorgenfrey/ut", FB, "rho_S", "finite sets admit no half-open open base",
      "bornology")
    x("sorgenfrey/ut", FB, "rho_L", "same failure against rho_L", "bornology")
    for ln, d in (("sorgenfrey/lst", "rho_0"), ("sorgenfrey/lom", "rho_0"),
                  ("sorgenfrey/l_plus_st", "rho_S"), ("sorgenfrey/l_minus_st", "rho_L"),
                  ("sorgenfrey/om", "rho_S1"), ("sorgenfrey/st", "rho_S1"),
                  ("sorgenfrey/slom", "rho_S1"), ("sorgenfrey/sl_plus_om", "rho_S1"),
                  ("sorgenfrey/ut", "rho_S")):
        x(ln, FB, d, "relatively compact sets are finite, never a ball bornology",
          "bornology")
    return t


def _section_identities(records, probes, sm_override=None):
    for l in CORPUS:
        sb = sm_bornology(l)
        if sm_override is not None:
            sb = sm_override.get(str(l), sb)
        cb = cb_bornology(l)
        ab = acb_bornology(l)
        bad = []
        for a in probes:
            if sb.member(a) != sm_member(l, a):
                bad.append(f"sm({a})")
            if cb.member(a) != cb_member(l, a):
                bad.append(f"cb({a})")
            if ab.member(a) != acb_member(l, a):
                bad.append(f"acb({a})")
        _check(records, f"identity/{l}", "bornology-identity", not bad,
               f"Sm={sb} CB={cb} ACB={ab} on {len(probes)} probes"
               + (f"; mismatches: {bad[:3]}" if bad else ""))


def _section_pt(records, probes):
    for l in CORPUS:
        lp = pt_of(l)
        ok = all(sm_member(l, a) == sm_member(lp, a)
                 and cb_member(l, a) == cb_member(lp, a) for a in probes)
        _check(records, f"pt/{l}", "pt-invariance", ok, f"pt image {lp}")
    # bounded generation probe for the pt machinery
    psi = CovCollection.from_specs([
        finite_family([open_iv(0, 2)]),
        finite_family([open_iv(0, 1)]),
        finite_family([open_iv(1, 2)]),
    ])
    got = member_generated(finite_family([open_iv(0, 1), open_iv(1, 2)]), psi, 1)
    _check(records, "pt/generation-probe", "member-generated", got.found,
           f"finiteness closure found at depth {got.depth_used}")


def _section_subsumption(records, probes):
    bad = []
    for l in CORPUS:
        for a in probes:
            if (sm_member(l, a) or cb_member(l, a)) and not acb_member(l, a):
                bad.append(f"{l}:{a}")
    _check(records, "subsumption/corpus", "acb-subsumption", not bad,
           f"Sm u CB inside ACB over {len(CORPUS)} lines x {len(probes)} probes"
           + (f"; violations: {bad[:3]}" if bad else ""))


def _section_metrizability(records, probes, caps):
    for l, b, d, expect, anchor, part in _metrizability_table():
        got = metrizable_verdict(l, b, d, probes, n_max=min(caps.chain_n, 16))
        ok = got.verdict == expect and (part is None or got.failing_part == part)
        want = expect if part is None else f"{expect}@{part}"
        _check(records, f"metrizable/{l}/{b}/{d.label()}", "metrizability", ok,
               f"{got.verdict}{'' if got.failing_part is None else '@' + got.failing_part}"
               f" (expected {want}; {anchor})")


def _section_chains(records, caps):
    from gtsreal.lines import BaseSchema
    sym = BaseSchema(lo=(Fraction(-1), Fraction(-1)), hi=(Fraction(1), Fraction(1)))
    ub_schema = UB.base_schema()
    n = caps.chain_n

    rep = chain_check(metric("d_n"), sym, Fraction(1, 2), n)
    _check(records, "chain/d_n-sym-1/2", "chain", rep.verdict == "pass" and rep.uniform,
           rep.summary() + " (expected uniform pass)")
    ok = True
    details = []
    for k in range(2, 13):
        delta = Fraction(1, 2**k)
        rep = chain_check(metric("d_n_plus"), sym, delta, n)
        good = rep.verdict == "fail_at" and rep.fail_index <= 1 / delta
        ok = ok and good
        details.append(f"2^-{k}->{rep.fail_index}")
    _check(records, "chain/d_n_plus-sym-dyadics", "chain", ok,
           "fail indices " + ",".join(details) + " all <= ceil(1/delta)")
    rep = chain_check(metric("d_n_plus"), ub_schema, Fraction(1, 2), n)
    _check(records, "chain/d_n_plus-ub-1/2", "chain",
           rep.verdict == "pass" and rep.uniform, rep.summary())
    rep = uniform_chain_check(metric("d_n_plus"), ub_schema, n)
    _check(records, "chain/d_n_plus-ub-uniform", "chain", rep.verdict == "pass",
           rep.summary())
    rep = uniform_chain_check(metric("rho_S_minus"), sym, min(n, 32))
    _check(records, "chain/rho_S_minus-not-uniform", "chain", rep.verdict == "fail_at",
           rep.summary() + " (the flipped-damping metric admits no uniform delta)")
    rep = uniform_chain_check(metric("rho_0"), NAT_BOUNDED.base_schema(), min(n, 32))
    _check(records, "chain/rho_0-nat-uniform", "chain", rep.verdict == "pass",
           rep.summary() + " (localized Sorgenfrey chain closes uniformly)")

    got = proper_check(UB, TopologyKind.UPPER, TopologyKind.LOWER, 16)
    _check(records, "proper/ub-upper-lower", "properness", got.proper, "PROPER expected")
    got = proper_check(LB, TopologyKind.UPPER, TopologyKind.LOWER, 16)
    _check(records, "proper/lb-upper", "properness", not got.proper,
           "IMPROPER expected (bounded-below sets have empty upper-interior)")
    got = proper_check(FB, TopologyKind.SORG_R, TopologyKind.NAT, 16)
    _check(records, "proper/fb-sorg", "properness", not got.proper, "IMPROPER expected")
    _check(records, "base/fb-sorg", "base-condition",
           not base_check(FB, TopologyKind.SORG_R),
           "half-open opens contain no nonempty finite set")
    _check(records, "base/nat-nat", "base-condition",
           base_check(NAT_BOUNDED, TopologyKind.NAT), "base exists")
    _check(records, "base/ub-upper", "base-condition",
           base_check(UB, TopologyKind.UPPER), "base exists")

    got = uniform_equiv_refute(
        metric("d_n_plus"), metric("d_n"), 1,
        [(-(Fraction(2) ** k), -(Fraction(2) ** (k + 1))) for k in range(0, 24)])
    _check(records, "equiv/d_n_plus-vs-d_n", "uniform-equivalence",
           got is EquivVerdict.REFUTED,
           "equivalent metrics, uniform equivalence refuted")


def _section_axioms(records):
    for l in CORPUS:
        rep = axiom_probe(l)
        _check(records, f"axioms/{l}", "axiom-probe", rep.passed,
               f"{rep.checks} instance checks"
               + ("" if rep.passed else "; " + "; ".join(rep.failures[:2])))


def _section_refuters(records, probes):
    for l in CORPUS:
        bat = admissible_battery(l)
        bad = []
        for a in probes:
            if sm_member(l, a):
                for f in bat:
                    if not ess_finite_on(f, a).essentially_finite:
                        bad.append(f"small {a} refuted by {f}")
            else:
                f = smallness_refuter(l, a)
                if f is None or not cov_member(l, f) or \
                        ess_finite_on(f, a).essentially_finite:
                    bad.append(f"non-small {a} not refuted")
        _check(records, f"refuter/{l}", "smallness-refuter", not bad,
               f"battery size {len(bat)} on {len(probes)} probes"
               + (f"; {bad[:2]}" if bad else ""))


def _section_wls(records):
    for l in CORPUS:
        expect = l.variant not in ("ut", "uf")
        got = weak_local_small_verdict(l)
        ok = got == expect
        if ok and got:
            f = weak_local_small_cover(l)
            ok = union_of(f) == REALS
            ms = members(f)
            if ms is None:
                ms = [f.member(k) for k in range(-3, 4)]
            ok = ok and all(op_member(l, m) and sm_member(l, m) for m in ms)
        _check(records, f"wls/{l}", "weak-local-smallness", ok,
               "cover of small opens exists" if expect else
               "small opens cannot cover the line")


def restriction_generation_battery(n_instances: int = 50, seed: int = 2026,
                      depth: int = 4) -> Tuple[int, int, list]:
    """Randomized restriction/generation agreement: membership in
    EssFin(L_Y[U(Psi n2 Y)]) must match bounded generation over Y.

    Returns (agreements, truncations, disagreements)."""
    rng = random.Random(seed)
    pool = [open_iv(0, 2), open_iv(1, 3), open_iv(-2, 1), closed_open(0, 1),
            open_iv(-1, 4), open_iv(2, 5), point(1).union(open_iv(3, 4))]
    windows = [closed(-1, 3), closed(0, 4), closed(-2, 5), open_iv(-1, 4)]
    agreements = truncations = 0
    disagreements = []
    caps = GenCaps(max_family_size=3, max_opens=56, depth_cap=max(8, depth))
    for _ in range(n_instances):
        gens = rng.sample(pool, rng.randint(1, 2))
        y = rng.choice(windows)
        psi_specs = [finite_family([g]) for g in gens]
        restricted = [restrict_family(f, y) for f in psi_specs]
        ring_gens = []
        for f in restricted:
            ring_gens.extend(members(f) or [])
        ring = full_ring_closure(ring_gens, y)
        psi = CovCollection.from_specs(restricted, carrier=y)
        ring_set = set(ring)
        candidates = []
        for _ in range(3):
            size = rng.randint(1, min(3, len(ring)))
            candidates.append(finite_family(rng.sample(ring, size)))
        candidates.append(finite_family([y.difference(ring[rng.randrange(len(ring))])]))
        for cand in candidates:
            mats = members(cand) or []
            in_ring_side = all(m in ring_set for m in mats) and \
                bool(ess_finite(cand)) if mats else True
            got = member_generated(cand, psi, depth, caps)
            if got.truncated and got.found != in_ring_side:
                truncations += 1
                continue
            if got.found != in_ring_side:
                disagreements.append((str(y), [str(m) for m in mats],
                                      in_ring_side, got.found))
            else:
                agreements += 1
    return agreements, truncations, disagreements


def _section_restriction_generation(records, caps):
    agreements, truncations, disagreements = restriction_generation_battery(depth=caps.depth)
    _check(records, "restriction-generation/battery", "restriction-generation",
           not disagreements,
           f"{agreements} agreements, {truncations} truncation reports, "
           f"{len(disagreements)} disagreements")


def corpus_verify(caps: Caps = Caps(), sm_override=None) -> Report:
    """The flagship battery.  sm_override is a test-only hook mapping line
    names to corrupted Sm bornologies (negative-control fixture)."""
    records: list[Record] = []
    probes = _default_probes()
    _section_identities(records, probes, sm_override)
    _section_pt(records, probes)
    _section_subsumption(records, probes)
    _section_metrizability(records, probes, caps)
    _section_chains(records, caps)
    _section_axioms(records)
    _section_refuters(records, probes)
    _section_wls(records)
    _section_restriction_generation(records, caps)
    return Report(caps, tuple(records))
