"""Query documents: a small exact-rational language for declaring sets,
families, metrics, bornologies and maps, and running the library's decision
procedures over them.  `gtsreal print-grammar` documents the surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from gtsreal import lines, realset
from gtsreal.checkers import PiecewiseAffineMap
from gtsreal.covers import (
    ALL_INDICES,
    CovCollection,
    Fan,
    IndexRange,
    Periodic,
    Restricted,
    Split,
    finite_family,
)
from gtsreal.lines import BaseSchema, Bornology, LineId, custom_bornology, metric_bounded
from gtsreal.qmetric import MetricName, PhiMode, QuasiMetric, metric
from gtsreal.realset import (
    EMPTY,
    NEG_INF,
    POS_INF,
    REALS,
    RealSet,
    TopologyKind,
)

GRAMMAR = """\
gtsreal query documents (schema v1)
===================================

Statements are separated by ';' or newlines; '#' starts a comment.

  set NAME = SET              family NAME = FAMILY
  metric NAME = METRIC        bornology NAME = BORN
  map NAME = MAP              collection NAME = collection(FAMILY, ...) [in SET]
  query ...

Rationals are exact: 3, -7/2, inf, -inf.  KIND is one of nat, upper, lower,
sorg_r, sorg_l, discrete.  LINE is e.g. standard/lst or sorgenfrey/om.

SET:
  empty | reals | point RAT | points(RAT, ...)
  interval(open|closed RAT, open|closed RAT)
  union(SET, ...) | intersect(SET, ...) | complement(SET)
  difference(SET, SET) | closure(SET, KIND) | interior(SET, KIND)
  tail(left|right, SET, RAT, RAT)        # pattern inside [0, period), period, cut
  NAME

FAMILY:
  finite(SET, ...)
  periodic(SET, RAT, all | from INT | upto INT | span INT INT)
  split(RAT, FAMILY, FAMILY)
  restricted(FAMILY, SET)
  fan(down|up, RAT, RAT)
  NAME

METRIC:
  d_n d_n1 d_n_plus d_n_plus_1 d_u rho_u rho_u1 rho_S rho_S1 rho_L rho_0
  rho_0_1 rho_S_minus | conj(METRIC) | float_paper(METRIC) | NAME

BORN:
  fb | all_sets | nat_bounded | ub | lb | uf_small
  metric_bounded(METRIC)
  schema(open|closed AFF, open|closed AFF)   AFF: affine(RAT, RAT) | inf | -inf
  NAME

MAP:
  affine(RAT, RAT)                            # slope, intercept
  pieces(breaks(RAT, ...), piece(RAT, RAT), ...)
  NAME

QUERIES (answers are printed one per line, in document order):
  query normalize SET | boundedness SET | subset SET SET | equal SET SET
  query contains SET RAT | sample SET from RAT to RAT step RAT
  query closure SET KIND | interior SET KIND
  query eval METRIC RAT RAT | ball METRIC at RAT radius RAT
  query nbhd METRIC SET delta RAT | bounded_set METRIC SET
  query topology_of METRIC
  query union_of FAMILY | members FAMILY
  query ess_finite FAMILY | ess_finite_on FAMILY SET
  query locally_ess_finite FAMILY
  query full_ring SET of (SET, ...) | gen_topology (SET, ...)
  query gen_topology_member (SET, ...) SET
  query ef_member FAMILY KIND BORN
  query member_generated FAMILY NAME INT      # NAME refers to a collection
  query op_member LINE SET | cov_member LINE FAMILY
  query sm_member LINE SET | cb_member LINE SET | acb_member LINE SET
  query pt_of LINE
  query bornology_member BORN SET
  query proper_check BORN KIND KIND INT | base_check BORN KIND
  query chain_check METRIC BORN delta RAT upto INT
  query chain_search METRIC BORN upto INT
  query uniform_chain METRIC BORN upto INT
  query metrizable LINE BORN METRIC
  query strict_cont_refute MAP LINE LINE (FAMILY, ...)
  query axiom_probe LINE
  query initial_member maps(MAP, ...) borns(BORN, ...) SET
  query oracle_ess_finite FAMILY window INT INT SET max INT
"""


class ParseError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<ninf>-inf\b)
  | (?P<rat>-?\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:/[A-Za-z_][A-Za-z0-9_]*)?)
  | (?P<punct>[(),=;])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str):
    out = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "newline":
            out.append(Token("sep", ";", line, col))
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(tok)
        elif kind == "punct" and tok == ";":
            out.append(Token("sep", ";", line, col))
            col += 1
        elif kind == "ninf":
            out.append(Token("name", "-inf", line, col))
            col += len(tok)
        else:
            out.append(Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    return out


_KINDS = {
    "nat": TopologyKind.NAT, "upper": TopologyKind.UPPER,
    "lower": TopologyKind.LOWER, "sorg_r": TopologyKind.SORG_R,
    "sorg_l": TopologyKind.SORG_L, "discrete": TopologyKind.DISCRETE,
}

_NAMED_BORNS = {"fb": lines.FB, "all_sets": lines.ALL_SETS,
                "nat_bounded": lines.NAT_BOUNDED, "ub": lines.UB,
                "lb": lines.LB, "uf_small": lines.UF_SMALL}

_METRIC_NAMES = {m.value for m in MetricName}


@dataclass
class QueryDoc:
    """Parsed document: declaration environments plus the query list.

    Equality and printing go through the normalized statement texts, so
    parse(print(doc)) == doc."""

    statements: Tuple[str, ...] = ()
    queries: Tuple[Tuple[str, tuple], ...] = ()
    sets: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    bornologies: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    collections: dict = field(default_factory=dict)

    def print(self) -> str:
        return "\n".join(self.statements) + ("\n" if self.statements else "")

    def __eq__(self, other):
        return isinstance(other, QueryDoc) and self.statements == other.statements


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.doc = QueryDoc()
        self._stmt_start = 0

    # -- token plumbing ---------------------------------------------------

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else Token("", "", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col)
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def expect_name(self) -> Token:
        t = self.next()
        if t.kind != "name":
            raise ParseError(f"expected a name, found {t.text!r}", t.line, t.col)
        return t

    def rat(self) -> Fraction:
        t = self.next()
        if t.kind == "rat":
            return Fraction(t.text)
        if t.text == "inf" or t.text == "-inf":
            raise ParseError("infinite value not allowed here", t.line, t.col)
        raise ParseError(f"expected a rational, found {t.text!r}", t.line, t.col)

    def ext(self):
        t = self.peek()
        if t is not None and t.text == "inf":
            self.next()
            return POS_INF
        if t is not None and t.text == "-inf":
            self.next()
            return NEG_INF
        if t is not None and t.kind == "rat":
            return Fraction(self.next().text)
        found = t.text if t is not None else "EOF"
        raise ParseError(f"expected a rational or inf, found {found!r}",
                         t.line if t else 1, t.col if t else 1)

    def int_(self) -> int:
        t = self.next()
        if t.kind != "rat" or "/" in t.text:
            raise ParseError(f"expected an integer, found {t.text!r}", t.line, t.col)
        return int(t.text)

    # -- statement level ----------------------------------------------------

    def parse(self) -> QueryDoc:
        statements = []
        queries = []
        while self.peek() is not None:
            if self.peek().kind == "sep":
                self.next()
                continue
            start = self.i
            t = self.expect_name()
            if t.text == "set":
                name = self._decl_name(self.doc.sets)
                self.expect("=")
                self.doc.sets[name] = self.set_expr()
            elif t.text == "family":
                name = self._decl_name(self.doc.families)
                self.expect("=")
                self.doc.families[name] = self.family_expr()
            elif t.text == "metric":
                name = self._decl_name(self.doc.metrics)
                self.expect("=")
                self.doc.metrics[name] = self.metric_expr()
            elif t.text == "bornology":
                name = self._decl_name(self.doc.bornologies)
                self.expect("=")
                self.doc.bornologies[name] = self.born_expr()
            elif t.text == "map":
                name = self._decl_name(self.doc.maps)
                self.expect("=")
                self.doc.maps[name] = self.map_expr()
            elif t.text == "collection":
                name = self._decl_name(self.doc.collections)
                self.expect("=")
                self.expect("collection")
                self.expect("(")
                fams = [self.family_expr()]
                while self.peek() and self.peek().text == ",":
                    self.next()
                    fams.append(self.family_expr())
                self.expect(")")
                carrier = REALS
                if self.peek() is not None and self.peek().text == "in":
                    self.next()
                    carrier = self.set_expr()
                self.doc.collections[name] = CovCollection.from_specs(fams, carrier)
            elif t.text == "query":
                queries.append(self.query_expr())
            else:
                raise ParseError(f"unknown statement {t.text!r}", t.line, t.col)
            statements.append(self._render(start))
            nxt = self.peek()
            if nxt is not None and nxt.kind != "sep":
                raise ParseError(f"expected end of statement, found {nxt.text!r}",
                                 nxt.line, nxt.col)
        self.doc.statements = tuple(statements)
        self.doc.queries = tuple(queries)
        return self.doc

    def _decl_name(self, env: dict) -> str:
        t = self.expect_name()
        if t.text in env:
            raise ParseError(f"duplicate declaration of {t.text!r}", t.line, t.col)
        return t.text

    def _render(self, start: int) -> str:
        s = " ".join(tok.text for tok in self.toks[start:self.i])
        return s.replace(" (", "(").replace("( ", "(") \
                .replace(" )", ")").replace(" ,", ",")

    # -- expressions ---------------------------------------------------------

    def set_expr(self) -> RealSet:
        t = self.expect_name()
        w = t.text
        if w == "empty":
            return EMPTY
        if w == "reals":
            return REALS
        if w == "point":
            return realset.point(self.rat())
        if w == "points":
            self.expect("(")
            vals = [self.rat()]
            while self.peek().text == ",":
                self.next()
                vals.append(self.rat())
            self.expect(")")
            return realset.points(vals)
        if w == "interval":
            self.expect("(")
            lc = self._bound_flag()
            lo = self.ext()
            self.expect(",")
            hc = self._bound_flag()
            hi = self.ext()
            self.expect(")")
            return realset.interval(lo, hi, lc and lo != NEG_INF, hc and hi != POS_INF)
        if w in ("union", "intersect"):
            self.expect("(")
            args = [self.set_expr()]
            while self.peek().text == ",":
                self.next()
                args.append(self.set_expr())
            self.expect(")")
            out = args[0]
            for a in args[1:]:
                out = out.union(a) if w == "union" else out.intersect(a)
            return out
        if w == "complement":
            self.expect("(")
            a = self.set_expr()
            self.expect(")")
            return a.complement()
        if w == "difference":
            self.expect("(")
            a = self.set_expr()
            self.expect(",")
            b = self.set_expr()
            self.expect(")")
            return a.difference(b)
        if w in ("closure", "interior"):
            self.expect("(")
            a = self.set_expr()
            self.expect(",")
            k = self.kind()
            self.expect(")")
            return a.closure(k) if w == "closure" else a.interior(k)
        if w == "tail":
            self.expect("(")
            side = self.expect_name().text
            if side not in ("left", "right"):
                raise ParseError("tail side must be left or right", t.line, t.col)
            self.expect(",")
            pattern = self.set_expr()
            self.expect(",")
            period = self.rat()
            self.expect(",")
            cut = self.rat()
            self.expect(")")
            tail_args = (tuple(pattern.core), period, cut)
            return realset.with_tails(
                EMPTY, left=tail_args if side == "left" else None,
                right=tail_args if side == "right" else None)
        if w in self.doc.sets:
            return self.doc.sets[w]
        raise ParseError(f"unknown identifier {w!r} (expected a set)", t.line, t.col)

    def _bound_flag(self) -> bool:
        t = self.expect_name()
        if t.text == "open":
            return False
        if t.text == "closed":
            return True
        raise ParseError("expected open or closed", t.line, t.col)

    def kind(self) -> TopologyKind:
        t = self.expect_name()
        if t.text not in _KINDS:
            raise ParseError(f"unknown topology kind {t.text!r}", t.line, t.col)
        return _KINDS[t.text]

    def family_expr(self):
        t = self.expect_name()
        w = t.text
        if w == "finite":
            self.expect("(")
            args = []
            if self.peek().text != ")":
                args.append(self.set_expr())
                while self.peek().text == ",":
                    self.next()
                    args.append(self.set_expr())
            self.expect(")")
            return finite_family(args)
        if w == "periodic":
            self.expect("(")
            seed = self.set_expr()
            self.expect(",")
            period = self.rat()
            self.expect(",")
            rng = self._index_range()
            self.expect(")")
            return Periodic(seed, period, rng)
        if w == "split":
            self.expect("(")
            cut = self.rat()
            self.expect(",")
            left = self.family_expr()
            self.expect(",")
            right = self.family_expr()
            self.expect(")")
            return Split(cut, left, right)
        if w == "restricted":
            self.expect("(")
            base = self.family_expr()
            self.expect(",")
            window = self.set_expr()
            self.expect(")")
            return Restricted(base, window)
        if w == "fan":
            self.expect("(")
            side = self.expect_name().text
            self.expect(",")
            lo = self.rat()
            self.expect(",")
            hi = self.rat()
            self.expect(")")
            return Fan(lo, hi, side)
        if w in self.doc.families:
            return self.doc.families[w]
        raise ParseError(f"unknown identifier {w!r} (expected a family)", t.line, t.col)

    def _index_range(self) -> IndexRange:
        t = self.expect_name()
        if t.text == "all":
            return ALL_INDICES
        if t.text == "from":
            return IndexRange(self.int_(), None)
        if t.text == "upto":
            return IndexRange(None, self.int_())
        if t.text == "span":
            a = self.int_()
            b = self.int_()
            return IndexRange(a, b)
        raise ParseError("expected all/from/upto/span", t.line, t.col)

    def metric_expr(self) -> QuasiMetric:
        t = self.expect_name()
        w = t.text
        if w in _METRIC_NAMES:
            return metric(w)
        if w == "conj":
            self.expect("(")
            d = self.metric_expr()
            self.expect(")")
            return d.conjugate()
        if w == "float_paper":
            self.expect("(")
            d = self.metric_expr()
            self.expect(")")
            return QuasiMetric(d.name, PhiMode.FLOAT_PAPER, d.conjugated)
        if w in self.doc.metrics:
            return self.doc.metrics[w]
        raise ParseError(f"unknown identifier {w!r} (expected a metric)", t.line, t.col)

    def born_expr(self) -> Bornology:
        t = self.expect_name()
        w = t.text
        if w in _NAMED_BORNS:
            return _NAMED_BORNS[w]
        if w == "metric_bounded":
            self.expect("(")
            d = self.metric_expr()
            self.expect(")")
            return metric_bounded(d)
        if w == "schema":
            self.expect("(")
            lc = self._bound_flag()
            lo = self._affine()
            self.expect(",")
            hc = self._bound_flag()
            hi = self._affine()
            self.expect(")")
            sc = BaseSchema(lo=lo, hi=hi, lo_closed=lc and lo is not None,
                            hi_closed=hc and hi is not None)
            return custom_bornology(sc)
        if w in self.doc.bornologies:
            return self.doc.bornologies[w]
        raise ParseError(f"unknown identifier {w!r} (expected a bornology)",
                         t.line, t.col)

    def _affine(self):
        t = self.peek()
        if t.kind == "name" and t.text in ("inf", "-inf"):
            self.next()
            return None
        if t.kind == "name" and t.text == "affine":
            self.next()
            self.expect("(")
            a = self.rat()
            self.expect(",")
            b = self.rat()
            self.expect(")")
            return (a, b)
        if t.kind == "rat":
            return (self.rat(), Fraction(0))
        raise ParseError("expected affine(RAT, RAT), RAT or inf", t.line, t.col)

    def map_expr(self) -> PiecewiseAffineMap:
        t = self.expect_name()
        w = t.text
        if w == "affine":
            self.expect("(")
            a = self.rat()
            self.expect(",")
            b = self.rat()
            self.expect(")")
            return PiecewiseAffineMap.affine(a, b)
        if w == "pieces":
            self.expect("(")
            self.expect("breaks")
            self.expect("(")
            breaks = [self.rat()]
            while self.peek().text == ",":
                self.next()
                breaks.append(self.rat())
            self.expect(")")
            pieces = []
            while self.peek().text == ",":
                self.next()
                self.expect("piece")
                self.expect("(")
                s = self.rat()
                self.expect(",")
                c = self.rat()
                self.expect(")")
                pieces.append((s, c))
            self.expect(")")
            return PiecewiseAffineMap(tuple(breaks), tuple(pieces))
        if w in self.doc.maps:
            return self.doc.maps[w]
        raise ParseError(f"unknown identifier {w!r} (expected a map)", t.line, t.col)

    def line_id(self) -> LineId:
        t = self.expect_name()
        if "/" not in t.text:
            raise ParseError(f"expected LINE like standard/lst, found {t.text!r}",
                             t.line, t.col)
        try:
            return lines.line(t.text)
        except Exception:
            raise ParseError(f"unknown line {t.text!r}", t.line, t.col)

    # -- queries -----------------------------------------------------------

    def query_expr(self):
        t = self.expect_name()
        q = t.text
        if q in ("normalize", "boundedness"):
            return (q, (self.set_expr(),))
        if q in ("subset", "equal"):
            return (q, (self.set_expr(), self.set_expr()))
        if q == "contains":
            return (q, (self.set_expr(), self.rat()))
        if q == "sample":
            a = self.set_expr()
            self.expect("from")
            lo = self.rat()
            self.expect("to")
            hi = self.rat()
            self.expect("step")
            return (q, (a, lo, hi, self.rat()))
        if q in ("closure", "interior"):
            return (q, (self.set_expr(), self.kind()))
        if q == "eval":
            return (q, (self.metric_expr(), self.rat(), self.rat()))
        if q == "ball":
            d = self.metric_expr()
            self.expect("at")
            x = self.rat()
            self.expect("radius")
            return (q, (d, x, self.rat()))
        if q == "nbhd":
            d = self.metric_expr()
            a = self.set_expr()
            self.expect("delta")
            return (q, (d, a, self.rat()))
        if q == "bounded_set":
            return (q, (self.metric_expr(), self.set_expr()))
        if q == "topology_of":
            return (q, (self.metric_expr(),))
        if q in ("union_of", "members", "ess_finite", "locally_ess_finite"):
            return (q, (self.family_expr(),))
        if q == "ess_finite_on":
            return (q, (self.family_expr(), self.set_expr()))
        if q == "full_ring":
            y = self.set_expr()
            self.expect("of")
            self.expect("(")
            gens = []
            if self.peek().text != ")":
                gens.append(self.set_expr())
                while self.peek().text == ",":
                    self.next()
                    gens.append(self.set_expr())
            self.expect(")")
            return (q, (y, tuple(gens)))
        if q in ("gen_topology", "gen_topology_member"):
            self.expect("(")
            gens = []
            if self.peek().text != ")":
                gens.append(self.set_expr())
                while self.peek().text == ",":
                    self.next()
                    gens.append(self.set_expr())
            self.expect(")")
            if q == "gen_topology":
                return (q, (tuple(gens),))
            return (q, (tuple(gens), self.set_expr()))
        if q == "ef_member":
            return (q, (self.family_expr(), self.kind(), self.born_expr()))
        if q == "member_generated":
            fam = self.family_expr()
            t2 = self.expect_name()
            if t2.text not in self.doc.collections:
                raise ParseError(f"unknown collection {t2.text!r}", t2.line, t2.col)
            return (q, (fam, t2.text, self.int_()))
        if q == "op_member":
            return (q, (self.line_id(), self.set_expr()))
        if q == "cov_member":
            return (q, (self.line_id(), self.family_expr()))
        if q in ("sm_member", "cb_member", "acb_member"):
            return (q, (self.line_id(), self.set_expr()))
        if q == "pt_of":
            return (q, (self.line_id(),))
        if q == "bornology_member":
            return (q, (self.born_expr(), self.set_expr()))
        if q == "proper_check":
            return (q, (self.born_expr(), self.kind(), self.kind(), self.int_()))
        if q == "base_check":
            return (q, (self.born_expr(), self.kind()))
        if q == "chain_check":
            d = self.metric_expr()
            b = self.born_expr()
            self.expect("delta")
            delta = self.rat()
            self.expect("upto")
            return (q, (d, b, delta, self.int_()))
        if q in ("chain_search", "uniform_chain"):
            d = self.metric_expr()
            b = self.born_expr()
            self.expect("upto")
            return (q, (d, b, self.int_()))
        if q == "metrizable":
            return (q, (self.line_id(), self.born_expr(), self.metric_expr()))
        if q == "strict_cont_refute":
            f = self.map_expr()
            src = self.line_id()
            dst = self.line_id()
            self.expect("(")
            fams = [self.family_expr()]
            while self.peek().text == ",":
                self.next()
                fams.append(self.family_expr())
            self.expect(")")
            return (q, (f, src, dst, tuple(fams)))
        if q == "axiom_probe":
            return (q, (self.line_id(),))
        if q == "oracle_ess_finite":
            fam = self.family_expr()
            self.expect("window")
            k0 = self.int_()
            k1 = self.int_()
            k_set = self.set_expr()
            self.expect("max")
            return (q, (fam, k0, k1, k_set, self.int_()))
        if q == "initial_member":
            self.expect("maps")
            self.expect("(")
            maps = [self.map_expr()]
            while self.peek().text == ",":
                self.next()
                maps.append(self.map_expr())
            self.expect(")")
            self.expect("borns")
            self.expect("(")
            borns = [self.born_expr()]
            while self.peek().text == ",":
                self.next()
                borns.append(self.born_expr())
            self.expect(")")
            return (q, (tuple(maps), tuple(borns), self.set_expr()))
        raise ParseError(f"unknown query {q!r}", t.line, t.col)


def parse(text: str) -> QueryDoc:
    """Parse a query document; raises ParseError with line:column context."""
    return _Parser(text).parse()
