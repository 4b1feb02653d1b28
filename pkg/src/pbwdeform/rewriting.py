"""A terminating rewriting system for H_{lambda,kappa} and its t-graded variants.

Letters ``0..m-1`` stand for the basis vectors v_1..v_m and letter ``m + g``
for the group element with index g.  The rules are

    g h      -> (gh)
    g v_i    -> sum_j rho(g)_{ji} v_j g + lambda(g, v_i) t^d1
    v_j v_i  -> v_i v_j + kappa(v_j, v_i) t^d2          (j > i)

with (d1, d2) = (0, 0) untwisted, (1, 2) graded, and (-, 1) in the collapsed
mode where t^2 has been renamed t (only allowed when lambda = 0).  Irreducible
words are sorted v-letters followed by at most one group letter; every word is
reduced with an identity letter appended on the right, so normal forms carry
exactly one group letter and match the PBW basis v^a g.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

from .errors import NotConfluentError, PreconditionError
from .matrix import EchelonBasis, rank_of
from .params import GeneralKappa, KappaParam, LambdaParam
from .skew import SkewElem

MODES = {"untwisted": (0, 0), "graded": (1, 2), "collapsed": (None, 1)}


def _acc(out, key, c, f):
    v = f.add(out.get(key, f.zero), c)
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


class FreeElem:
    """Finite linear combination of (word, t-power) pairs in the free algebra."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        out = {}
        for (word, t), c in (terms or {}).items():
            _acc(out, (tuple(word), t), field(c), field)
        self.terms = out

    @classmethod
    def word(cls, field, word, c=1, t=0):
        return cls(field, {(tuple(word), t): c})

    @classmethod
    def one(cls, field):
        return cls.word(field, ())

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c, self.field)
        return FreeElem._from(self.field, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        f = self.field
        c = f(c)
        return FreeElem._from(f, {k: f.mul(c, a) for k, a in self.terms.items()} if c != 0 else {})

    def __mul__(self, other):
        if not isinstance(other, FreeElem):
            return self.scale(other)
        f = self.field
        out = {}
        for (wa, ta), a in self.terms.items():
            for (wb, tb), b in other.terms.items():
                _acc(out, (wa + wb, ta + tb), f.mul(a, b), f)
        return FreeElem._from(f, out)

    @classmethod
    def _from(cls, field, terms):
        x = cls.__new__(cls)
        x.field = field
        x.terms = terms
        return x

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FreeElem) and self.terms == other.terms

    def __repr__(self):
        return f"FreeElem({self.terms})"


@dataclass
class Relation:
    kind: str          # unit, group, skew or comm
    data: tuple
    elem: FreeElem
    letters: frozenset

    def label(self, sys):
        return sys.relation_label(self)


class ReductionSystem:
    """Rewriting rules for one (lambda, kappa) pair in one of the three modes."""

    def __init__(self, rep, lam: LambdaParam = None, kappa=None, mode="untwisted"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {sorted(MODES)}")
        self.rep = rep
        self.field = rep.field
        self.group = rep.group
        self.m = rep.dim
        self.mode = mode
        self.lam = lam if lam is not None else LambdaParam.zero(rep)
        if kappa is None:
            kappa = KappaParam.zero(rep)
        self.kappa = kappa
        self.d1, self.d2 = MODES[mode]
        if mode == "collapsed" and not self.lam.is_zero():
            raise PreconditionError("the collapsed mode needs lambda = 0")
        self.t_weight = 2 if mode == "collapsed" else 1
        m, G = self.m, self.group
        self.e_letter = m + G.identity
        self.lam_terms = [[sorted(self.lam.raw(g, i).items()) for i in range(m)] for g in range(G.order)]
        self.kappa_terms = {}
        for j in range(m):
            for i in range(j):
                self.kappa_terms[(j, i)] = self._kappa_words(j, i)
        self._memo = {}
        self._word_memo = {}
        self._confluent = None

    def _kappa_words(self, j, i):
        """kappa(v_j, v_i) as a list of (word, coeff)."""
        m = self.m
        if isinstance(self.kappa, GeneralKappa):
            val = self.kappa.value(j, i)
            out = []
            for (mono, g, _), c in sorted(val.terms.items()):
                vs = tuple(k for k, e in enumerate(mono) for _ in range(e))
                out.append((vs + (m + g,), c))
            return out
        return [((m + g,), c) for g, c in sorted(self.kappa.raw(j, i).items())]

    # letters ----------------------------------------------------------------
    def is_group_letter(self, x):
        return x >= self.m

    def letter_name(self, x):
        if x < self.m:
            return self.rep.basis_names[x]
        return self.group.names[x - self.m]

    def word_str(self, word):
        return "*".join(self.letter_name(x) for x in word) if word else "1"

    def letters(self):
        return list(range(self.m + self.group.order))

    # one-step rules ---------------------------------------------------------
    def is_redex(self, a, b):
        m = self.m
        if a >= m:
            return True
        return b < a

    def rule_rhs(self, a, b) -> FreeElem:
        """Right-hand side of the rule whose left-hand side is the word ab."""
        f, m, G = self.field, self.m, self.group
        out = {}
        if a >= m and b >= m:
            out[((m + G.mul(a - m, b - m),), 0)] = f.one
        elif a >= m:
            g, i = a - m, b
            for j, c in self.rep.action[g][i].items():
                _acc(out, ((j, a), 0), c, f)
            for k, c in self.lam_terms[g][i]:
                _acc(out, ((m + k,), self.d1), c, f)
        elif b < a:
            out[((b, a), 0)] = f.one
            for word, c in self.kappa_terms[(a, b)]:
                _acc(out, (word, self.d2), c, f)
        else:
            raise ValueError(f"{self.word_str((a, b))} is not a left-hand side")
        return FreeElem._from(f, out)

    # normal forms -----------------------------------------------------------
    def _prepend(self, x, word):
        """Normal form of the letter x times an irreducible word ending in a group letter."""
        key = (x, word)
        memo = self._memo
        if key in memo:
            return memo[key]
        f, m = self.field, self.m
        first = word[0]
        if x >= m:
            if first >= m:
                res = {((m + self.group.mul(x - m, first - m),), 0): f.one}
            else:
                g, i, rest = x - m, first, word[1:]
                res = {}
                inner = self._prepend(x, rest)
                for j, c in self.rep.action[g][i].items():
                    self._add_prepended(res, j, inner, c, 0)
                for k, c in self.lam_terms[g][i]:
                    for w, a in self._prepend(m + k, rest).items():
                        _acc(res, (w[0], w[1] + self.d1), f.mul(c, a), f)
        else:
            if first >= m or first >= x:
                res = {((x,) + word, 0): f.one}
            else:
                rest = word[1:]
                res = {}
                self._add_prepended(res, first, self._prepend(x, rest), f.one, 0)
                for kw, c in self.kappa_terms[(x, first)]:
                    part = {(rest, 0): f.one}
                    for y in reversed(kw):
                        nxt = {}
                        for (w, t), a in part.items():
                            for (w2, t2), b in self._prepend(y, w).items():
                                _acc(nxt, (w2, t + t2), f.mul(a, b), f)
                        part = nxt
                    for (w, t), a in part.items():
                        _acc(res, (w, t + self.d2), f.mul(c, a), f)
        memo[key] = res
        return res

    def _add_prepended(self, res, x, elem, c, tshift):
        f = self.field
        for (w, t), a in elem.items():
            ca = f.mul(c, a)
            for (w2, t2), b in self._prepend(x, w).items():
                _acc(res, (w2, t + t2 + tshift), f.mul(ca, b), f)

    def nf_word(self, word):
        """Normal form of a single word, as {(irreducible word, t): coeff}."""
        word = tuple(word)
        memo = self._word_memo
        if word in memo:
            return memo[word]
        f = self.field
        if word and word[-1] >= self.m:
            state = {((word[-1],), 0): f.one}
            letters = word[:-1]
        else:
            state = {((self.e_letter,), 0): f.one}
            letters = word
        for x in reversed(letters):
            nxt = {}
            self._add_prepended(nxt, x, state, f.one, 0)
            state = nxt
        memo[word] = state
        return state

    def _to_skew(self, terms):
        m = self.m
        out = {}
        for (w, t), c in terms.items():
            mono = [0] * m
            for x in w[:-1]:
                mono[x] += 1
            out[(tuple(mono), w[-1] - m, t)] = c
        return SkewElem._raw(self.rep, out)

    def normal_form(self, x) -> SkewElem:
        """Normal form of a FreeElem, a word (tuple of letters) or a SkewElem."""
        if isinstance(x, SkewElem):
            x = self.to_free(x)
        if not isinstance(x, FreeElem):
            return self._to_skew(self.nf_word(x))
        f = self.field
        acc = {}
        for (word, t), c in x.terms.items():
            for (w, t2), a in self.nf_word(word).items():
                _acc(acc, (w, t + t2), f.mul(c, a), f)
        return self._to_skew(acc)

    def to_free(self, s: SkewElem) -> FreeElem:
        m = self.m
        out = {}
        for (mono, g, t), c in s.terms.items():
            word = tuple(k for k, e in enumerate(mono) for _ in range(e)) + (m + g,)
            out[(word, t)] = c
        return FreeElem._from(self.field, out)

    def multiply(self, a: SkewElem, b: SkewElem) -> SkewElem:
        """Product in the deformed algebra of two PBW-form elements."""
        return self.normal_form(self.to_free(a) * self.to_free(b))

    # generators -------------------------------------------------------------
    def letter_elem(self, x) -> FreeElem:
        return FreeElem.word(self.field, (x,))

    def vector_elem(self, i) -> SkewElem:
        return SkewElem.basis_vector(self.rep, i)

    def group_elem(self, g) -> SkewElem:
        return SkewElem.group_element(self.rep, g)

    def relations(self):
        """Defining relations, each as a FreeElem that must vanish."""
        f, m, G = self.field, self.m, self.group
        rels = [Relation("unit", (), FreeElem.word(f, (self.e_letter,)) - FreeElem.one(f),
                         frozenset({self.e_letter}))]
        for g in range(G.order):
            for h in range(G.order):
                lhs = FreeElem.word(f, (m + g, m + h))
                rels.append(Relation("group", (g, h), lhs - self.rule_rhs(m + g, m + h),
                                     frozenset({m + g, m + h, m + G.mul(g, h)})))
        for g in range(G.order):
            for i in range(m):
                rhs = self.rule_rhs(m + g, i)
                lhs = FreeElem.word(f, (m + g, i))
                rels.append(Relation("skew", (g, i), lhs - rhs,
                                     frozenset(x for (w, _) in (lhs - rhs).terms for x in w)))
        for j in range(m):
            for i in range(j):
                rhs = self.rule_rhs(j, i)
                lhs = FreeElem.word(f, (j, i))
                rels.append(Relation("comm", (j, i), lhs - rhs,
                                     frozenset(x for (w, _) in (lhs - rhs).terms for x in w)))
        return rels

    def relation_label(self, rel: Relation):
        G, names = self.group, self.rep.basis_names
        if rel.kind == "unit":
            return "e - 1"
        if rel.kind == "group":
            g, h = rel.data
            return f"{G.names[g]}*{G.names[h]} - {G.names[G.mul(g, h)]}"
        if rel.kind == "skew":
            g, i = rel.data
            return f"{G.names[g]}*{names[i]} - {names[i]}^{G.names[g]}*{G.names[g]} - lambda({G.names[g]},{names[i]})"
        j, i = rel.data
        return f"{names[j]}*{names[i]} - {names[i]}*{names[j]} - kappa({names[j]},{names[i]})"

    @property
    def confluent(self) -> bool:
        if self._confluent is None:
            self._confluent = resolve_ambiguities(self).confluent
        return self._confluent


# ---------------------------------------------------------------------------
# ambiguities


@dataclass
class Ambiguity:
    kind: str
    word: tuple
    difference: SkewElem


@dataclass
class AmbiguityReport:
    system: ReductionSystem
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def confluent(self):
        return not self.failures

    def first_failure(self):
        return self.failures[0] if self.failures else None

    def lines(self):
        out = [f"overlaps checked: {self.checked}"]
        for amb in self.failures[:10]:
            out.append(f"unresolved {amb.kind} overlap {self.system.word_str(amb.word)}: "
                       f"difference {amb.difference.render()}")
        if len(self.failures) > 10:
            out.append(f"... {len(self.failures) - 10} more")
        out.append("verdict: " + ("confluent (PBW)" if self.confluent else "not confluent (not PBW)"))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def overlaps(sys: ReductionSystem, include_group_triples=True):
    m, n = sys.m, sys.group.order
    gl = [m + g for g in range(n)]
    if include_group_triples:
        for a, b, c in itertools.product(gl, gl, gl):
            yield "ghk", (a, b, c)
    for a, b in itertools.product(gl, gl):
        for i in range(m):
            yield "ghv", (a, b, i)
    for a in gl:
        for j in range(m):
            for i in range(j):
                yield "gvv", (a, j, i)
    for k in range(m):
        for j in range(k):
            for i in range(j):
                yield "vvv", (k, j, i)


def overlap_difference(sys: ReductionSystem, word) -> SkewElem:
    a, b, c = word
    f = sys.field
    left = sys.rule_rhs(a, b) * FreeElem.word(f, (c,))
    right = FreeElem.word(f, (a,)) * sys.rule_rhs(b, c)
    return sys.normal_form(left) - sys.normal_form(right)


def resolve_ambiguities(sys: ReductionSystem, include_group_triples=True) -> AmbiguityReport:
    """Reduce every overlap both ways; the system is confluent iff all differences vanish."""
    report = AmbiguityReport(sys)
    for kind, word in overlaps(sys, include_group_triples):
        report.checked += 1
        diff = overlap_difference(sys, word)
        if diff:
            report.failures.append(Ambiguity(kind, word, diff))
    sys._confluent = report.confluent
    return report


# ---------------------------------------------------------------------------
# dimensions


def pbw_count(m, order, n):
    """Number of PBW monomials of degree exactly n."""
    return order * math.comb(n + m - 1, m - 1) if n >= 0 else 0


def _collapse_space(sys: ReductionSystem, max_degree):
    """Span of overlap differences, closed under multiplication by letters up to max_degree."""
    key = ("collapse", max_degree)
    if key in sys._memo:
        return sys._memo[key]
    basis = EchelonBasis(sys.field, key=lambda col: (-sum(col[0]), col[0], col[1]))
    queue = []

    def push(x: SkewElem, bound):
        vec = {}
        for (mono, g, t), c in x.terms.items():
            vec[(mono, g)] = sys.field.add(vec.get((mono, g), sys.field.zero), c)
        if basis.add(vec):
            queue.append((x, bound))

    for kind, word in overlaps(sys):
        d = sum(1 for x in word if x < sys.m)
        if d <= max_degree:
            diff = overlap_difference(sys, word)
            if diff:
                push(diff, d)
    gens = [(sys.vector_elem(i), 1) for i in range(sys.m)]
    gens += [(sys.group_elem(g), 0) for g in range(sys.group.order)]
    while queue:
        x, bound = queue.pop()
        for y, dy in gens:
            if bound + dy > max_degree:
                continue
            push(sys.multiply(y, x), bound + dy)
            push(sys.multiply(x, y), bound + dy)
    sys._memo[key] = basis
    return basis


def filtered_dimension(sys: ReductionSystem, n, max_degree=4) -> int:
    """Dimension of the span of words of degree <= n, counted on irreducible words.

    Irreducible words of degree <= n are counted and the part of the collapse
    space (overlap differences and their multiples, truncated at max_degree)
    lying in that range is subtracted.  For a confluent system this is exactly
    the PBW count.
    """
    if sys.mode != "untwisted":
        raise PreconditionError("graded dimensions are computed for the untwisted system")
    if n < 0:
        return 0
    irr = sum(pbw_count(sys.m, sys.group.order, d) for d in range(n + 1))
    basis = _collapse_space(sys, max(max_degree, n))
    lost = sum(1 for piv in basis.rows if sum(piv[0]) <= n)
    return irr - lost


def graded_dimension(sys: ReductionSystem, n, max_degree=4) -> int:
    """Dimension of the degree-n piece of the associated graded algebra."""
    return filtered_dimension(sys, n, max_degree) - filtered_dimension(sys, n - 1, max_degree)


# ---------------------------------------------------------------------------
# termination


def reduction_bound(d, k):
    """Upper bound on the length of any reduction chain from a word with d v-letters and k group letters.

    Along a chain the v-degree j never grows.  At a fixed j there are at most
    k + d - j group letters, each passing at most j v-letters and merging once,
    and between two such steps at most C(j, 2) sorting swaps can happen.
    """
    total = 0
    for j in range(d + 1):
        moves = (k + d - j) * (1 + j)
        total += moves + (moves + 1) * math.comb(j, 2) + 1
    return total


def reduce_literal(sys: ReductionSystem, word, rng: random.Random = None):
    """Rewrite one redex at a time (leftmost, or random when ``rng`` is given).

    Returns the normal form and the longest chain of rule applications seen.
    """
    f, m = sys.field, sys.m
    word = tuple(word)
    if not word or word[-1] < m:
        word = word + (sys.e_letter,)
    work = [(word, 0, f.one, 0)]
    done = {}
    longest = 0
    while work:
        idx = rng.randrange(len(work)) if rng else len(work) - 1
        w, t, c, depth = work.pop(idx)
        longest = max(longest, depth)
        pos = [p for p in range(len(w) - 1) if sys.is_redex(w[p], w[p + 1])]
        if not pos:
            _acc(done, (w, t), c, f)
            continue
        p = rng.choice(pos) if rng else pos[0]
        for (rw, rt), a in sys.rule_rhs(w[p], w[p + 1]).terms.items():
            nw = w[:p] + rw + w[p + 2:]
            work.append((nw, t + rt, f.mul(c, a), depth + 1))
    return sys._to_skew(done), longest


# ---------------------------------------------------------------------------
# mu extraction


def _homogeneous_parts(x: SkewElem):
    parts = {}
    for (mono, g, t), c in x.terms.items():
        parts.setdefault(sum(mono), {})[(mono, g, t)] = c
    return {d: SkewElem._raw(x.rep, terms) for d, terms in parts.items()}


def extract_mu(sys: ReductionSystem, j, a: SkewElem, b: SkewElem, check=True) -> SkewElem:
    """mu_j(a (x) b): the coefficient of t^j in the deformed product of t-free a and b.

    Homogeneity deg mu_j(a (x) b) = deg a + deg b - w*j is asserted, where
    w = 1 in the graded mode and w = 2 in the collapsed mode.
    """
    if sys.mode == "untwisted":
        raise PreconditionError("mu extraction needs a t-graded system")
    if check and not sys.confluent:
        raise NotConfluentError("the t-graded system has unresolved ambiguities")
    if a.t_degrees() not in ([], [0]) or b.t_degrees() not in ([], [0]):
        raise ValueError("arguments must be t-free")
    out = SkewElem.zero(sys.rep)
    for da, pa in _homogeneous_parts(a).items():
        for db, pb in _homogeneous_parts(b).items():
            part = sys.multiply(pa, pb).t_coefficient(j)
            want = da + db - sys.t_weight * j
            if part and part.degrees() != {want}:
                raise AssertionError(f"mu_{j} is not homogeneous: degrees {sorted(part.degrees())}, expected {want}")
            out = out + part
    return out


def lambda_from_mu(sys: ReductionSystem, g, i) -> SkewElem:
    """mu_1(g (x) v) - mu_1(^g v (x) g)."""
    rep = sys.rep
    gv = SkewElem.vector(rep, rep.matrices[g].column(i))
    ge = SkewElem.group_element(rep, g)
    return extract_mu(sys, 1, ge, SkewElem.basis_vector(rep, i)) - extract_mu(sys, 1, gv, ge)


def kappa_from_mu(sys: ReductionSystem, i, j) -> SkewElem:
    """mu_2(v (x) w) - mu_2(w (x) v) (mu_1 in the collapsed mode)."""
    rep = sys.rep
    k = 1 if sys.mode == "collapsed" else 2
    vi, vj = SkewElem.basis_vector(rep, i), SkewElem.basis_vector(rep, j)
    return extract_mu(sys, k, vi, vj) - extract_mu(sys, k, vj, vi)


# ---------------------------------------------------------------------------
# homomorphisms


def apply_hom(images: dict, target: ReductionSystem, x: FreeElem) -> SkewElem:
    """Image of a free-algebra element under the letter assignment ``images``."""
    out = SkewElem.zero(target.rep)
    one = SkewElem.one(target.rep)
    for (word, t), c in x.terms.items():
        if t:
            raise ValueError("homomorphisms are applied to t-free elements")
        val = one
        for letter in word:
            val = target.multiply(val, images[letter])
        out = out + val.scale(c)
    return out


@dataclass
class HomCheck:
    passed: bool
    failures: list = dc_field(default_factory=list)   # (Relation, residual)

    def lines(self, source):
        if self.passed:
            return ["all relations map to zero"]
        return [f"relation {source.relation_label(r)} maps to {res.render()}" for r, res in self.failures]


def verify_homomorphism(images: dict, source: ReductionSystem, target: ReductionSystem,
                        stop_at_first=False) -> HomCheck:
    """Check that every defining relation of ``source`` maps to zero in ``target``.

    ``images`` maps each source letter to a SkewElem over the target representation.
    """
    missing = [x for x in source.letters() if x not in images]
    if missing:
        raise ValueError(f"no image for letters {[source.letter_name(x) for x in missing]}")
    check = HomCheck(True)
    for rel in source.relations():
        res = apply_hom(images, target, rel.elem)
        if res:
            check.passed = False
            check.failures.append((rel, res))
            if stop_at_first:
                break
    return check


def extend_group_images(source: ReductionSystem, target: ReductionSystem, gen_images: dict):
    """Images of all group letters from images of generators, breadth first.

    Returns a dict letter -> SkewElem, or None if the generators do not reach G.
    """
    G, m = source.group, source.m
    images = {m + G.identity: SkewElem.one(target.rep)}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, img in gen_images.items():
                y = G.mul(x, s)
                if m + y not in images:
                    images[m + y] = target.multiply(images[m + x], img)
                    nxt.append(y)
        frontier = nxt
    if len(images) != G.order:
        return None
    return images


def _coords(x: SkewElem, cols):
    vec = {}
    for (mono, g, t), c in x.terms.items():
        key = (mono, g)
        if key not in cols:
            return None
        vec[cols[key]] = c
    return vec


def _filtered_basis(rep, max_deg):
    cols = {}
    for d in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(rep.dim), d):
            mono = tuple(combo.count(i) for i in range(rep.dim))
            for g in range(rep.group.order):
                cols[(mono, g)] = len(cols)
    return cols


def _rank(field, vecs, ncols):
    rows = []
    for v in vecs:
        row = [field.zero] * ncols
        for k, c in v.items():
            row[k] = c
        rows.append(row)
    return rank_of(field, rows, ncols)


def is_filtered_iso(images, source: ReductionSystem, target: ReductionSystem) -> bool:
    """Bijective on the degree <= 1 piece and onto the degree <= 2 piece."""
    rep, f, m, G = target.rep, target.field, target.m, target.group
    cols1 = _filtered_basis(rep, 1)
    gimg = [images[m + g] for g in range(G.order)]
    vecs = []
    for g in range(G.order):
        vecs.append(gimg[g])
        for i in range(m):
            vecs.append(target.multiply(images[i], gimg[g]))
    coords = [_coords(x, cols1) for x in vecs]
    if any(c is None for c in coords) or _rank(f, coords, len(cols1)) != len(cols1):
        return False
    cols2 = _filtered_basis(rep, 2)
    more = list(vecs)
    for i in range(m):
        for j in range(i, m):
            vij = target.multiply(images[i], images[j])
            for g in range(G.order):
                more.append(target.multiply(vij, gimg[g]))
    coords = [_coords(x, cols2) for x in more]
    if any(c is None for c in coords):
        return False
    return _rank(f, coords, len(cols2)) == len(cols2)


@dataclass
class IsoCandidate:
    images: dict

    def render(self, source: ReductionSystem):
        parts = []
        for x in sorted(self.images):
            if x >= source.m and x - source.m not in source.group.generators():
                continue
            parts.append(f"f({source.letter_name(x)}) = {self.images[x].render()}")
        return ", ".join(parts)


def _all_ga(rep):
    f, n = rep.field, rep.group.order
    for coeffs in itertools.product(list(f.elements()), repeat=n):
        yield SkewElem._raw(rep, {((0,) * rep.dim, g, 0): c for g, c in enumerate(coeffs) if c != 0})


def _all_degree_one(rep):
    f, n, m = rep.field, rep.group.order, rep.dim
    keys = [((0,) * m, g, 0) for g in range(n)]
    keys += [(tuple(1 if k == i else 0 for k in range(m)), g, 0) for i in range(m) for g in range(n)]
    for coeffs in itertools.product(list(f.elements()), repeat=len(keys)):
        yield SkewElem._raw(rep, {k: c for k, c in zip(keys, coeffs) if c != 0})


ISO_SEARCH_CAP = 2_000_000


def iso_search(source: ReductionSystem, target: ReductionSystem, limit=None):
    """All filtered isomorphisms source -> target with f(g) in kG and f(v) in V (x) kG + kG.

    Group generators range over all of kG (the identity is not assumed); the
    assignment is built by backtracking and each relation is tested as soon as
    all its letters have images.
    """
    f = target.field
    if not f.is_finite:
        raise PreconditionError("isomorphism search needs a finite field")
    if source.mode != "untwisted" or target.mode != "untwisted":
        raise PreconditionError("isomorphism search works on untwisted systems")
    if source.field != target.field or source.group != target.group:
        raise PreconditionError("source and target must share the field and the group")
    m, G = source.m, source.group
    gens = G.generators()
    n_ga = f.char ** G.order
    n_deg1 = f.char ** ((m + 1) * G.order)
    if n_ga ** len(gens) * n_deg1 ** m > ISO_SEARCH_CAP:
        raise PreconditionError("candidate space too large for exhaustive search")
    rels = source.relations()
    group_rels = [r for r in rels if r.kind in ("unit", "group")]
    by_level = {i: [] for i in range(m)}
    for r in rels:
        if r.kind in ("skew", "comm"):
            by_level[max(x for x in r.letters if x < m)].append(r)
    deg1 = list(_all_degree_one(target.rep))
    found = []

    def ok(images, rs):
        return all(not apply_hom(images, target, r.elem) for r in rs)

    for choice in itertools.product(list(_all_ga(target.rep)), repeat=len(gens)):
        images = extend_group_images(source, target, dict(zip(gens, choice)))
        if images is None or not ok(images, group_rels):
            continue

        def assign(i):
            if i == m:
                if is_filtered_iso(images, source, target):
                    found.append(IsoCandidate(dict(images)))
                return limit is not None and len(found) >= limit
            for cand in deg1:
                images[i] = cand
                if ok(images, by_level[i]) and assign(i + 1):
                    return True
            images.pop(i, None)
            return False

        if assign(0):
            break
    return found


def kappa_family_sources(rep):
    """H_{0, kappa'} for every PBW kappa' with values in kG."""
    from .conditions import InstanceSpace, check_pbw
    pairs = list(itertools.combinations(range(rep.dim), 2))
    space = InstanceSpace(rep, [], pairs)
    out = []
    for choice in itertools.product(space.slot_values(), repeat=len(pairs)):
        kap = KappaParam(rep, dict(zip(pairs, choice)))
        if check_pbw(LambdaParam.zero(rep), kap).passed:
            out.append(kap)
    return out


def search_kappa_family(target: ReductionSystem, kappas=None):
    """Run iso_search from H_{0, kappa'} into ``target`` for each kappa'.

    Returns a list of (kappa', [IsoCandidate, ...]) pairs.
    """
    if kappas is None:
        kappas = kappa_family_sources(target.rep)
    return [(k, iso_search(ReductionSystem(target.rep, None, k), target)) for k in kappas]
