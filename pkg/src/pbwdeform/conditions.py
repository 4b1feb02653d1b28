"""The five combinatorial PBW conditions, evaluated on basis tuples."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import GroupMismatchError, PreconditionError
from .groups import GroupAlgebraElem, _ga_add_raw, _ga_mul_raw, render_ga
from .params import KappaParam, LambdaParam, cocycle_residual

CONDITIONS = (1, 2, 3, 4, 5)

# the tuple shape each condition ranges over
WITNESS_SHAPE = {1: ("g", "h", "v"), 2: ("g", "u", "v"), 3: ("g", "h", "u", "v"),
                 4: ("g", "u", "v", "w"), 5: ("u", "v", "w")}


def _vec_sub(f, a, b):
    return tuple(f.sub(x, y) for x, y in zip(a, b))


def _vec_comb(f, terms):
    """Sum of c * vec over (c, vec) pairs."""
    out = None
    for c, vec in terms:
        if out is None:
            out = [f.zero] * len(vec)
        if c == 0:
            continue
        for k, x in enumerate(vec):
            if x != 0:
                out[k] = f.add(out[k], f.mul(c, x))
    return tuple(out)


def _residual(lam: LambdaParam, kappa: KappaParam, cond, w):
    rep = lam.rep
    G, f = rep.group, rep.field
    col = lambda g, i: rep.matrices[g].column(i)
    minus = f.neg(f.one)
    if cond == 1:
        g, h, i = w
        return cocycle_residual(lam, g, h, i)
    if cond == 2:
        g, i, j = w
        lhs = _ga_mul_raw(G, f, kappa.on_vectors_raw(col(g, i), col(g, j)), {g: f.one})
        lhs = _ga_add_raw(f, lhs, _ga_mul_raw(G, f, {g: f.one}, kappa.raw(i, j)), minus)
        rhs = _ga_add_raw(f, lam.extend_raw(lam.table[g][j], rep.basis_vector(i)),
                          lam.extend_raw(lam.table[g][i], rep.basis_vector(j)), minus)
        return _ga_add_raw(f, lhs, rhs, minus)
    if cond == 3:
        g, h, i, j = w
        a = lam.table[g][j].get(h, f.zero)
        b = lam.table[g][i].get(h, f.zero)
        return _vec_comb(f, [(a, _vec_sub(f, col(h, i), col(g, i))),
                             (f.neg(b), _vec_sub(f, col(h, j), col(g, j)))])
    if cond == 4:
        g, i, j, k = w
        kg = lambda a, b: kappa.raw(a, b).get(g, f.zero)
        e = rep.basis_vector
        return _vec_comb(f, [(kg(i, j), _vec_sub(f, col(g, k), e(k))),
                             (kg(j, k), _vec_sub(f, col(g, i), e(i))),
                             (kg(k, i), _vec_sub(f, col(g, j), e(j)))])
    if cond == 5:
        i, j, k = w
        e = rep.basis_vector
        out = lam.extend_raw(kappa.raw(i, j), e(k))
        out = _ga_add_raw(f, out, lam.extend_raw(kappa.raw(j, k), e(i)))
        return _ga_add_raw(f, out, lam.extend_raw(kappa.raw(k, i), e(j)))
    raise ValueError(f"unknown condition {cond}")


def _is_zero(res):
    if isinstance(res, dict):
        return not res
    return not any(res)


def witnesses(rep, cond):
    """All basis tuples a condition is checked on, in report order.

    Conditions 2-5 are alternating in their vector arguments, so strictly
    increasing index tuples suffice.
    """
    n, m = rep.group.order, rep.dim
    gs = range(n)
    if cond == 1:
        return itertools.product(gs, gs, range(m))
    if cond == 2:
        return ((g, i, j) for g in gs for i, j in itertools.combinations(range(m), 2))
    if cond == 3:
        return ((g, h, i, j) for g in gs for h in gs for i, j in itertools.combinations(range(m), 2))
    if cond == 4:
        return ((g,) + t for g in gs for t in itertools.combinations(range(m), 3))
    if cond == 5:
        return itertools.combinations(range(m), 3)
    raise ValueError(f"unknown condition {cond}")


def evaluate_condition(lam: LambdaParam, kappa: KappaParam, cond: int, witness):
    """Residual of a condition at one basis tuple (kG element or vector)."""
    res = _residual(lam, kappa, cond, tuple(witness))
    if isinstance(res, dict):
        return GroupAlgebraElem._raw(lam.rep.group, lam.rep.field, res)
    return res


@dataclass
class ConditionResult:
    condition: int
    passed: bool
    witness: tuple = None
    residual: object = None
    failures: int = 0
    checked: int = 0


@dataclass
class ConditionReport:
    rep: object
    results: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        return all(r.passed for r in self.results.values())

    def __getitem__(self, cond):
        return self.results[cond]

    def failed_conditions(self):
        return [c for c, r in self.results.items() if not r.passed]

    def witness_names(self, cond):
        r = self.results[cond]
        if r.witness is None:
            return None
        return name_witness(self.rep, cond, r.witness)

    def residual_text(self, cond):
        r = self.results[cond]
        if r.residual is None:
            return None
        return render_residual(self.rep, r.residual)

    def lines(self):
        out = []
        for c, r in self.results.items():
            if r.passed:
                out.append(f"condition {c}: pass ({r.checked} tuples)")
            else:
                out.append(f"condition {c}: FAIL at {self.witness_names(c)}; residual "
                           f"{self.residual_text(c)}; {r.failures} failing tuples")
        out.append("verdict: " + ("PBW" if self.passed else "not PBW"))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def name_witness(rep, cond, w):
    names = []
    for kind, x in zip(WITNESS_SHAPE[cond], w):
        names.append(rep.group.names[x] if kind in ("g", "h") else rep.basis_names[x])
    return tuple(names)


def render_residual(rep, res):
    if isinstance(res, GroupAlgebraElem):
        return res.render()
    if isinstance(res, dict):
        return render_ga(rep.group, rep.field, res)
    from .skew import SkewElem
    return SkewElem.vector(rep, res).render()


def check_pbw(lam: LambdaParam, kappa: KappaParam, conditions=CONDITIONS) -> ConditionReport:
    """Evaluate the PBW conditions; the report keeps the first failing tuple of each."""
    if not lam.rep.same_as(kappa.rep):
        raise GroupMismatchError("lambda and kappa are over different representations")
    rep = lam.rep
    report = ConditionReport(rep)
    for cond in conditions:
        res = ConditionResult(cond, True)
        for w in witnesses(rep, cond):
            res.checked += 1
            r = _residual(lam, kappa, cond, w)
            if not _is_zero(r):
                if res.passed:
                    res.passed = False
                    res.witness = w
                    res.residual = evaluate_condition(lam, kappa, cond, w)
                res.failures += 1
        report.results[cond] = res
    return report


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class InstanceSpace:
    """Free table slots of (lambda, kappa), each ranging over a finite set of kG values.

    ``lambda_slots`` lists (g, i) pairs and ``kappa_slots`` lists (i, j) pairs
    with i < j; all other entries are zero.  ``values`` is the list of raw kG
    dicts every slot ranges over (default: all of kG).
    """

    rep: object
    lambda_slots: list
    kappa_slots: list
    values: list = None

    def slot_values(self):
        if self.values is not None:
            return list(self.values)
        f = self.rep.field
        if not f.is_finite:
            raise PreconditionError("cannot enumerate kG over the rationals")
        n = self.rep.group.order
        out = []
        for coeffs in itertools.product(list(f.elements()), repeat=n):
            out.append({g: c for g, c in enumerate(coeffs) if c != 0})
        return out

    def size(self):
        return len(self.slot_values()) ** (len(self.lambda_slots) + len(self.kappa_slots))

    def build(self, choice):
        k = len(self.lambda_slots)
        lam = LambdaParam.from_entries(self.rep, dict(zip(self.lambda_slots, choice[:k])))
        kap = KappaParam(self.rep, dict(zip(self.kappa_slots, choice[k:])))
        return lam, kap


def free_family(rep) -> InstanceSpace:
    """lambda(g, v_i) for g != 1 and every kappa(v_i, v_j) free; lambda(1, -) = 0."""
    lam_slots = [(g, i) for g in range(rep.group.order) if g != rep.group.identity
                 for i in range(rep.dim)]
    kap_slots = list(itertools.combinations(range(rep.dim), 2))
    return InstanceSpace(rep, lam_slots, kap_slots)


def enumerate_instances(space: InstanceSpace, exhaustive=True, seed=None, count=None):
    """Yield (lambda, kappa) pairs.

    Exhaustive mode walks the product of slot ranges in lexicographic order
    and needs a finite field.  Otherwise ``count`` instances are drawn with
    ``random.Random(seed)``.
    """
    nslots = len(space.lambda_slots) + len(space.kappa_slots)
    if exhaustive:
        if not space.rep.field.is_finite and space.values is None:
            raise PreconditionError("exhaustive enumeration needs a finite field")
        vals = space.slot_values()
        for choice in itertools.product(vals, repeat=nslots):
            yield space.build(choice)
        return
    if count is None:
        raise ValueError("random enumeration needs a count")
    rng = random.Random(seed)
    if space.values is not None:
        vals = space.values
        for _ in range(count):
            yield space.build([vals[rng.randrange(len(vals))] for _ in range(nslots)])
    else:
        from .params import random_ga
        density = 1.0 if space.rep.field.is_finite else 0.5
        for _ in range(count):
            yield space.build([random_ga(space.rep, rng, density) for _ in range(nslots)])
