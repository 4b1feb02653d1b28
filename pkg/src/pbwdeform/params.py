"""The deformation parameters lambda: kG (x) V -> kG and kappa: V (x) V -> kG.

Both are stored on basis vectors; values on arbitrary vectors (and, for
lambda, on arbitrary elements of kG in the first slot) follow by linearity.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field as dc_field

from .errors import GroupMismatchError, NotAReflectionError, WellDefinednessError
from .groups import (GroupAlgebraElem, Representation, _ga_add_raw, _ga_mul_raw,
                     fixed_space, image_of_difference)
from .matrix import rank_of
from .skew import SkewElem


def _as_raw(rep, x):
    if x is None:
        return {}
    if isinstance(x, GroupAlgebraElem):
        if not (x.group is rep.group or x.group == rep.group):
            raise GroupMismatchError("parameter value over a different group")
        return dict(x.coeffs)
    if isinstance(x, dict):
        return GroupAlgebraElem(rep.group, rep.field, x).coeffs
    # scalar: multiple of the identity
    c = rep.field(x)
    return {rep.group.identity: c} if c != 0 else {}


def _vec_coords(rep, v):
    if isinstance(v, int):
        return rep.basis_vector(v)
    return tuple(rep.field(c) for c in v)


class LambdaParam:
    """lambda(g, v_i) for every group element g and basis index i."""

    def __init__(self, rep: Representation, table=None):
        self.rep = rep
        n, m = rep.group.order, rep.dim
        rows = []
        for g in range(n):
            row = []
            for i in range(m):
                x = table[g][i] if table is not None else None
                row.append(_as_raw(rep, x))
            rows.append(tuple(row))
        self.table = tuple(rows)

    @classmethod
    def zero(cls, rep):
        return cls(rep)

    @classmethod
    def from_entries(cls, rep, entries):
        """Build from ``{(g, i): value}``; missing entries are zero."""
        table = [[entries.get((g, i)) for i in range(rep.dim)] for g in range(rep.group.order)]
        return cls(rep, table)

    def raw(self, g, i):
        return self.table[g][i]

    def value(self, g, i) -> GroupAlgebraElem:
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field, dict(self.table[g][i]))

    def __call__(self, g, v) -> GroupAlgebraElem:
        """lambda(g, v); ``g`` an index or a kG element, ``v`` an index or coordinates."""
        vec = _vec_coords(self.rep, v)
        if isinstance(g, GroupAlgebraElem):
            raw = self.extend_raw(g.coeffs, vec)
        else:
            raw = self.on_vector_raw(g, vec)
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field, raw)

    def on_vector_raw(self, g, vec):
        f = self.rep.field
        out = {}
        row = self.table[g]
        for i, c in enumerate(vec):
            if c != 0 and row[i]:
                out = _ga_add_raw(f, out, row[i], c)
        return out

    def extend_raw(self, x: dict, vec):
        """lambda extended kG-linearly in its first slot."""
        f = self.rep.field
        out = {}
        for h, a in x.items():
            val = self.on_vector_raw(h, vec)
            if val:
                out = _ga_add_raw(f, out, val, a)
        return out

    def component(self, h, g, v):
        """lambda_h(g, v): the coefficient of h in lambda(g, v)."""
        return self.on_vector_raw(g, _vec_coords(self.rep, v)).get(h, self.rep.field.zero)

    def is_zero(self):
        return not any(x for row in self.table for x in row)

    def skew_value(self, g, i) -> SkewElem:
        return SkewElem.from_ga(self.rep, self.value(g, i))

    def __eq__(self, other):
        return isinstance(other, LambdaParam) and self.rep.same_as(other.rep) and self.table == other.table

    def __repr__(self):
        return f"LambdaParam(|G|={self.rep.group.order}, dim={self.rep.dim})"


class KappaParam:
    """Alternating kappa, stored on basis pairs i < j."""

    def __init__(self, rep: Representation, entries=None):
        self.rep = rep
        table = {}
        for (i, j), x in (entries or {}).items():
            if i == j:
                if _as_raw(rep, x):
                    raise ValueError("kappa(v, v) must vanish")
                continue
            raw = _as_raw(rep, x)
            if i > j:
                i, j = j, i
                raw = {g: rep.field.neg(c) for g, c in raw.items()}
            if (i, j) in table:
                raise ValueError(f"kappa({i},{j}) given twice")
            if raw:
                table[(i, j)] = raw
        self.table = table

    @classmethod
    def zero(cls, rep):
        return cls(rep)

    def raw(self, i, j):
        f = self.rep.field
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {g: f.neg(c) for g, c in self.table.get((j, i), {}).items()}

    def value(self, i, j) -> GroupAlgebraElem:
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field, dict(self.raw(i, j)))

    def on_vectors_raw(self, u, v):
        f = self.rep.field
        out = {}
        for (i, j), val in self.table.items():
            c = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]))
            if c != 0:
                out = _ga_add_raw(f, out, val, c)
        return out

    def __call__(self, u, v) -> GroupAlgebraElem:
        raw = self.on_vectors_raw(_vec_coords(self.rep, u), _vec_coords(self.rep, v))
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field, raw)

    def component(self, g, u, v):
        return self.on_vectors_raw(_vec_coords(self.rep, u), _vec_coords(self.rep, v)).get(g, self.rep.field.zero)

    def skew_value(self, i, j) -> SkewElem:
        return SkewElem.from_ga(self.rep, self.value(i, j))

    def support(self):
        return sorted({g for val in self.table.values() for g in val})

    def is_zero(self):
        return not self.table

    def __eq__(self, other):
        return isinstance(other, KappaParam) and self.rep.same_as(other.rep) and self.table == other.table

    def __repr__(self):
        return f"KappaParam({len(self.table)} nonzero pairs)"


class GeneralKappa:
    """Alternating kappa with values in kG + V (x) kG (degree <= 1 elements of S(V)#G)."""

    def __init__(self, rep: Representation, entries=None):
        self.rep = rep
        table = {}
        for (i, j), x in (entries or {}).items():
            if not isinstance(x, SkewElem):
                x = SkewElem.from_ga(rep, GroupAlgebraElem(rep.group, rep.field, _as_raw(rep, x)))
            if any(sum(m) > 1 or t for (m, g, t) in x.terms):
                raise ValueError("general kappa values must have degree <= 1")
            if i == j:
                if x:
                    raise ValueError("kappa(v, v) must vanish")
                continue
            if i > j:
                i, j, x = j, i, -x
            if (i, j) in table:
                raise ValueError(f"kappa({i},{j}) given twice")
            if x:
                table[(i, j)] = x
        self.table = table

    def value(self, i, j) -> SkewElem:
        if i == j:
            return SkewElem.zero(self.rep)
        if i < j:
            return self.table.get((i, j), SkewElem.zero(self.rep))
        return -self.table.get((j, i), SkewElem.zero(self.rep))

    skew_value = value

    def group_part(self, i, j) -> GroupAlgebraElem:
        x = self.value(i, j)
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field,
                                     {g: c for (m, g, t), c in x.terms.items() if sum(m) == 0})

    def vector_part(self, i, j, k) -> GroupAlgebraElem:
        """Coefficient (in kG) of v_k in kappa(v_i, v_j)."""
        x = self.value(i, j)
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field,
                                     {g: c for (m, g, t), c in x.terms.items() if sum(m) == 1 and m[k] == 1})

    def is_zero(self):
        return not self.table

    @classmethod
    def from_kappa(cls, kappa: KappaParam):
        return cls(kappa.rep, {k: kappa.skew_value(*k) for k in kappa.table})

    def __eq__(self, other):
        return isinstance(other, GeneralKappa) and self.rep.same_as(other.rep) and self.table == other.table


# ---------------------------------------------------------------------------
# condition (1) and recursive extension


def cocycle_residual(lam: LambdaParam, g, h, i):
    """lambda(gh, v_i) - lambda(g, ^h v_i) h - g lambda(h, v_i), as a raw kG dict."""
    rep = lam.rep
    G, f = rep.group, rep.field
    lhs = lam.table[G.mul(g, h)][i]
    hv = rep.matrices[h].column(i)
    t1 = _ga_mul_raw(G, f, lam.on_vector_raw(g, hv), {h: f.one})
    t2 = _ga_mul_raw(G, f, {g: f.one}, lam.table[h][i])
    minus = f.neg(f.one)
    return _ga_add_raw(f, _ga_add_raw(f, lhs, t1, minus), t2, minus)


def extend_lambda_by_recursion(rep: Representation, partial: dict) -> LambdaParam:
    """Extend lambda from a generating set to all of G.

    ``partial`` maps generator index -> sequence of values lambda(s, v_i).
    Words are fixed breadth-first; afterwards the cocycle condition
    lambda(gh, v) = lambda(g, ^h v) h + g lambda(h, v) is checked on every pair
    and a :class:`WellDefinednessError` carries the first failing (g, h, i).
    """
    G, f, m = rep.group, rep.field, rep.dim
    gens = list(partial)
    table = [None] * G.order
    table[G.identity] = [{} for _ in range(m)]
    for s in gens:
        if s == G.identity:
            raise WellDefinednessError("the identity cannot be a seed generator", (s, s, 0))
        table[s] = [_as_raw(rep, x) for x in partial[s]]
        if len(table[s]) != m:
            raise ValueError(f"need {m} seed values for generator {s}")
    tmp = LambdaParam(rep)
    seen = {G.identity} | set(gens)
    queue = deque([G.identity] + gens)
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y in seen:
                continue
            # lambda(x s, v) = lambda(x, ^s v) s + x lambda(s, v)
            tmp.table = tuple(tuple(r) if r is not None else tuple({} for _ in range(m)) for r in table)
            row = []
            for i in range(m):
                sv = rep.matrices[s].column(i)
                a = _ga_mul_raw(G, f, tmp.on_vector_raw(x, sv), {s: f.one})
                b = _ga_mul_raw(G, f, {x: f.one}, table[s][i])
                row.append(_ga_add_raw(f, a, b))
            table[y] = row
            seen.add(y)
            queue.append(y)
    if len(seen) != G.order:
        raise WellDefinednessError("seed elements do not generate the group")
    lam = LambdaParam(rep, table)
    for g in range(G.order):
        for h in range(G.order):
            for i in range(m):
                if cocycle_residual(lam, g, h, i):
                    raise WellDefinednessError(
                        f"lambda is not well defined: condition fails at "
                        f"({G.names[g]}, {G.names[h]}, {rep.basis_names[i]})", (g, h, i))
    return lam


def build_lambda_coxeter(rep: Representation, simple_reflections, roots, c) -> LambdaParam:
    """Graded-affine-Hecke lambda: lambda(s, v) = c_s * (v - ^s v)/alpha_s on simple reflections.

    ``c`` is a scalar (constant function) or a mapping reflection -> scalar.
    The result is extended to G by recursion and verified.
    """
    G, f, m = rep.group, rep.field, rep.dim
    simple_reflections = list(simple_reflections)
    if len(roots) != len(simple_reflections):
        raise ValueError("need one root per simple reflection")
    if isinstance(c, dict):
        cvals = {s: f(c[s]) for s in c}
    else:
        cvals = {s: f(c) for s in simple_reflections}
    for s in cvals:
        for t in cvals:
            if t in G.class_of(s) and cvals[s] != cvals[t]:
                raise ValueError(f"c is not constant on the conjugacy class of {G.names[s]}")
    partial = {}
    for s, alpha in zip(simple_reflections, roots):
        _, codim = fixed_space(rep, s)
        if codim != 1:
            raise NotAReflectionError(f"{G.names[s]} is not a reflection (codim {codim})")
        alpha = tuple(f(a) for a in alpha)
        img = image_of_difference(rep, s)
        if not any(alpha) or rank_of(f, [list(x) for x in img] + [list(alpha)], m) != len(img):
            raise ValueError(f"root for {G.names[s]} does not span the image of rho(s) - I")
        k = next(i for i, a in enumerate(alpha) if a != 0)
        cs = cvals.get(s)
        if cs is None:
            raise ValueError(f"no value of c for {G.names[s]}")
        row = []
        for i in range(m):
            sv = rep.matrices[s].column(i)
            diff = tuple(f.sub(f.one if j == i else f.zero, sv[j]) for j in range(m))
            mu = f.div(diff[k], alpha[k])
            assert all(diff[j] == f.mul(mu, alpha[j]) for j in range(m))
            val = f.mul(cs, mu)
            row.append({G.identity: val} if val != 0 else {})
        partial[s] = row
    return extend_lambda_by_recursion(rep, partial)


def diagonal_lambda(rep: Representation, functional) -> LambdaParam:
    """lambda(g, v) = (phi(v) - phi(^g v)) g for a linear functional phi.

    Such lambda satisfy every PBW condition with kappa = 0 in any characteristic.
    """
    f = rep.field
    phi = [f(x) for x in functional]
    table = []
    for g in range(rep.group.order):
        row = []
        for i in range(rep.dim):
            gv = rep.matrices[g].column(i)
            c = f.sub(phi[i], sum_raw(f, (f.mul(phi[j], gv[j]) for j in range(rep.dim))))
            row.append({g: c} if c != 0 else {})
        table.append(row)
    return LambdaParam(rep, table)


def sum_raw(f, xs):
    s = f.zero
    for x in xs:
        s = f.add(s, x)
    return s


# ---------------------------------------------------------------------------
# structural pre-filters


@dataclass
class Violation:
    kind: str
    where: tuple
    detail: str


@dataclass
class StructuralReport:
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return "structural checks: no violations"
        return "\n".join(f"{v.kind} at {v.where}: {v.detail}" for v in self.violations)


def validate_structural(lam: LambdaParam, kappa: KappaParam) -> StructuralReport:
    """Necessary conditions on the supports of kappa_g and lambda_h(g, -)."""
    rep = lam.rep
    G, f, m = rep.group, rep.field, rep.dim
    report = StructuralReport()
    for g in range(G.order):
        K = [[kappa.raw(i, j).get(g, f.zero) for j in range(m)] for i in range(m)]
        if not any(x for row in K for x in row):
            continue
        basis, codim = fixed_space(rep, g)
        name = G.names[g]
        if codim > 2:
            report.violations.append(Violation("kappa-codim", (name,), f"kappa_g != 0 but codim V^g = {codim}"))
        elif codim == 1:
            for a in range(len(basis)):
                for b in range(a + 1, len(basis)):
                    val = _bilinear(f, K, basis[a], basis[b])
                    if val != 0:
                        report.violations.append(Violation(
                            "kappa-fixed-wedge", (name, a, b), "kappa_g does not vanish on V^g x V^g"))
        elif codim == 2:
            # ker kappa_g = {x : sum_i x_i K[i][j] = 0 for all j}
            from .matrix import nullspace
            ker = nullspace(f, [list(col) for col in zip(*K)], m)
            inside = all(_bilinear(f, K, u, rep.basis_vector(j)) == 0 for u in basis for j in range(m))
            if len(ker) != len(basis) or not inside:
                report.violations.append(Violation("kappa-kernel", (name,), "ker kappa_g != V^g"))
    for g in range(G.order):
        for h in range(G.order):
            vals = [lam.table[g][i].get(h, f.zero) for i in range(m)]
            if not any(vals):
                continue
            x = G.mul(G.inv(h), g)
            basis, codim = fixed_space(rep, x)
            where = (G.names[g], G.names[h])
            if codim >= 2:
                report.violations.append(Violation(
                    "lambda-support", where, f"lambda_h(g, -) != 0 with h^-1 g of codim {codim}"))
            elif codim == 1:
                for u in basis:
                    if sum_raw(f, (f.mul(u[i], vals[i]) for i in range(m))) != 0:
                        report.violations.append(Violation(
                            "lambda-hyperplane", where, "lambda_h(g, -) nonzero on the reflecting hyperplane"))
                        break
    return report


def _bilinear(f, K, u, v):
    s = f.zero
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b != 0 and K[i][j] != 0:
                s = f.add(s, f.mul(f.mul(a, b), K[i][j]))
    return s


# ---------------------------------------------------------------------------
# random parameters (for property tests)


def _random_coeff(f, rng):
    if f.char:
        return rng.randrange(f.char)
    return f(rng.randint(-2, 2))


def random_ga(rep, rng: random.Random, density=0.5):
    f = rep.field
    out = {}
    for g in range(rep.group.order):
        if rng.random() < density:
            c = _random_coeff(f, rng)
            if c != 0:
                out[g] = c
    return out


def random_lambda(rep, rng: random.Random, density=0.3, fix_identity=True) -> LambdaParam:
    table = []
    for g in range(rep.group.order):
        if fix_identity and g == rep.group.identity:
            table.append([{} for _ in range(rep.dim)])
        else:
            table.append([random_ga(rep, rng, density) for _ in range(rep.dim)])
    return LambdaParam(rep, table)


def random_kappa(rep, rng: random.Random, density=0.3) -> KappaParam:
    entries = {}
    for i in range(rep.dim):
        for j in range(i + 1, rep.dim):
            entries[(i, j)] = random_ga(rep, rng, density)
    return KappaParam(rep, entries)
