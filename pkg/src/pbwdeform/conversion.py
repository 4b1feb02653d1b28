"""Nonmodular conversion H_{lambda,0} -> H_{0,kappa} via the averaging map gamma."""
from __future__ import annotations

from dataclasses import dataclass

from .conditions import check_pbw
from .errors import CharacteristicError, PreconditionError
from .groups import GroupAlgebraElem, _ga_add_raw, _ga_mul_raw
from .params import KappaParam, LambdaParam
from .rewriting import ReductionSystem, apply_hom, verify_homomorphism
from .skew import SkewElem


@dataclass
class GammaMap:
    """gamma(v_i) in kG for each basis index i."""

    rep: object
    table: tuple

    def raw(self, i):
        return self.table[i]

    def on_vector_raw(self, vec):
        f = self.rep.field
        out = {}
        for i, c in enumerate(vec):
            if c != 0:
                out = _ga_add_raw(f, out, self.table[i], c)
        return out

    def __call__(self, v) -> GroupAlgebraElem:
        if isinstance(v, int):
            v = self.rep.basis_vector(v)
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field, self.on_vector_raw(v))

    def component(self, a, v):
        return self(v).coeff(a)

    def is_zero(self):
        return not any(self.table)


def _check_char(rep):
    p = rep.field.char
    if p and rep.group.order % p == 0:
        raise CharacteristicError(f"characteristic {p} divides |G| = {rep.group.order}")


def gamma(lam: LambdaParam) -> GammaMap:
    """gamma_a(v) = (1/|G|) sum_b lambda_{ab}(b, ^{b^-1} v)."""
    rep = lam.rep
    _check_char(rep)
    G, f = rep.group, rep.field
    inv_n = f.inv(f(G.order))
    table = []
    for i in range(rep.dim):
        out = {}
        for b in range(G.order):
            bv = rep.matrices[G.inv(b)].column(i)
            val = lam.on_vector_raw(b, bv)
            # the coefficient of ab in lambda(b, -) contributes to gamma_a
            binv = G.inv(b)
            for ab, c in val.items():
                a = G.mul(ab, binv)
                out[a] = f.add(out.get(a, f.zero), c)
        table.append({a: f.mul(inv_n, c) for a, c in out.items() if c != 0})
    return GammaMap(rep, tuple(table))


def kappa_from_gamma(lam: LambdaParam, gam: GammaMap = None) -> KappaParam:
    """kappa(u, v) = gamma(u)gamma(v) - gamma(v)gamma(u) + lambda(gamma(u), v) - lambda(gamma(v), u)."""
    rep = lam.rep
    if gam is None:
        gam = gamma(lam)
    G, f = rep.group, rep.field
    minus = f.neg(f.one)
    entries = {}
    for i in range(rep.dim):
        for j in range(i + 1, rep.dim):
            gi, gj = gam.raw(i), gam.raw(j)
            val = _ga_mul_raw(G, f, gi, gj)
            val = _ga_add_raw(f, val, _ga_mul_raw(G, f, gj, gi), minus)
            val = _ga_add_raw(f, val, lam.extend_raw(gi, rep.basis_vector(j)))
            val = _ga_add_raw(f, val, lam.extend_raw(gj, rep.basis_vector(i)), minus)
            entries[(i, j)] = val
    return KappaParam(rep, entries)


@dataclass
class ConversionResult:
    gamma: GammaMap
    kappa: KappaParam
    forward: dict        # letter of H_{0,kappa} -> element of H_{lambda,0}
    backward: dict       # letter of H_{lambda,0} -> element of H_{0,kappa}
    forward_check: object
    backward_check: object
    composite_forward_ok: bool    # f(f^-1(x)) = x on generators of H_{lambda,0}
    composite_backward_ok: bool   # f^-1(f(x)) = x on generators of H_{0,kappa}
    source: ReductionSystem = None
    target: ReductionSystem = None

    @property
    def passed(self):
        return (self.forward_check.passed and self.backward_check.passed
                and self.composite_forward_ok and self.composite_backward_ok)

    def lines(self):
        rep = self.kappa.rep
        out = []
        for i in range(rep.dim):
            out.append(f"gamma({rep.basis_names[i]}) = {self.gamma(i).render()}")
        for i in range(rep.dim):
            for j in range(i + 1, rep.dim):
                out.append(f"kappa {rep.basis_names[i]} {rep.basis_names[j]} = {self.kappa.value(i, j).render()}")
        out.append("f: H_{0,kappa} -> H_{lambda,0}: " + ("pass" if self.forward_check.passed else "FAIL"))
        out.extend("  " + s for s in self.forward_check.lines(self.source) if not self.forward_check.passed)
        out.append("f^-1: H_{lambda,0} -> H_{0,kappa}: " + ("pass" if self.backward_check.passed else "FAIL"))
        out.extend("  " + s for s in self.backward_check.lines(self.target) if not self.backward_check.passed)
        out.append("f o f^-1 = id on generators: " + ("pass" if self.composite_forward_ok else "FAIL"))
        out.append("f^-1 o f = id on generators: " + ("pass" if self.composite_backward_ok else "FAIL"))
        return out


def _images(sys: ReductionSystem, gam: GammaMap, sign):
    rep = sys.rep
    imgs = {}
    for i in range(rep.dim):
        g_part = SkewElem.from_ga(rep, gam(i)).scale(sign)
        imgs[i] = SkewElem.basis_vector(rep, i) + g_part
    for g in range(rep.group.order):
        imgs[sys.m + g] = SkewElem.group_element(rep, g)
    return imgs


def _composite_ok(outer, outer_target, inner, inner_target):
    """outer(inner(x)) == x for each letter x."""
    for x, img in inner.items():
        val = apply_hom(outer, outer_target, inner_target.to_free(img))
        expect = outer_target.normal_form((x,))
        if val != expect:
            return False
    return True


def build_conversion_iso(lam: LambdaParam) -> ConversionResult:
    """f: H_{0,kappa} -> H_{lambda,0}, v -> v + gamma(v), g -> g, and its inverse, both verified."""
    rep = lam.rep
    _check_char(rep)
    if not check_pbw(lam, KappaParam.zero(rep)).passed:
        raise PreconditionError("H_{lambda,0} does not have the PBW property")
    gam = gamma(lam)
    kap = kappa_from_gamma(lam, gam)
    src = ReductionSystem(rep, None, kap)
    tgt = ReductionSystem(rep, lam, None)
    fwd = _images(tgt, gam, 1)
    bwd = _images(src, gam, -1)
    fcheck = verify_homomorphism(fwd, src, tgt)
    bcheck = verify_homomorphism(bwd, tgt, src)
    comp_f = _composite_ok(fwd, tgt, bwd, src)
    comp_b = _composite_ok(bwd, src, fwd, tgt)
    return ConversionResult(gam, kap, fwd, bwd, fcheck, bcheck, comp_f, comp_b, src, tgt)


def gamma_identity_residual(gam: GammaMap, a, i, j):
    """gamma_a(v_j)(v_i - ^a v_i) - gamma_a(v_i)(v_j - ^a v_j) as a vector."""
    rep = gam.rep
    f = rep.field
    ci = gam.raw(j).get(a, f.zero)
    cj = gam.raw(i).get(a, f.zero)
    ei, ej = rep.basis_vector(i), rep.basis_vector(j)
    ai, aj = rep.matrices[a].column(i), rep.matrices[a].column(j)
    return tuple(f.sub(f.mul(ci, f.sub(ei[k], ai[k])), f.mul(cj, f.sub(ej[k], aj[k])))
                 for k in range(rep.dim))
