"""Elements of the skew group algebra S(V)#G in PBW form.

A term is keyed by ``(mono, g, tdeg)``: ``mono`` is the exponent tuple of
v_1^i_1 ... v_m^i_m, ``g`` the group index on the right, and ``tdeg`` the power
of the deformation parameter t (zero outside the t-graded setting).
"""
from __future__ import annotations

from .errors import GroupMismatchError
from .groups import GroupAlgebraElem, Representation, _join_terms, _render_term


def _mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def poly_mul(field, p, q):
    out = {}
    for ma, a in p.items():
        for mb, b in q.items():
            k = _mono_add(ma, mb)
            v = field.add(out.get(k, field.zero), field.mul(a, b))
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
    return out


def act_on_monomial(rep: Representation, g: int, mono):
    """^g(v^mono) expanded as a polynomial dict."""
    key = ("mono", g, mono)
    cache = rep._cache
    if key in cache:
        return cache[key]
    f = rep.field
    m = rep.dim
    if sum(mono) == 0:
        res = {mono: f.one}
    else:
        i = next(k for k, e in enumerate(mono) if e)
        rest = tuple(e - 1 if k == i else e for k, e in enumerate(mono))
        lin = {tuple(1 if k == j else 0 for k in range(m)): c for j, c in rep.action[g][i].items()}
        res = poly_mul(f, lin, act_on_monomial(rep, g, rest))
    cache[key] = res
    return res


class SkewElem:
    """Immutable element of S(V)#G (optionally with powers of t)."""

    __slots__ = ("rep", "terms")

    def __init__(self, rep: Representation, terms=None):
        self.rep = rep
        f = rep.field
        clean = {}
        for (mono, g, *t), c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != rep.dim or any(e < 0 for e in mono):
                raise ValueError(f"bad multidegree {mono}")
            if not 0 <= g < rep.group.order:
                raise IndexError(f"group element {g} out of range")
            key = (mono, g, t[0] if t else 0)
            c = f.add(clean.get(key, f.zero), f(c))
            if c == 0:
                clean.pop(key, None)
            else:
                clean[key] = c
        self.terms = clean

    @classmethod
    def _raw(cls, rep, terms):
        x = cls.__new__(cls)
        x.rep = rep
        x.terms = terms
        return x

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, rep):
        return cls._raw(rep, {})

    @classmethod
    def one(cls, rep):
        return cls.group_element(rep, rep.group.identity)

    @classmethod
    def group_element(cls, rep, g, c=None):
        c = rep.field.one if c is None else rep.field(c)
        return cls._raw(rep, {((0,) * rep.dim, g, 0): c} if c != 0 else {})

    @classmethod
    def basis_vector(cls, rep, i, g=None):
        mono = tuple(1 if k == i else 0 for k in range(rep.dim))
        g = rep.group.identity if g is None else g
        return cls._raw(rep, {(mono, g, 0): rep.field.one})

    @classmethod
    def vector(cls, rep, vec, g=None):
        """A vector of V given by raw coordinates, times the group element g."""
        g = rep.group.identity if g is None else g
        terms = {}
        for i, c in enumerate(vec):
            if c != 0:
                terms[(tuple(1 if k == i else 0 for k in range(rep.dim)), g, 0)] = c
        return cls._raw(rep, terms)

    @classmethod
    def from_ga(cls, rep, x: GroupAlgebraElem):
        z = (0,) * rep.dim
        return cls._raw(rep, {(z, g, 0): c for g, c in x.coeffs.items()})

    @classmethod
    def monomial(cls, rep, mono, g=None, c=None, tdeg=0):
        g = rep.group.identity if g is None else g
        c = rep.field.one if c is None else rep.field(c)
        return cls._raw(rep, {(tuple(mono), g, tdeg): c} if c != 0 else {})

    # arithmetic ---------------------------------------------------------
    def _compat(self, other):
        if not isinstance(other, SkewElem):
            return False
        if not self.rep.same_as(other.rep):
            raise GroupMismatchError("skew elements over different representations")
        return True

    def _combine(self, other, sign):
        f = self.rep.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = f.add(out.get(k, f.zero), c if sign > 0 else f.neg(c))
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return SkewElem._raw(self.rep, out)

    def __add__(self, other):
        if not self._compat(other):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not self._compat(other):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        f = self.rep.field
        return SkewElem._raw(self.rep, {k: f.neg(c) for k, c in self.terms.items()})

    def scale(self, c):
        f = self.rep.field
        c = f(c)
        if c == 0:
            return SkewElem.zero(self.rep)
        return SkewElem._raw(self.rep, {k: f.mul(c, a) for k, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SkewElem):
            return skew_multiply(self, other)
        try:
            return self.scale(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SkewElem):
            return NotImplemented
        return self.rep.same_as(other.rep) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # structure ----------------------------------------------------------
    def degrees(self):
        return {sum(m) for (m, g, t) in self.terms}

    def degree(self):
        return max((sum(m) for (m, g, t) in self.terms), default=-1)

    def t_coefficient(self, j):
        """Coefficient of t^j, as a t-free element."""
        return SkewElem._raw(self.rep, {(m, g, 0): c for (m, g, t), c in self.terms.items() if t == j})

    def t_degrees(self):
        return sorted({t for (_, _, t) in self.terms})

    def drop_t(self):
        """Substitute t = 1."""
        f = self.rep.field
        out = {}
        for (m, g, t), c in self.terms.items():
            k = (m, g, 0)
            v = f.add(out.get(k, f.zero), c)
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return SkewElem._raw(self.rep, out)

    def is_group_algebra(self):
        return all(sum(m) == 0 and t == 0 for (m, g, t) in self.terms)

    def to_ga(self) -> GroupAlgebraElem:
        if not self.is_group_algebra():
            raise ValueError(f"{self.render()} does not lie in kG")
        return GroupAlgebraElem._raw(self.rep.group, self.rep.field,
                                     {g: c for (m, g, t), c in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        rep = self.rep
        parts = []
        for (mono, g, t) in sorted(self.terms, key=lambda k: (k[2], -sum(k[0]), tuple(-e for e in k[0]), k[1])):
            c = self.terms[(mono, g, t)]
            factors = []
            for i, e in enumerate(mono):
                if e:
                    factors.append(rep.basis_names[i] if e == 1 else f"{rep.basis_names[i]}^{e}")
            if g != rep.group.identity:
                factors.append(rep.group.names[g])
            if t:
                factors.append("t" if t == 1 else f"t^{t}")
            parts.append(_render_term(rep.field, c, "*".join(factors) if factors else None))
        return _join_terms(parts)

    def __repr__(self):
        return f"SkewElem({self.render()})"


def skew_multiply(a: SkewElem, b: SkewElem) -> SkewElem:
    """(r g)(s h) = r (^g s) gh, extended bilinearly (and k[t]-linearly)."""
    if not a._compat(b):
        raise TypeError("skew_multiply expects SkewElem operands")
    rep = a.rep
    f = rep.field
    table = rep.group.table
    out = {}
    for (ma, g, ta), ca in a.terms.items():
        row = table[g]
        for (mb, h, tb), cb in b.terms.items():
            cab = f.mul(ca, cb)
            gh = row[h]
            for mono, c in act_on_monomial(rep, g, mb).items():
                k = (_mono_add(ma, mono), gh, ta + tb)
                v = f.add(out.get(k, f.zero), f.mul(cab, c))
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
    return SkewElem._raw(rep, out)
