"""The resolution X of A = S(V)#G in total degree <= 3, cochains on it, and brackets.

X_{i,j} = A (x) (kG)^{(x)i} (x) Lambda^j(V) (x) A.  A k-basis element of X is
stored as ``(left, gs, wedge, right)`` where ``left``/``right`` are PBW monomial
keys ``(mono, g)`` of A, ``gs`` is a tuple of i group indices and ``wedge`` a
strictly increasing tuple of j basis indices.  The pair ``(gs, wedge)`` is a
middle-basis element.

The horizontal differential is

    d^h(1|g_1..g_i|x|1) = g_1|g_2..g_i|x|1 + sum_l (-1)^l 1|..g_l g_{l+1}..|x|1
                          + (-1)^i 1|g_1..g_{i-1}|^{g_i}x|g_i

and the vertical one

    d^v(1|gs|v_1^..^v_j|1) = (-1)^(i+1) sum_l (-1)^l (^{g_1..g_i}v_l|gs|..v_l-hat..|1
                                                    - 1|gs|..v_l-hat..|v_l).

With this sign d(1|v|1) = v|1 - 1|v, d^2 = 0, and the explicit chain maps
phi_2, phi_3 below commute with the bar differential.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import PreconditionError, SliceError
from .params import KappaParam, LambdaParam
from .skew import SkewElem, skew_multiply


def _acc(out, key, c, f):
    v = f.add(out.get(key, f.zero), c)
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


def _sign(f, s):
    return f.one if s % 2 == 0 else f.neg(f.one)


def _one_key(rep):
    return ((0,) * rep.dim, rep.group.identity)


def _group_key(rep, g):
    return ((0,) * rep.dim, g)


def _vec_key(rep, i):
    return (tuple(1 if k == i else 0 for k in range(rep.dim)), rep.group.identity)


def _key_mul(rep, k1, k2):
    """Product of two PBW monomials in A, as {key: coeff}."""
    ck = ("kmul", k1, k2)
    cache = rep._cache
    if ck in cache:
        return cache[ck]
    f = rep.field
    a = SkewElem._raw(rep, {(k1[0], k1[1], 0): f.one})
    b = SkewElem._raw(rep, {(k2[0], k2[1], 0): f.one})
    res = {(m, g): c for (m, g, _), c in skew_multiply(a, b).terms.items()}
    cache[ck] = res
    return res


def _skew_from_keys(rep, d):
    return SkewElem._raw(rep, {(m, g, 0): c for (m, g), c in d.items()})


def _keys_from_skew(x: SkewElem):
    f = x.rep.field
    out = {}
    for (m, g, t), c in x.terms.items():
        _acc(out, (m, g), c, f)
    return out


def wedge_of_vectors(rep, vectors):
    """Expand v_1 ^ ... ^ v_j (vectors as coordinate tuples) in the basis of sorted wedges."""
    f = rep.field
    supports = [[(k, c) for k, c in enumerate(v) if c != 0] for v in vectors]
    out = {}
    for choice in itertools.product(*supports):
        idx = [k for k, _ in choice]
        if len(set(idx)) != len(idx):
            continue
        c = f.one
        for _, a in choice:
            c = f.mul(c, a)
        inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        _acc(out, tuple(sorted(idx)), f.mul(_sign(f, inversions), c), f)
    return out


def wedge_act(rep, g, wedge):
    """^g (v_{a_1} ^ ... ^ v_{a_j})."""
    ck = ("wedge", g, wedge)
    cache = rep._cache
    if ck not in cache:
        cache[ck] = wedge_of_vectors(rep, [rep.matrices[g].column(a) for a in wedge])
    return cache[ck]


def middle_basis(rep, i, j):
    """Middle-basis elements (gs, wedge) of X_{i,j}, in a fixed order."""
    n, m = rep.group.order, rep.dim
    for gs in itertools.product(range(n), repeat=i):
        for wedge in itertools.combinations(range(m), j):
            yield (gs, wedge)


def middle_basis_total(rep, n):
    for i in range(n, -1, -1):
        yield from middle_basis(rep, i, n - i)


def render_middle(rep, mid):
    gs, wedge = mid
    g = ", ".join(rep.group.names[x] for x in gs)
    w = " ^ ".join(rep.basis_names[k] for k in wedge)
    return f"({g}; {w})"


# ---------------------------------------------------------------------------
# chains on X


class XChain:
    """k-linear combination of basis elements left (x) gs (x) wedge (x) right of X."""

    __slots__ = ("rep", "terms")

    def __init__(self, rep, terms=None):
        self.rep = rep
        self.terms = terms or {}

    @classmethod
    def basis(cls, rep, gs, wedge, left=None, right=None, c=None):
        """1 (x) g_1 (x) .. (x) v_{a_1} ^ .. (x) 1, wedge given in any order (sign tracked)."""
        f = rep.field
        c = f.one if c is None else f(c)
        wedge = tuple(wedge)
        order = sorted(range(len(wedge)), key=lambda k: wedge[k])
        if len(set(wedge)) != len(wedge):
            return cls(rep)
        inversions = sum(1 for a in range(len(wedge)) for b in range(a + 1, len(wedge)) if wedge[a] > wedge[b])
        left = left or _one_key(rep)
        right = right or _one_key(rep)
        key = (left, tuple(gs), tuple(wedge[k] for k in order), right)
        return cls(rep, {key: f.mul(_sign(f, inversions), c)})

    def degree(self):
        ds = {len(gs) + len(w) for (_, gs, w, _) in self.terms}
        if len(ds) > 1:
            raise ValueError("mixed total degrees")
        return ds.pop() if ds else None

    def __add__(self, other):
        f = self.rep.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c, f)
        return XChain(self.rep, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        f = self.rep.field
        c = f(c)
        if c == 0:
            return XChain(self.rep)
        return XChain(self.rep, {k: f.mul(c, a) for k, a in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, XChain) and self.terms == other.terms

    def __repr__(self):
        return f"XChain({len(self.terms)} terms)"


def _d_middle(rep, gs, wedge):
    """d(1 (x) gs (x) wedge (x) 1) as a term dict."""
    ck = ("dX", gs, wedge)
    cache = rep._cache
    if ck in cache:
        return cache[ck]
    f, G = rep.field, rep.group
    one = _one_key(rep)
    i, j = len(gs), len(wedge)
    out = {}
    if i >= 1:
        _acc(out, (_group_key(rep, gs[0]), gs[1:], wedge, one), f.one, f)
        for l in range(1, i):
            merged = gs[:l - 1] + (G.mul(gs[l - 1], gs[l]),) + gs[l + 1:]
            _acc(out, (one, merged, wedge, one), _sign(f, l), f)
        last = _group_key(rep, gs[-1])
        for w, c in wedge_act(rep, gs[-1], wedge).items():
            _acc(out, (one, gs[:-1], w, last), f.mul(_sign(f, i), c), f)
    if j >= 1:
        prod = G.identity
        for g in gs:
            prod = G.mul(prod, g)
        for l in range(1, j + 1):
            s = _sign(f, i + 1 + l)
            a = wedge[l - 1]
            rest = wedge[:l - 1] + wedge[l:]
            for k, c in rep.action[prod][a].items():
                _acc(out, (_vec_key(rep, k), gs, rest, one), f.mul(s, c), f)
            _acc(out, (one, gs, rest, _vec_key(rep, a)), f.neg(s), f)
    cache[ck] = out
    return out


def _sandwich(rep, left, inner, right):
    """left * (terms with outer keys) * right for X-terms."""
    f = rep.field
    out = {}
    one = _one_key(rep)
    for (l, gs, w, r), c in inner.items():
        lefts = {l: f.one} if left == one else _key_mul(rep, left, l)
        rights = {r: f.one} if right == one else _key_mul(rep, r, right)
        for l2, a in lefts.items():
            for r2, b in rights.items():
                _acc(out, (l2, gs, w, r2), f.mul(c, f.mul(a, b)), f)
    return out


def differential(x: XChain) -> XChain:
    """d = d^h + d^v on chains of total degree 1, 2 or 3 (and 4 for internal checks)."""
    rep = x.rep
    f = rep.field
    out = {}
    for (l, gs, w, r), c in x.terms.items():
        n = len(gs) + len(w)
        if n == 0:
            raise ValueError("use augmentation() in degree 0")
        if n > 4:
            raise ValueError("X is implemented in total degree <= 4")
        for k, a in _sandwich(rep, l, _d_middle(rep, gs, w), r).items():
            _acc(out, k, f.mul(c, a), f)
    return XChain(rep, out)


def augmentation(x: XChain) -> SkewElem:
    """X_0 = A (x) A -> A, multiplication."""
    rep = x.rep
    f = rep.field
    out = {}
    for (l, gs, w, r), c in x.terms.items():
        if gs or w:
            raise ValueError("augmentation is defined on X_0")
        for k, a in _key_mul(rep, l, r).items():
            _acc(out, k, f.mul(c, a), f)
    return _skew_from_keys(rep, out)


# ---------------------------------------------------------------------------
# bar chains


class BarChain:
    """Element of A^{(x)(n+2)}; each term is a tuple of n+2 PBW monomial keys."""

    __slots__ = ("rep", "terms")

    def __init__(self, rep, terms=None):
        self.rep = rep
        self.terms = terms or {}

    @classmethod
    def from_factors(cls, rep, factors, c=None):
        """1 (x) a_1 (x) .. (x) a_n (x) 1 with each a_k given as {key: coeff}."""
        f = rep.field
        c = f.one if c is None else c
        one = {_one_key(rep): f.one}
        out = {}
        for choice in itertools.product(*[list(x.items()) for x in [one] + list(factors) + [one]]):
            coeff = c
            for _, a in choice:
                coeff = f.mul(coeff, a)
            _acc(out, tuple(k for k, _ in choice), coeff, f)
        return cls(rep, out)

    def __add__(self, other):
        f = self.rep.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c, f)
        return BarChain(self.rep, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        f = self.rep.field
        c = f(c)
        return BarChain(self.rep, {k: f.mul(c, a) for k, a in self.terms.items()} if c != 0 else {})

    def sandwich(self, left, right):
        rep, f = self.rep, self.rep.field
        one = _one_key(rep)
        out = {}
        for key, c in self.terms.items():
            lefts = {key[0]: f.one} if left == one else _key_mul(rep, left, key[0])
            rights = {key[-1]: f.one} if right == one else _key_mul(rep, key[-1], right)
            for l2, a in lefts.items():
                for r2, b in rights.items():
                    _acc(out, (l2,) + key[1:-1] + (r2,), f.mul(c, f.mul(a, b)), f)
        return BarChain(rep, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BarChain) and self.terms == other.terms


def bar_differential(x: BarChain) -> BarChain:
    """delta(a_0|..|a_{n+1}) = sum_i (-1)^i a_0|..|a_i a_{i+1}|..|a_{n+1}."""
    rep, f = x.rep, x.rep.field
    out = {}
    for key, c in x.terms.items():
        for i in range(len(key) - 1):
            s = f.mul(_sign(f, i), c)
            for k, a in _key_mul(rep, key[i], key[i + 1]).items():
                _acc(out, key[:i] + (k,) + key[i + 2:], f.mul(s, a), f)
    return BarChain(rep, out)


# ---------------------------------------------------------------------------
# chain maps


def _vec_factor(rep, vec):
    return {_vec_key(rep, k): c for k, c in enumerate(vec) if c != 0}


def _phi_middle(rep, gs, wedge):
    f, G = rep.field, rep.group
    gk = lambda g: {_group_key(rep, g): f.one}
    vk = lambda i: {_vec_key(rep, i): f.one}
    act = lambda g, i: _vec_factor(rep, rep.matrices[g].column(i))
    i, j = len(gs), len(wedge)
    B = lambda *fs, c=None: BarChain.from_factors(rep, fs, c)
    if j == 0:
        return B(*[gk(g) for g in gs])
    if (i, j) == (0, 1):
        return B(vk(wedge[0]))
    if (i, j) == (1, 1):
        g, v = gs[0], wedge[0]
        return B(gk(g), vk(v)) - B(act(g, v), gk(g))
    if (i, j) == (0, 2):
        v, w = wedge
        return B(vk(v), vk(w)) - B(vk(w), vk(v))
    if (i, j) == (2, 1):
        g, h = gs
        v = wedge[0]
        return (B(gk(g), gk(h), vk(v)) - B(gk(g), act(h, v), gk(h))
                + B(act(G.mul(g, h), v), gk(g), gk(h)))
    if (i, j) == (1, 2):
        g = gs[0]
        v, w = wedge
        return (B(gk(g), vk(v), vk(w)) - B(gk(g), vk(w), vk(v))
                + B(act(g, v), act(g, w), gk(g)) - B(act(g, w), act(g, v), gk(g))
                - B(act(g, v), gk(g), vk(w)) + B(act(g, w), gk(g), vk(v)))
    if (i, j) == (0, 3):
        out = BarChain(rep)
        for perm in itertools.permutations(range(3)):
            inv = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
            out = out + B(*[vk(wedge[p]) for p in perm], c=_sign(f, inv))
        return out
    raise ValueError(f"phi is implemented in total degree <= 3, got bidegree {(i, j)}")


def phi(x: XChain) -> BarChain:
    """The chain map X -> bar resolution (phi_0 .. phi_3), extended A-bilinearly."""
    rep = x.rep
    out = BarChain(rep)
    for (l, gs, w, r), c in x.terms.items():
        ck = ("phi", gs, w)
        if ck not in rep._cache:
            rep._cache[ck] = _phi_middle(rep, gs, w)
        out = out + rep._cache[ck].sandwich(l, r).scale(c)
    return out


def _slice_kind(rep, key):
    mono, g = key
    d = sum(mono)
    if d == 0:
        return ("g", g)
    if d == 1 and g == rep.group.identity:
        return ("v", mono.index(1))
    raise SliceError(f"{_skew_from_keys(rep, {key: rep.field.one}).render()} is outside span(V u G)")


def _psi2_pair(rep, a, b):
    """psi_2 on 1 (x) a (x) b (x) 1 for slice basis letters a, b: a middle element or None."""
    (ka, xa), (kb, xb) = a, b
    if ka == "g" and kb == "g":
        return ((xa, xb), ())
    if ka == "g" and kb == "v":
        return ((xa,), (xb,))
    if ka == "v" and kb == "g":
        return None
    if xa < xb:
        return ((), (xa, xb))
    return None


def psi2(x: BarChain) -> XChain:
    """psi_2 on bar 2-chains whose middle factors lie in span(V u G)."""
    rep, f = x.rep, x.rep.field
    out = {}
    for key, c in x.terms.items():
        if len(key) != 4:
            raise ValueError("psi2 takes bar 2-chains")
        mid = _psi2_pair(rep, _slice_kind(rep, key[1]), _slice_kind(rep, key[2]))
        if mid is not None:
            _acc(out, (key[0], mid[0], mid[1], key[3]), c, f)
    return XChain(rep, out)


# ---------------------------------------------------------------------------
# cochains


class Cochain:
    """A-valued cochain on X_n given on middle-basis elements; zero elsewhere."""

    def __init__(self, rep, n, values=None, degree=None):
        self.rep = rep
        self.n = n
        self.values = {k: v for k, v in (values or {}).items() if v}
        self.degree = degree

    def value(self, mid) -> SkewElem:
        return self.values.get(mid, SkewElem.zero(self.rep))

    def evaluate(self, x: XChain) -> SkewElem:
        rep, f = self.rep, self.rep.field
        out = {}
        for (l, gs, w, r), c in x.terms.items():
            if len(gs) + len(w) != self.n:
                raise ValueError(f"cochain of degree {self.n} evaluated on a chain of degree {len(gs) + len(w)}")
            val = self.values.get((gs, w))
            if not val:
                continue
            for k, a in _keys_from_skew(val).items():
                for k1, b in _key_mul(rep, l, k).items():
                    for k2, e in _key_mul(rep, k1, r).items():
                        _acc(out, k2, f.mul(c, f.mul(a, f.mul(b, e))), f)
        return _skew_from_keys(rep, out)

    def __add__(self, other):
        keys = set(self.values) | set(other.values)
        return type(self)(self.rep, self.n, {k: self.value(k) + other.value(k) for k in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return type(self)(self.rep, self.n, {k: v.scale(c) for k, v in self.values.items()}, self.degree)

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.n == other.n and self.values == other.values


class Cochain2(Cochain):
    def __init__(self, rep, n=2, values=None, degree=None):
        super().__init__(rep, 2, values, degree)


class Cochain3(Cochain):
    def __init__(self, rep, n=3, values=None, degree=None):
        super().__init__(rep, 3, values, degree)


def extend_cochain(param) -> Cochain2:
    """lambda -> degree -1 cochain on X_{1,1}; kappa -> degree -2 cochain on X_{0,2}."""
    rep = param.rep
    if isinstance(param, LambdaParam):
        vals = {((g,), (i,)): param.skew_value(g, i)
                for g in range(rep.group.order) for i in range(rep.dim)}
        return Cochain2(rep, values=vals, degree=-1)
    if isinstance(param, KappaParam):
        vals = {((), (i, j)): param.skew_value(i, j)
                for i in range(rep.dim) for j in range(i + 1, rep.dim)}
        return Cochain2(rep, values=vals, degree=-2)
    raise TypeError("extend_cochain takes a LambdaParam or a KappaParam")


def coboundary(c: Cochain) -> Cochain:
    """(d*c)(x) = c(d x) on every middle-basis element of the next degree."""
    rep = c.rep
    vals = {}
    for mid in middle_basis_total(rep, c.n + 1):
        x = XChain.basis(rep, *mid)
        vals[mid] = c.evaluate(differential(x))
    cls = Cochain3 if c.n == 2 else Cochain
    if cls is Cochain:
        return Cochain(rep, c.n + 1, vals, c.degree)
    return Cochain3(rep, values=vals, degree=c.degree)


class BarSliceCochain:
    """mu = psi_2^*(c) on span(V u G) (x) span(V u G), kG-bilinear."""

    def __init__(self, cochain: Cochain2):
        self.cochain = cochain
        self.rep = cochain.rep

    def __call__(self, a: SkewElem, b: SkewElem) -> SkewElem:
        rep, f = self.rep, self.rep.field
        out = SkewElem.zero(rep)
        for ka, ca in _keys_from_skew(a).items():
            sa = _slice_kind(rep, ka)
            for kb, cb in _keys_from_skew(b).items():
                mid = _psi2_pair(rep, sa, _slice_kind(rep, kb))
                if mid is not None:
                    out = out + self.cochain.value(mid).scale(f.mul(ca, cb))
        return out


def _circle(mu1, mu2, a, b, c):
    """mu1(mu2(a (x) b) (x) c) - mu1(a (x) mu2(b (x) c))."""
    return mu1(mu2(a, b), c) - mu1(a, mu2(b, c))


def gerstenhaber_bracket(c1: Cochain2, c2: Cochain2) -> Cochain3:
    """[c1, c2] = phi_3^*[psi_2^* c1, psi_2^* c2] on the middle basis of X_3."""
    rep = c1.rep
    mu1, mu2 = BarSliceCochain(c1), BarSliceCochain(c2)
    vals = {}
    for mid in middle_basis_total(rep, 3):
        bar = phi(XChain.basis(rep, *mid))
        out = SkewElem.zero(rep)
        for key, coeff in bar.terms.items():
            a, b, c = (_skew_from_keys(rep, {k: rep.field.one}) for k in key[1:4])
            val = _circle(mu1, mu2, a, b, c) + _circle(mu2, mu1, a, b, c)
            if not val:
                continue
            left = _skew_from_keys(rep, {key[0]: rep.field.one})
            right = _skew_from_keys(rep, {key[4]: rep.field.one})
            out = out + skew_multiply(skew_multiply(left, val), right).scale(coeff)
        vals[mid] = out
    return Cochain3(rep, values=vals)


# ---------------------------------------------------------------------------
# homological PBW test


@dataclass
class IdentityResult:
    name: str
    passed: bool = True
    witness: tuple = None
    residual: SkewElem = None
    failures: int = 0


@dataclass
class HomologicalReport:
    rep: object
    results: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        return next(r for r in self.results if r.name == name)

    def lines(self):
        out = []
        for r in self.results:
            if r.passed:
                out.append(f"{r.name}: pass")
            else:
                out.append(f"{r.name}: FAIL at {render_middle(self.rep, r.witness)}; "
                           f"residual {r.residual.render()}; {r.failures} failing basis elements")
        out.append("verdict: " + ("PBW" if self.passed else "not PBW"))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _compare(name, c: Cochain, rep):
    res = IdentityResult(name)
    for mid in middle_basis_total(rep, 3):
        val = c.value(mid)
        if val:
            if res.passed:
                res.passed, res.witness, res.residual = False, mid, val
            res.failures += 1
    return res


def check_homological(lam: LambdaParam, kappa: KappaParam) -> HomologicalReport:
    """d*(lambda) = 0, [lambda, lambda] = 2 d*(kappa) and [lambda, kappa] = 0 on X_3."""
    rep = lam.rep
    cl, ck = extend_cochain(lam), extend_cochain(kappa)
    dl, dk = coboundary(cl), coboundary(ck)
    ll = gerstenhaber_bracket(cl, cl)
    lk = gerstenhaber_bracket(cl, ck)
    report = HomologicalReport(rep)
    report.results.append(_compare("d*(lambda) = 0", dl, rep))
    report.results.append(_compare("[lambda,lambda] = 2 d*(kappa)", ll - dk.scale(2), rep))
    report.results.append(_compare("[lambda,kappa] = 0", lk, rep))
    return report


# ---------------------------------------------------------------------------
# lifting to a deformation


@dataclass
class Deformation:
    system: object
    mode: str

    def mu(self, j, a, b):
        from .rewriting import extract_mu
        return extract_mu(self.system, j, a, b)

    def recovered_lambda(self) -> LambdaParam:
        from .rewriting import lambda_from_mu
        rep = self.system.rep
        if self.mode == "collapsed":
            return LambdaParam.zero(rep)
        table = [[lambda_from_mu(self.system, g, i).to_ga() for i in range(rep.dim)]
                 for g in range(rep.group.order)]
        return LambdaParam(rep, table)

    def recovered_kappa(self) -> KappaParam:
        from .rewriting import kappa_from_mu
        rep = self.system.rep
        return KappaParam(rep, {(i, j): kappa_from_mu(self.system, i, j).to_ga()
                                for i in range(rep.dim) for j in range(i + 1, rep.dim)})


def lift_to_deformation(lam: LambdaParam, kappa: KappaParam, mode="graded") -> Deformation:
    """The t-graded algebra H_{lambda,kappa,t} with its multiplication maps.

    ``mode="collapsed"`` renames t^2 to t and is only defined for lambda = 0.
    """
    from .errors import NotConfluentError
    from .rewriting import ReductionSystem
    if mode not in ("graded", "collapsed"):
        raise ValueError("mode must be 'graded' or 'collapsed'")
    if mode == "collapsed" and not lam.is_zero():
        raise PreconditionError("the collapsed lift needs lambda = 0")
    if not check_homological(lam, kappa).passed:
        raise PreconditionError("the homological PBW conditions fail")
    sys = ReductionSystem(lam.rep, lam, kappa, mode)
    if not sys.confluent:
        raise NotConfluentError("the t-graded rewriting system is not confluent")
    return Deformation(sys, mode)


# ---------------------------------------------------------------------------
# self-checks of the resolution and the chain maps


@dataclass
class InfraResult:
    name: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)   # middle-basis elements

    @property
    def passed(self):
        return not self.failures


def check_infrastructure(rep, max_degree=3):
    """d o d = 0, d phi = phi d and psi_2 phi_2 = id on every middle-basis element.

    Returns a list of InfraResult; d o d is checked up to total degree
    max_degree + 1, the chain-map identities up to max_degree.
    """
    dd = InfraResult("d o d = 0")
    comm = InfraResult("d phi = phi d")
    psi = InfraResult("psi_2 phi_2 = id")
    for n in range(1, max_degree + 2):
        for mid in middle_basis_total(rep, n):
            x = XChain.basis(rep, *mid)
            dx = differential(x)
            dd.checked += 1
            if n == 1:
                bad = bool(augmentation(dx))
            else:
                bad = bool(differential(dx))
            if bad:
                dd.failures.append(mid)
            if n > max_degree:
                continue
            comm.checked += 1
            if bar_differential(phi(x)) != phi(dx):
                comm.failures.append(mid)
            if n == 2:
                psi.checked += 1
                if psi2(phi(x)) != x:
                    psi.failures.append(mid)
    return [dd, comm, psi]


def _monomials(rep, max_deg):
    for d in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(rep.dim), d):
            yield tuple(combo.count(i) for i in range(rep.dim))


def verify_mu_extraction(defo: Deformation, lam: LambdaParam, kappa: KappaParam, max_degree=3):
    """Recovery of lambda and kappa from mu_1, mu_2 and homogeneity of every mu_j.

    Homogeneity is checked on all pairs of PBW monomials a, b with
    deg a + deg b <= max_degree and every j that can occur.
    """
    from .rewriting import extract_mu
    sys = defo.system
    rep = sys.rep
    G = rep.group
    lam_res = InfraResult("mu_1(g, v) - mu_1(^g v, g) = lambda(g, v)")
    rec = defo.recovered_lambda()
    for g in range(G.order):
        for i in range(rep.dim):
            lam_res.checked += 1
            if rec.value(g, i) != lam.value(g, i):
                lam_res.failures.append(((g,), (i,)))
    kap_name = "mu_1(v, w) - mu_1(w, v) = kappa(v, w)" if defo.mode == "collapsed" \
        else "mu_2(v, w) - mu_2(w, v) = kappa(v, w)"
    kap_res = InfraResult(kap_name)
    reck = defo.recovered_kappa()
    for i in range(rep.dim):
        for j in range(i + 1, rep.dim):
            kap_res.checked += 1
            if reck.value(i, j) != kappa.value(i, j):
                kap_res.failures.append(((), (i, j)))
    out = [lam_res, kap_res]
    if defo.mode == "graded":
        vv = InfraResult("mu_1 vanishes on V (x) V")
        for i in range(rep.dim):
            for j in range(rep.dim):
                vv.checked += 1
                a, b = SkewElem.basis_vector(rep, i), SkewElem.basis_vector(rep, j)
                if extract_mu(sys, 1, a, b):
                    vv.failures.append(((), (i, j)))
        out.append(vv)
    weight = "j" if sys.t_weight == 1 else f"{sys.t_weight}j"
    hom = InfraResult(f"mu_j homogeneous of degree -{weight}")
    monos = list(_monomials(rep, max_degree))
    for ma in monos:
        for mb in monos:
            if sum(ma) + sum(mb) > max_degree:
                continue
            for g in range(G.order):
                for h in range(G.order):
                    a = SkewElem.monomial(rep, ma, g)
                    b = SkewElem.monomial(rep, mb, h)
                    for j in range(1, (sum(ma) + sum(mb)) // sys.t_weight + 1):
                        hom.checked += 1
                        try:
                            extract_mu(sys, j, a, b, check=False)
                        except AssertionError:
                            hom.failures.append(((g, h), ma + mb))
    out.append(hom)
    return out
