"""Finite groups, their linear actions on V, and the group algebra kG."""
from __future__ import annotations

from collections import deque
from typing import Sequence

from .errors import ClosureError, GroupMismatchError, NotAGroupError
from .field import Field, FieldScalar
from .matrix import Matrix

IDENTITY_NAME = "e"


class FiniteGroup:
    """A group given by its multiplication table on indices ``0..n-1``.

    ``table[a][b]`` is the index of ``a*b``.  Element names are used only for
    text input and output.
    """

    def __init__(self, table, names=None, *, verify=True):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise NotAGroupError("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for r in table for x in r):
            raise NotAGroupError("table entry out of range")
        self.table = table
        self.order = n
        ident = [a for a in range(n) if all(table[a][b] == b and table[b][a] == b for b in range(n))]
        if len(ident) != 1:
            raise NotAGroupError("table has no two-sided identity")
        self.identity = ident[0]
        inv = []
        for a in range(n):
            bs = [b for b in range(n) if table[a][b] == self.identity]
            if len(bs) != 1 or table[bs[0]][a] != self.identity:
                raise NotAGroupError(f"element {a} has no inverse")
            inv.append(bs[0])
        self.inverse = tuple(inv)
        if verify:
            for a in range(n):
                ta = table[a]
                for b in range(n):
                    tab = table[ta[b]]
                    tb = table[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise NotAGroupError(f"table is not associative at ({a},{b},{c})")
        if names is None:
            names = [IDENTITY_NAME if a == self.identity else f"g{a}" for a in range(n)]
        names = tuple(names)
        if len(names) != n or len(set(names)) != n:
            raise NotAGroupError("element names must be distinct, one per element")
        self.names = names
        self._index = {nm: i for i, nm in enumerate(names)}
        self._classes = None

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def conj(self, h, g):
        """h g h^-1"""
        return self.table[self.table[h][g]][self.inverse[h]]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown group element {name!r}") from None

    def power(self, g, k):
        x = self.identity
        for _ in range(k):
            x = self.table[x][g]
        return x

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    @property
    def conjugacy_classes(self):
        if self._classes is None:
            seen = set()
            classes = []
            for g in range(self.order):
                if g in seen:
                    continue
                cls = sorted({self.conj(h, g) for h in range(self.order)})
                seen.update(cls)
                classes.append(tuple(cls))
            self._classes = tuple(classes)
        return self._classes

    def class_of(self, g):
        return next(c for c in self.conjugacy_classes if g in c)

    def generators(self):
        """A small generating set found greedily (indices)."""
        gens = []
        span = {self.identity}
        for g in range(self.order):
            if g in span:
                continue
            gens.append(g)
            span = self._generated(gens)
            if len(span) == self.order:
                break
        return gens

    def _generated(self, gens):
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return self is other or (isinstance(other, FiniteGroup) and self.table == other.table)

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


class Representation:
    """A group together with one invertible matrix per element.

    ``generators`` optionally records the named generators the group was
    closed from, so that instances render back the way they were written.
    """

    def __init__(self, group: FiniteGroup, matrices: Sequence[Matrix], basis_names=None,
                 generators=None, *, verify=True):
        if len(matrices) != group.order:
            raise NotAGroupError("need one matrix per group element")
        field = matrices[0].field
        m = matrices[0].nrows
        for M in matrices:
            if M.field != field or M.shape != (m, m):
                raise NotAGroupError("action matrices must be square, same size, same field")
        if matrices[group.identity] != Matrix.identity(field, m):
            raise NotAGroupError("identity must act as the identity matrix")
        if verify:
            for M in matrices:
                if not M.is_invertible():
                    raise NotAGroupError("action matrix is singular")
            for a in range(group.order):
                for b in range(group.order):
                    if matrices[a] @ matrices[b] != matrices[group.table[a][b]]:
                        raise NotAGroupError(f"rho({a})rho({b}) != rho({a}*{b})")
        self.group = group
        self.field = field
        self.dim = m
        self.matrices = tuple(matrices)
        if basis_names is None:
            basis_names = ["v", "w"] if m == 2 else [f"v{i + 1}" for i in range(m)]
        self.basis_names = tuple(basis_names)
        if len(self.basis_names) != m or len(set(self.basis_names)) != m:
            raise ValueError("need one distinct name per basis vector")
        if set(self.basis_names) & set(group.names):
            raise ValueError("basis names clash with group element names")
        self.generators = tuple(generators) if generators else None
        # action[g][i] = sparse image of v_i: {j: coeff}, i.e. column i of rho(g)
        self.action = tuple(
            tuple({j: M.rows[j][i] for j in range(m) if M.rows[j][i] != 0} for i in range(m))
            for M in self.matrices)
        self._cache = {}

    def act(self, g, vec):
        """^g vec for vec a tuple of raw coordinates."""
        return self.matrices[g].apply(vec)

    def basis_vector(self, i):
        f = self.field
        return tuple(f.one if j == i else f.zero for j in range(self.dim))

    def basis_index(self, name):
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis vector {name!r}") from None

    def same_as(self, other) -> bool:
        return self is other or (self.field == other.field and self.group == other.group
                                 and self.matrices == other.matrices)

    def __repr__(self):
        return f"Representation(|G|={self.group.order}, dim={self.dim}, field={self.field})"


def _word_name(word, gen_names):
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        k = j - i
        nm = gen_names[word[i]]
        parts.append(nm if k == 1 else f"{nm}^{k}")
        i = j
    return ".".join(parts)


def close_generators(mats: Sequence[Matrix], cap: int = 1024, names=None, basis_names=None):
    """Close matrix generators under multiplication.

    Returns ``(group, representation)``; element names are breadth-first words
    in the generator names.  Raises :class:`ClosureError` past ``cap`` elements.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one generator")
    field = mats[0].field
    m = mats[0].nrows
    for M in mats:
        if M.field != field or M.shape != (m, m):
            raise ValueError("generators must be square, same size, same field")
        if not M.is_invertible():
            raise ClosureError(f"singular generator {M!r}")
    if names is None:
        names = ["g"] if len(mats) == 1 else [f"s{i + 1}" for i in range(len(mats))]
    ident = Matrix.identity(field, m)
    elements = [ident]
    words = [()]
    index = {ident: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, S in enumerate(mats):
            Y = elements[x] @ S
            if Y not in index:
                if len(elements) >= cap:
                    raise ClosureError(f"closure exceeds {cap} elements (infinite or too large group)")
                index[Y] = len(elements)
                elements.append(Y)
                words.append(words[x] + (s,))
                queue.append(index[Y])
    n = len(elements)
    # table[a][b] via generator words of b: a*b = (((a*s1)*s2)...)
    right = [[index[elements[a] @ S] for S in mats] for a in range(n)]
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            x = a
            for s in words[b]:
                x = right[x][s]
            row.append(x)
        table.append(row)
    el_names = [IDENTITY_NAME if not w else _word_name(w, names) for w in words]
    group = FiniteGroup(table, el_names, verify=False)
    gen_idx = [(names[s], index[S]) for s, S in enumerate(mats)]
    rep = Representation(group, elements, basis_names=basis_names, generators=gen_idx, verify=False)
    return group, rep


def fixed_space(rep: Representation, g: int):
    """Basis of V^g (kernel of rho(g) - I) and its codimension."""
    if not 0 <= g < rep.group.order:
        raise IndexError(f"group element {g} out of range")
    key = ("fixed", g)
    if key not in rep._cache:
        T = rep.matrices[g] - Matrix.identity(rep.field, rep.dim)
        basis = T.kernel()
        rep._cache[key] = (basis, rep.dim - len(basis))
    return rep._cache[key]


def classify_element(rep: Representation, g: int) -> str:
    """One of "identity-action", "reflection", "codim-2", "other"."""
    _, codim = fixed_space(rep, g)
    return {0: "identity-action", 1: "reflection", 2: "codim-2"}.get(codim, "other")


def image_of_difference(rep: Representation, g: int):
    """Column space of rho(g) - I, as a list of spanning vectors in echelon form."""
    T = rep.matrices[g] - Matrix.identity(rep.field, rep.dim)
    red, piv = T.transpose().rref()
    return [tuple(r) for r in red[:len(piv)]]


# ---------------------------------------------------------------------------
# group algebra kG


def _ga_mul_raw(group: FiniteGroup, field: Field, x: dict, y: dict) -> dict:
    out = {}
    p = field.char
    table = group.table
    for g, a in x.items():
        row = table[g]
        for h, b in y.items():
            k = row[h]
            v = out.get(k, 0) + a * b
            if p:
                v %= p
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
    return out


def _ga_add_raw(field: Field, x: dict, y: dict, scale=None) -> dict:
    out = dict(x)
    for g, b in y.items():
        if scale is not None:
            b = field.mul(scale, b)
        v = field.add(out.get(g, field.zero), b)
        if v == 0:
            out.pop(g, None)
        else:
            out[g] = v
    return out


class GroupAlgebraElem:
    """Sparse element of kG: group index -> nonzero raw coefficient."""

    __slots__ = ("group", "field", "coeffs")

    def __init__(self, group: FiniteGroup, field: Field, coeffs=None):
        self.group = group
        self.field = field
        clean = {}
        for g, c in (coeffs or {}).items():
            if not 0 <= g < group.order:
                raise IndexError(f"group element {g} out of range")
            c = field(c)
            if c != 0:
                clean[g] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, group, field, coeffs):
        x = cls.__new__(cls)
        x.group = group
        x.field = field
        x.coeffs = coeffs
        return x

    @classmethod
    def zero(cls, group, field):
        return cls._raw(group, field, {})

    @classmethod
    def basis(cls, group, field, g, c=None):
        c = field.one if c is None else field(c)
        return cls._raw(group, field, {g: c} if c != 0 else {})

    @classmethod
    def one(cls, group, field):
        return cls.basis(group, field, group.identity)

    def _compat(self, other):
        if not isinstance(other, GroupAlgebraElem):
            return False
        if not (other.group is self.group or other.group == self.group):
            raise GroupMismatchError("group algebra elements over different groups")
        if other.field != self.field:
            from .errors import FieldMismatchError
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        return True

    def coeff(self, g):
        return self.coeffs.get(g, self.field.zero)

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def __add__(self, other):
        if not self._compat(other):
            return NotImplemented
        return GroupAlgebraElem._raw(self.group, self.field, _ga_add_raw(self.field, self.coeffs, other.coeffs))

    def __sub__(self, other):
        if not self._compat(other):
            return NotImplemented
        f = self.field
        return GroupAlgebraElem._raw(self.group, f, _ga_add_raw(f, self.coeffs, other.coeffs, f.neg(f.one)))

    def __neg__(self):
        f = self.field
        return GroupAlgebraElem._raw(self.group, f, {g: f.neg(c) for g, c in self.coeffs.items()})

    def scale(self, c):
        f = self.field
        c = f(c)
        if c == 0:
            return GroupAlgebraElem.zero(self.group, f)
        return GroupAlgebraElem._raw(self.group, f, {g: f.mul(c, a) for g, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldScalar)) or type(other).__name__ == "Fraction":
            return self.scale(other)
        return ga_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldScalar)) or type(other).__name__ == "Fraction":
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        return self.field == other.field and self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def render(self) -> str:
        return render_ga(self.group, self.field, self.coeffs)

    def __repr__(self):
        return f"GroupAlgebraElem({self.render()})"


def render_ga(group: FiniteGroup, field: Field, coeffs: dict) -> str:
    if not coeffs:
        return "0"
    parts = []
    for g in sorted(coeffs):
        parts.append(_render_term(field, coeffs[g], None if g == group.identity else group.names[g]))
    return _join_terms(parts)


def _render_term(field: Field, c, factor):
    """Render c*factor; returns (sign, body)."""
    neg = False
    if not field.char and c < 0:
        neg, c = True, -c
    cs = field.render(c)
    if factor is None:
        body = cs
    elif cs == "1":
        body = factor
    else:
        body = f"{cs}*{factor}"
    return neg, body


def _join_terms(parts):
    out = ""
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def ga_multiply(x: GroupAlgebraElem, y: GroupAlgebraElem) -> GroupAlgebraElem:
    """Convolution product in kG."""
    if not isinstance(x, GroupAlgebraElem) or not isinstance(y, GroupAlgebraElem):
        raise TypeError("ga_multiply expects two GroupAlgebraElem values")
    x._compat(y)
    return GroupAlgebraElem._raw(x.group, x.field, _ga_mul_raw(x.group, x.field, x.coeffs, y.coeffs))
