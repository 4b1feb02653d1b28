"""Plain-text instance files.

An instance file has bracketed sections::

    [field]
    char 2
    [group]
    generator g
    1 1
    0 1
    [basis]
    v w
    [lambda]
    lambda g w = 1
    [kappa]
    kappa v w = g
    [map]
    source corpus:cyclic-p2
    image v = v + g
    [meta]
    name = example
    expect.check = pass

The field line is ``char p`` or ``rationals``.  Each generator is followed
by its matrix rows.  The optional [map] section describes a map from another
instance into this one.  Lines starting with ``#`` are comments.
Groups may also be given by ``elements`` / ``table`` / ``matrix`` lines.
Expressions are sums of terms ``c*v^k*w*h`` with the group element last;
``e`` names the identity.  Rendering is deterministic and parse(render(x))
renders back byte for byte.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .errors import ParseError
from .field import GF, Q
from .groups import FiniteGroup, Representation, close_generators
from .matrix import Matrix
from .params import GeneralKappa, KappaParam, LambdaParam
from .skew import SkewElem

SECTIONS = ("field", "group", "basis", "lambda", "kappa", "map", "meta")
META_KEYS = ("name", "description")


@dataclass
class Instance:
    rep: Representation
    lam: LambdaParam
    kappa: object                     # KappaParam or GeneralKappa
    name: str = None
    description: str = None
    expect: dict = dc_field(default_factory=dict)
    map_source: str = None
    map_images: dict = dc_field(default_factory=dict)   # source letter name -> SkewElem here

    @property
    def field(self):
        return self.rep.field

    @property
    def group(self):
        return self.rep.group

    @property
    def general(self):
        return isinstance(self.kappa, GeneralKappa)


# ---------------------------------------------------------------------------
# expressions

_SCALAR = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_POWER = re.compile(r"^(.+)\^(\d+)$")


def _split_terms(expr):
    expr = expr.strip()
    if not expr:
        raise ValueError("empty expression")
    terms = []
    sign = 1
    buf = ""
    depth_start = True
    for ch in expr:
        if ch in "+-" and not depth_start and not buf.rstrip().endswith(("*", "/", "^")):
            terms.append((sign, buf.strip()))
            sign = 1 if ch == "+" else -1
            buf = ""
            depth_start = True
            continue
        if ch in "+-" and depth_start and not buf.strip():
            sign = sign * (1 if ch == "+" else -1)
            continue
        buf += ch
        if not ch.isspace():
            depth_start = False
    terms.append((sign, buf.strip()))
    for _, t in terms:
        if not t:
            raise ValueError(f"dangling operator in {expr!r}")
    return terms


def parse_expr(text, rep: Representation, allow_vectors=True) -> SkewElem:
    """Parse a sum of terms into a t-free SkewElem."""
    f, G, m = rep.field, rep.group, rep.dim
    out = SkewElem.zero(rep)
    try:
        terms = _split_terms(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    for sign, term in terms:
        coeff = f.one if sign > 0 else f.neg(f.one)
        mono = [0] * m
        g = None
        for fac in (x.strip() for x in term.split("*")):
            if not fac:
                raise ParseError(f"empty factor in {term!r}")
            if _SCALAR.match(fac):
                coeff = f.mul(coeff, f.parse(fac))
                continue
            if fac in G._index:
                if g is not None:
                    raise ParseError(f"two group elements in term {term!r}")
                g = G._index[fac]
                continue
            pm = _POWER.match(fac)
            name, k = (pm.group(1), int(pm.group(2))) if pm else (fac, 1)
            if name in rep.basis_names:
                if not allow_vectors:
                    raise ParseError(f"vector {name!r} not allowed here (value must lie in kG)")
                if g is not None:
                    raise ParseError(f"group element must come last in term {term!r}")
                mono[rep.basis_names.index(name)] += k
                continue
            raise ParseError(f"unknown symbol {fac!r}")
        g = G.identity if g is None else g
        out = out + SkewElem.monomial(rep, mono, g, coeff)
    return out


# ---------------------------------------------------------------------------
# parameters


def render_params(lam: LambdaParam, kappa) -> str:
    """The [lambda] and [kappa] sections, in group-index then basis-index order."""
    rep = lam.rep
    lines = ["[lambda]"]
    for g in range(rep.group.order):
        for i in range(rep.dim):
            val = lam.value(g, i)
            if val:
                lines.append(f"lambda {rep.group.names[g]} {rep.basis_names[i]} = {val.render()}")
    lines.append("")
    lines.append("[kappa]")
    for i in range(rep.dim):
        for j in range(i + 1, rep.dim):
            val = kappa.value(i, j)
            if val:
                lines.append(f"kappa {rep.basis_names[i]} {rep.basis_names[j]} = {val.render()}")
    return "\n".join(lines) + "\n"


def _param_lines(lam_lines, kap_lines, rep):
    lam_entries = {}
    for lineno, line in lam_lines:
        mt = re.match(r"^lambda\s+(\S+)\s+(\S+)\s*=\s*(.+)$", line)
        if not mt:
            raise ParseError("expected 'lambda <group element> <basis vector> = <expr>'", lineno)
        gname, vname, expr = mt.groups()
        if gname not in rep.group._index:
            raise ParseError(f"unknown group element {gname!r}", lineno)
        if vname not in rep.basis_names:
            raise ParseError(f"unknown basis vector {vname!r}", lineno)
        key = (rep.group._index[gname], rep.basis_names.index(vname))
        if key in lam_entries:
            raise ParseError(f"lambda {gname} {vname} given twice", lineno)
        try:
            lam_entries[key] = parse_expr(expr, rep, allow_vectors=False).to_ga()
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    kap_entries = {}
    general = False
    for lineno, line in kap_lines:
        mt = re.match(r"^kappa\s+(\S+)\s+(\S+)\s*=\s*(.+)$", line)
        if not mt:
            raise ParseError("expected 'kappa <basis vector> <basis vector> = <expr>'", lineno)
        a, b, expr = mt.groups()
        for nm in (a, b):
            if nm not in rep.basis_names:
                raise ParseError(f"unknown basis vector {nm!r}", lineno)
        i, j = rep.basis_names.index(a), rep.basis_names.index(b)
        if i == j:
            raise ParseError("kappa(v, v) is zero for an alternating kappa", lineno)
        key = (min(i, j), max(i, j))
        if key in kap_entries:
            raise ParseError(f"kappa {a} {b} conflicts with an earlier entry (kappa is alternating)", lineno)
        try:
            val = parse_expr(expr, rep, allow_vectors=True)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        if val.degree() > 1:
            raise ParseError("kappa values have degree at most 1", lineno)
        if val.degree() == 1:
            general = True
        kap_entries[key] = val if i < j else -val
    lam = LambdaParam.from_entries(rep, lam_entries)
    if general:
        kappa = GeneralKappa(rep, kap_entries)
    else:
        kappa = KappaParam(rep, {k: v.to_ga() for k, v in kap_entries.items()})
    return lam, kappa


def parse_params(text, rep: Representation):
    """Parse [lambda] and [kappa] sections against a known representation."""
    secs = _sections(text)
    unknown = set(secs) - {"lambda", "kappa"}
    if unknown:
        raise ParseError(f"unexpected sections {sorted(unknown)}")
    return _param_lines(secs.get("lambda", []), secs.get("kappa", []), rep)


# ---------------------------------------------------------------------------
# whole instances


def _sections(text):
    secs = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        mt = re.match(r"^\[([a-z-]+)\]$", line)
        if mt:
            current = mt.group(1)
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", lineno)
            if current in secs:
                raise ParseError(f"section [{current}] appears twice", lineno)
            secs[current] = []
            continue
        if current is None:
            raise ParseError("content before the first section header", lineno)
        secs[current].append((lineno, line))
    return secs


def _parse_field(lines):
    if len(lines) != 1:
        raise ParseError("[field] needs exactly one line", lines[0][0] if lines else None)
    lineno, line = lines[0]
    if line == "rationals":
        return Q
    mt = re.match(r"^char\s+(\d+)$", line)
    if not mt:
        raise ParseError("expected 'char <p>' or 'rationals'", lineno)
    try:
        return GF(int(mt.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _matrix_rows(field, lines, start, m, lineno_hint):
    rows = []
    for k in range(m):
        if start + k >= len(lines):
            raise ParseError("matrix has too few rows", lineno_hint)
        lineno, line = lines[start + k]
        try:
            rows.append([field.parse(x) for x in line.split()])
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        if len(rows[-1]) != m:
            raise ParseError(f"matrix row must have {m} entries", lineno)
    return rows


def _parse_group(field, lines, basis_names):
    if not lines:
        raise ParseError("[group] section is empty")
    head = lines[0][1].split()
    if head[0] == "generator":
        gens, names = [], []
        k = 0
        m = None
        while k < len(lines):
            lineno, line = lines[k]
            parts = line.split()
            if parts[0] != "generator" or len(parts) != 2:
                raise ParseError("expected 'generator <name>'", lineno)
            if m is None:
                if k + 1 >= len(lines):
                    raise ParseError("generator without matrix", lineno)
                m = len(lines[k + 1][1].split())
            rows = _matrix_rows(field, lines, k + 1, m, lineno)
            gens.append(Matrix(field, rows))
            names.append(parts[1])
            k += 1 + m
        if basis_names is not None and len(basis_names) != m:
            raise ParseError(f"[basis] names {len(basis_names)} vectors but matrices are {m}x{m}")
        try:
            return close_generators(gens, names=names, basis_names=basis_names)[1]
        except Exception as exc:
            raise ParseError(f"bad group: {exc}", lines[0][0]) from None
    if head[0] == "elements":
        names = head[1:]
        n = len(names)
        idx = {nm: i for i, nm in enumerate(names)}
        if len(lines) < 2 + n or lines[1][1] != "table":
            raise ParseError("expected 'table' followed by one row per element", lines[0][0])
        table = []
        for lineno, line in lines[2:2 + n]:
            row = line.split()
            if len(row) != n or any(x not in idx for x in row):
                raise ParseError("bad multiplication table row", lineno)
            table.append([idx[x] for x in row])
        rest = lines[2 + n:]
        mats = {}
        k = 0
        m = None
        while k < len(rest):
            lineno, line = rest[k]
            parts = line.split()
            if parts[0] != "matrix" or len(parts) != 2 or parts[1] not in idx:
                raise ParseError("expected 'matrix <element>'", lineno)
            if m is None:
                if k + 1 >= len(rest):
                    raise ParseError("matrix header without rows", lineno)
                m = len(rest[k + 1][1].split())
            mats[idx[parts[1]]] = Matrix(field, _matrix_rows(field, rest, k + 1, m, lineno))
            k += 1 + m
        try:
            group = FiniteGroup(table, names)
        except Exception as exc:
            raise ParseError(f"bad group: {exc}", lines[0][0]) from None
        if m is None:
            raise ParseError("no action matrices given", lines[0][0])
        mats.setdefault(group.identity, Matrix.identity(field, m))
        missing = [names[i] for i in range(n) if i not in mats]
        if missing:
            raise ParseError(f"no matrix for {missing}", lines[0][0])
        try:
            return Representation(group, [mats[i] for i in range(n)], basis_names=basis_names)
        except Exception as exc:
            raise ParseError(f"bad representation: {exc}", lines[0][0]) from None
    raise ParseError("[group] must start with 'generator' or 'elements'", lines[0][0])


def parse_instance(text: str) -> Instance:
    secs = _sections(text)
    for required in ("field", "group"):
        if required not in secs:
            raise ParseError(f"missing [{required}] section")
    field = _parse_field(secs["field"])
    basis_names = None
    if "basis" in secs:
        if len(secs["basis"]) != 1:
            raise ParseError("[basis] needs exactly one line", secs["basis"][0][0] if secs["basis"] else None)
        basis_names = secs["basis"][0][1].split()
    rep = _parse_group(field, secs["group"], basis_names)
    lam, kappa = _param_lines(secs.get("lambda", []), secs.get("kappa", []), rep)
    inst = Instance(rep, lam, kappa)
    for lineno, line in secs.get("map", []):
        if line.startswith("source "):
            if inst.map_source is not None:
                raise ParseError("map source given twice", lineno)
            inst.map_source = line[len("source "):].strip()
            continue
        mt = re.match(r"^image\s+(\S+)\s*=\s*(.+)$", line)
        if not mt:
            raise ParseError("expected 'source <instance>' or 'image <letter> = <expr>'", lineno)
        if mt.group(1) in inst.map_images:
            raise ParseError(f"image of {mt.group(1)} given twice", lineno)
        try:
            inst.map_images[mt.group(1)] = parse_expr(mt.group(2), rep)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    if inst.map_images and inst.map_source is None:
        raise ParseError("map images without a source")
    for lineno, line in secs.get("meta", []):
        mt = re.match(r"^([A-Za-z0-9_.-]+)\s*=\s*(.*)$", line)
        if not mt:
            raise ParseError("expected 'key = value'", lineno)
        key, value = mt.groups()
        if key in META_KEYS:
            setattr(inst, key, value)
        elif key.startswith("expect."):
            inst.expect[key[len("expect."):]] = value
        else:
            raise ParseError(f"unknown meta key {key!r}", lineno)
    return inst


def _render_matrix(field, M):
    return [" ".join(field.render(x) for x in row) for row in M.rows]


def render_instance(inst: Instance) -> str:
    rep = inst.rep
    f, G = rep.field, rep.group
    out = ["[field]", f"char {f.char}" if f.char else "rationals", "", "[group]"]
    if rep.generators:
        for name, idx in rep.generators:
            out.append(f"generator {name}")
            out.extend(_render_matrix(f, rep.matrices[idx]))
    else:
        out.append("elements " + " ".join(G.names))
        out.append("table")
        for a in range(G.order):
            out.append(" ".join(G.names[G.mul(a, b)] for b in range(G.order)))
        for a in range(G.order):
            if a != G.identity:
                out.append(f"matrix {G.names[a]}")
                out.extend(_render_matrix(f, rep.matrices[a]))
    out += ["", "[basis]", " ".join(rep.basis_names), ""]
    text = "\n".join(out) + "\n" + render_params(inst.lam, inst.kappa)
    if inst.map_source is not None:
        lines = ["", "[map]", f"source {inst.map_source}"]
        for key in sorted(inst.map_images, key=_letter_order(rep)):
            lines.append(f"image {key} = {inst.map_images[key].render()}")
        text += "\n".join(lines) + "\n"
    meta = []
    for key in META_KEYS:
        if getattr(inst, key):
            meta.append(f"{key} = {getattr(inst, key)}")
    for key in sorted(inst.expect):
        meta.append(f"expect.{key} = {inst.expect[key]}")
    if meta:
        text += "\n[meta]\n" + "\n".join(meta) + "\n"
    return text


def _letter_order(rep):
    def key(name):
        if name in rep.basis_names:
            return (1, rep.basis_names.index(name), name)
        return (0, rep.group._index.get(name, -1), name)
    return key


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
