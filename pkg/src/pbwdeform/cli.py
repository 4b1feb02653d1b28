"""Command-line interface: ``pbwdeform <subcommand> <instance> [options]``.

Instances are files in the text format of :mod:`pbwdeform.textio` or
``corpus:<name>`` for the built-in gallery.

Exit status: 0 when every requested check passes, 1 when one fails,
2 when the command cannot run on the input (bad usage, unmet precondition),
3 on a parse error.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import corpus
from .conditions import check_pbw
from .conversion import build_conversion_iso, gamma
from .errors import ParseError, PBWError, PreconditionError
from .hochschild import (check_homological, check_infrastructure, lift_to_deformation,
                         render_middle, verify_mu_extraction)
from .maps import letter_images, verify_map
from .params import GeneralKappa, LambdaParam, validate_structural
from .rewriting import (ReductionSystem, graded_dimension, iso_search, pbw_count,
                        resolve_ambiguities, search_kappa_family)
from .skew import SkewElem
from .textio import Instance, load_instance, render_instance

EXIT_PASS, EXIT_FAIL, EXIT_ERROR, EXIT_PARSE = 0, 1, 2, 3


@dataclass
class Check:
    key: str
    passed: bool
    witness: str = None


@dataclass
class RunReport:
    """Outcome of one subcommand: verdicts, witnesses, the human text and timings."""

    subcommand: str
    instance: str = None
    digest: str = None
    checks: list = dc_field(default_factory=list)
    text: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)
    error: str = None
    status: int = None
    found: int = None                 # number of maps, for iso-search

    def add(self, key, passed, witness=None):
        self.checks.append(Check(key, bool(passed), witness))

    @property
    def exit_status(self):
        if self.status is not None:
            return self.status
        if self.error is not None:
            return EXIT_ERROR
        return EXIT_PASS if all(c.passed for c in self.checks) else EXIT_FAIL

    @property
    def verdict(self):
        return {EXIT_PASS: "pass", EXIT_FAIL: "fail"}.get(self.exit_status, "error")

    def human(self, timings=False):
        out = list(self.text)
        if self.error is not None:
            out.append(f"error: {self.error}")
        if timings:
            out += [f"time {k}: {v:.3f}s" for k, v in self.timings.items()]
        return "\n".join(out)

    def structured(self, timings=False):
        """key = value lines; every human line is repeated under text.NNN."""
        out = [f"subcommand = {self.subcommand}"]
        if self.instance is not None:
            out.append(f"instance = {self.instance}")
        if self.digest is not None:
            out.append(f"digest = {self.digest}")
        for c in self.checks:
            out.append(f"check.{c.key} = {'pass' if c.passed else 'fail'}")
            if c.witness is not None:
                out.append(f"witness.{c.key} = {c.witness}")
        if self.error is not None:
            out.append(f"error = {self.error}")
        out.append(f"verdict = {self.verdict}")
        out.append(f"exit = {self.exit_status}")
        for k, line in enumerate(self.text):
            out.append(f"text.{k:03d} = {line}")
        if timings:
            out += [f"time.{k} = {v:.3f}" for k, v in self.timings.items()]
        return "\n".join(out)


class _Timer:
    def __init__(self, report, key):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.key] = time.perf_counter() - self.t0


# ---------------------------------------------------------------------------
# instances


def resolve(ref: str, base_dir=None) -> Instance:
    """``corpus:<name>`` or a path (relative paths resolve against ``base_dir``)."""
    if ref.startswith("corpus:"):
        return corpus.corpus_get(ref[len("corpus:"):])
    path = ref if base_dir is None or os.path.isabs(ref) else os.path.join(base_dir, ref)
    inst = load_instance(path)
    inst._base_dir = os.path.dirname(os.path.abspath(path))
    if inst.name is None:
        inst.name = os.path.basename(path)
    return inst


def digest(inst: Instance) -> str:
    return hashlib.sha256(render_instance(inst).encode()).hexdigest()[:16]


def _system(inst: Instance, mode="untwisted"):
    return ReductionSystem(inst.rep, inst.lam, inst.kappa, mode)


def _new_report(sub, inst):
    return RunReport(sub, inst.name, digest(inst))


# ---------------------------------------------------------------------------
# subcommands


def run_check(inst: Instance, args=None) -> RunReport:
    rep = _new_report("check", inst)
    if inst.general:
        with _Timer(rep, "ambiguities"):
            amb = resolve_ambiguities(_system(inst))
        rep.text.append("kappa has vector terms; PBW is decided by the rewriting oracle")
        rep.text += amb.lines()
        first = amb.first_failure()
        rep.add("ambiguities", amb.confluent,
                None if first is None else _system(inst).word_str(first.word))
    else:
        with _Timer(rep, "conditions"):
            res = check_pbw(inst.lam, inst.kappa)
        for c, r in res.results.items():
            w = None if r.passed else " ".join(res.witness_names(c))
            rep.add(f"condition{c}", r.passed, w)
        rep.text += res.lines()
        with _Timer(rep, "structural"):
            st = validate_structural(inst.lam, inst.kappa)
        rep.text.append(f"structural necessary conditions: {len(st.violations)} violations")
        rep.text += ["  " + _violation(v) for v in st.violations[:10]]
        rep.add("structural", st.ok, _violation(st.violations[0]) if st.violations else None)
    if inst.map_source is not None:
        with _Timer(rep, "map"):
            _map_checks(inst, rep)
    return rep


def _violation(v):
    return f"{v.kind} at {v.where}: {v.detail}"


def _map_checks(inst, rep):
    src_inst = resolve(inst.map_source, getattr(inst, "_base_dir", None))
    src = _system(src_inst)
    tgt = _system(inst)
    images = letter_images(src, inst.map_images)
    mc = verify_map(src, tgt, images)
    rep.text.append(f"map from {inst.map_source}: " + ", ".join(
        f"f({k}) = {v.render()}" for k, v in inst.map_images.items()))
    rep.text += mc.lines(src, tgt)
    rep.add("map-homomorphism", mc.forward.passed)
    rep.add("map-bijective", mc.bijective)
    if mc.backward is not None:
        rep.add("map-inverse", mc.backward.passed and mc.composites_ok)


def run_oracle(inst: Instance, args) -> RunReport:
    rep = _new_report("oracle", inst)
    sys_ = _system(inst)
    with _Timer(rep, "ambiguities"):
        amb = resolve_ambiguities(sys_)
    rep.text += amb.lines()
    first = amb.first_failure()
    rep.add("ambiguities", amb.confluent, None if first is None else sys_.word_str(first.word))
    top = args.max_degree
    with _Timer(rep, "dimensions"):
        dims = [graded_dimension(sys_, n, max(top, 1)) for n in range(top + 1)]
    want = [pbw_count(sys_.m, sys_.group.order, n) for n in range(top + 1)]
    rep.text.append("graded dimensions: " + " ".join(map(str, dims)))
    rep.text.append("PBW monomial counts: " + " ".join(map(str, want)))
    bad = next((n for n in range(top + 1) if dims[n] != want[n]), None)
    rep.add("graded-dimensions", bad is None, None if bad is None else f"degree {bad}")
    if args.samples:
        rng = random.Random(args.seed)
        with _Timer(rep, "samples"):
            fails = _associativity_samples(sys_, rng, args.samples)
        rep.text.append(f"associativity on {args.samples} random word pairs: "
                        + ("pass" if not fails else f"FAIL at {fails[0]}"))
        rep.add("associativity", not fails, fails[0] if fails else None)
    return rep


def _associativity_samples(sys_, rng, count):
    letters = sys_.letters()
    fails = []
    for _ in range(count):
        x = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        y = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        z = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        nx, ny, nz = (sys_.normal_form(w) for w in (x, y, z))
        if sys_.multiply(sys_.multiply(nx, ny), nz) != sys_.multiply(nx, sys_.multiply(ny, nz)):
            fails.append(sys_.word_str(x + y + z))
    return fails


def _require_kg_kappa(inst, what):
    if isinstance(inst.kappa, GeneralKappa):
        raise PreconditionError(f"{what} needs kappa with values in kG")


def run_homology(inst: Instance, args) -> RunReport:
    rep = _new_report("homology", inst)
    _require_kg_kappa(inst, "the homological test")
    with _Timer(rep, "identities"):
        res = check_homological(inst.lam, inst.kappa)
    for r in res.results:
        rep.add(_slug(r.name), r.passed, None if r.passed else render_middle(inst.rep, r.witness))
    rep.text += res.lines()
    if args is not None and getattr(args, "infra", False):
        with _Timer(rep, "infrastructure"):
            _infra(inst.rep, rep)
    return rep


def _slug(name):
    keep = "".join(ch if ch.isalnum() else "-" for ch in name)
    return "-".join(p for p in keep.split("-") if p)


def _infra(rep_, report):
    for r in check_infrastructure(rep_):
        report.text.append(f"{r.name}: " + ("pass" if r.passed else "FAIL")
                           + f" ({r.checked} basis elements)")
        report.add(_slug(r.name), r.passed, render_middle(rep_, r.failures[0]) if r.failures else None)


def run_convert(inst: Instance, args=None) -> RunReport:
    rep = _new_report("convert", inst)
    gamma(inst.lam)      # characteristic check comes first
    if isinstance(inst.kappa, GeneralKappa) or not inst.kappa.is_zero():
        raise PreconditionError("conversion starts from an instance with kappa = 0")
    with _Timer(rep, "conversion"):
        res = build_conversion_iso(inst.lam)
    rep.text += res.lines()
    kres = check_pbw(LambdaParam.zero(inst.rep), res.kappa)
    rep.text.append("H_{0,kappa} conditions: " + ("pass" if kres.passed else "FAIL"))
    rep.add("target-pbw", kres.passed)
    rep.add("forward-homomorphism", res.forward_check.passed)
    rep.add("backward-homomorphism", res.backward_check.passed)
    rep.add("composites", res.composite_forward_ok and res.composite_backward_ok)
    return rep


def run_iso_search(inst: Instance, args) -> RunReport:
    rep = _new_report("iso-search", inst)
    target_ref = getattr(args, "target", None) if args is not None else None
    if target_ref is None:
        tgt = _system(inst)
        with _Timer(rep, "search"):
            results = search_kappa_family(tgt)
        total = 0
        for kap, found in results:
            txt = ", ".join(f"kappa'({inst.rep.basis_names[i]}, {inst.rep.basis_names[j]}) = "
                            f"{kap.value(i, j).render()}" for i in range(inst.rep.dim)
                            for j in range(i + 1, inst.rep.dim))
            rep.text.append(f"source H_{{0,kappa'}} with {txt}: {len(found)} isomorphisms")
            total += len(found)
        rep.text.append(f"{len(results)} PBW parameters kappa' in kG searched")
    else:
        target = resolve(target_ref, getattr(inst, "_base_dir", None))
        src, tgt = _system(inst), _system(target)
        with _Timer(rep, "search"):
            found = iso_search(src, tgt)
        for cand in found:
            rep.text.append(cand.render(src))
        total = len(found)
    rep.text.append(f"{total} isomorphisms found")
    rep.add("search-complete", True)
    rep.found = total
    return rep


def run_mu_extract(inst: Instance, args) -> RunReport:
    rep = _new_report("mu-extract", inst)
    _require_kg_kappa(inst, "mu extraction")
    top = getattr(args, "degree", 2) if args is not None else 2
    mode = getattr(args, "mode", "graded") if args is not None else "graded"
    with _Timer(rep, "lift"):
        defo = lift_to_deformation(inst.lam, inst.kappa, mode)
    r_ = inst.rep
    G = r_.group
    letters = [("v", i) for i in range(r_.dim)] + [("g", g) for g in range(G.order)]

    def elem(x):
        kind, i = x
        return SkewElem.basis_vector(r_, i) if kind == "v" else SkewElem.group_element(r_, i)

    def name(x):
        return r_.basis_names[x[1]] if x[0] == "v" else G.names[x[1]]

    with _Timer(rep, "mu"):
        for j in range(1, top + 1):
            for a in letters:
                for b in letters:
                    val = defo.mu(j, elem(a), elem(b))
                    if val:
                        rep.text.append(f"mu_{j}({name(a)}, {name(b)}) = {val.render()}")
        for r in verify_mu_extraction(defo, inst.lam, inst.kappa):
            rep.text.append(f"{r.name}: " + ("pass" if r.passed else "FAIL") + f" ({r.checked} cases)")
            rep.add(_slug(r.name), r.passed, str(r.failures[0]) if r.failures else None)
    return rep


SUBCOMMANDS = {
    "check": run_check,
    "oracle": run_oracle,
    "homology": run_homology,
    "convert": run_convert,
    "iso-search": run_iso_search,
    "mu-extract": run_mu_extract,
}


def _defaults(sub):
    """Default argument namespace for running a subcommand from ``examples run``."""
    return argparse.Namespace(max_degree=4, samples=0, seed=0, infra=False, target=None,
                              degree=2, mode="graded")


def run_subcommand(sub, inst, args=None) -> RunReport:
    args = args or _defaults(sub)
    try:
        return SUBCOMMANDS[sub](inst, args)
    except PBWError as exc:
        rep = _new_report(sub, inst)
        rep.error = f"{type(exc).__name__}: {exc}"
        return rep


def run_examples(args) -> RunReport:
    rep = RunReport("examples")
    if args.action == "list":
        for name in corpus.corpus_names():
            inst = corpus.corpus_get(name)
            rep.text.append(f"{name}: {inst.description}")
        return rep
    if args.name is None:
        raise PreconditionError("examples run needs an entry name (or 'all')")
    names = corpus.corpus_names() if args.name == "all" else [args.name]
    for name in names:
        inst = corpus.corpus_get(name)
        for sub in sorted(inst.expect):
            want = inst.expect[sub]
            t0 = time.perf_counter()
            r = run_subcommand(sub, inst)
            rep.timings[f"{name}.{sub}"] = time.perf_counter() - t0
            got = str(r.found) if sub == "iso-search" and r.error is None else r.verdict
            ok = got == want
            rep.text.append(f"{name} {sub}: expected {want}, got {got} ({'ok' if ok else 'MISMATCH'})")
            if not ok:
                rep.text += ["  " + line for line in r.human().splitlines()]
            rep.add(f"{name}.{sub}", ok)
    return rep


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="human text (default) or a key = value block")
    common.add_argument("--json-like", dest="format", choices=("structured",), default=argparse.SUPPRESS,
                        help="same as --format structured")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--timings", action="store_true", help="report wall-clock timings")

    p = argparse.ArgumentParser(prog="pbwdeform", description="PBW deformations of skew group algebras")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("check", parents=[common], help="evaluate the five PBW conditions")
    s.add_argument("instance")
    s = sub.add_parser("oracle", parents=[common], help="resolve rewriting ambiguities")
    s.add_argument("instance")
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--samples", type=int, default=0, help="random associativity samples")
    s = sub.add_parser("homology", parents=[common], help="Hochschild cohomology test")
    s.add_argument("instance")
    s.add_argument("--infra", action="store_true", help="also check d o d, chain maps and psi_2 phi_2")
    s = sub.add_parser("convert", parents=[common], help="H_{lambda,0} -> H_{0,kappa} in nonmodular characteristic")
    s.add_argument("instance")
    s = sub.add_parser("iso-search", parents=[common], help="search filtered isomorphisms")
    s.add_argument("instance")
    s.add_argument("--target", default=None, help="search instance -> target instead of H_{0,kappa'} -> instance")
    s = sub.add_parser("mu-extract", parents=[common], help="multiplication maps of the graded deformation")
    s.add_argument("instance")
    s.add_argument("--degree", type=int, default=2)
    s.add_argument("--mode", choices=("graded", "collapsed"), default="graded")
    s = sub.add_parser("examples", parents=[common], help="list or run the built-in gallery")
    s.add_argument("action", choices=("list", "run"))
    s.add_argument("name", nargs="?")
    return p


def run(argv=None):
    """Parse ``argv``, run the subcommand and return (exit status, RunReport)."""
    return execute(build_parser().parse_args(argv))


def execute(args):
    if args.subcommand == "examples":
        try:
            rep = run_examples(args)
        except (KeyError, PBWError) as exc:
            rep = RunReport("examples", error=str(exc).strip("'\""))
        return rep.exit_status, rep
    try:
        inst = resolve(args.instance)
    except ParseError as exc:
        rep = RunReport(args.subcommand, instance=args.instance, error=f"parse error: {exc}",
                        status=EXIT_PARSE)
        return rep.exit_status, rep
    except (KeyError, OSError) as exc:
        rep = RunReport(args.subcommand, instance=args.instance, error=str(exc).strip("'\""))
        return rep.exit_status, rep
    try:
        rep = run_subcommand(args.subcommand, inst, args)
    except ParseError as exc:     # e.g. a broken map source file
        rep = RunReport(args.subcommand, instance=inst.name, error=f"parse error: {exc}",
                        status=EXIT_PARSE)
    except (KeyError, OSError) as exc:
        rep = RunReport(args.subcommand, instance=inst.name, error=str(exc).strip("'\""))
    return rep.exit_status, rep


def main(argv=None):
    args = build_parser().parse_args(argv)
    status, rep = execute(args)
    if args.format == "structured":
        print(rep.structured(args.timings))
    else:
        print(rep.human(args.timings))
    return status


if __name__ == "__main__":
    sys.exit(main())
