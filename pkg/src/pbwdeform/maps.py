"""Checking explicit generator maps between two algebras."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupMismatchError
from .rewriting import ReductionSystem, apply_hom, is_filtered_iso, verify_homomorphism
from .skew import SkewElem


@dataclass
class MapCheck:
    forward: object                 # HomCheck for source -> target
    bijective: bool                 # bijective on filtration degree <= 1, onto degree <= 2
    backward: object = None         # HomCheck for the inverse, when one was formed
    composites_ok: bool = None      # both composites fix every generator
    inverse: dict = None

    @property
    def passed(self):
        ok = self.forward.passed and self.bijective
        if self.backward is not None:
            ok = ok and self.backward.passed and self.composites_ok
        return ok

    def lines(self, source: ReductionSystem, target: ReductionSystem):
        out = ["map is a homomorphism: " + ("pass" if self.forward.passed else "FAIL")]
        out += ["  " + s for s in self.forward.lines(source) if not self.forward.passed]
        out.append("map is a filtered bijection: " + ("pass" if self.bijective else "FAIL"))
        if self.backward is not None:
            inv = ", ".join(f"{target.letter_name(x)} -> {self.inverse[x].render()}"
                            for x in sorted(self.inverse) if x < target.m)
            out.append(f"inverse ({inv}) is a homomorphism: " + ("pass" if self.backward.passed else "FAIL"))
            out += ["  " + s for s in self.backward.lines(target) if not self.backward.passed]
            out.append("composites fix the generators: " + ("pass" if self.composites_ok else "FAIL"))
        return out


def letter_images(source: ReductionSystem, named: dict):
    """Turn {letter name: SkewElem} into {letter: SkewElem}, extending group images multiplicatively."""
    from .rewriting import extend_group_images
    m, G = source.m, source.group
    vec, grp = {}, {}
    for name, img in named.items():
        if name in source.rep.basis_names:
            vec[source.rep.basis_names.index(name)] = img
        elif name in G._index:
            grp[G._index[name]] = img
        else:
            raise KeyError(f"unknown source letter {name!r}")
    if not grp:
        raise KeyError("no group images given")
    target_rep = next(iter(named.values())).rep
    tgt = ReductionSystem(target_rep)
    full = extend_group_images(source, tgt, grp)
    if full is None:
        raise KeyError("images of group elements do not determine the whole group")
    for g, img in grp.items():
        if full[m + g] != img:
            # an image given for a non-generator must agree with the extension
            raise KeyError(f"image of {G.names[g]} is inconsistent with the generators")
    full.update(vec)
    return full


def _shift_inverse(source: ReductionSystem, target: ReductionSystem, images):
    """Inverse of g -> g, v -> v + a(v) with a(v) in kG, as v -> v - a(v); else None."""
    m = source.m
    inv = {}
    for x, img in images.items():
        if x >= m:
            if img != SkewElem.group_element(target.rep, x - m):
                return None
            inv[x] = SkewElem.group_element(source.rep, x - m)
            continue
        shift = img - SkewElem.basis_vector(target.rep, x)
        if not shift.is_group_algebra():
            return None
        inv[x] = SkewElem.basis_vector(source.rep, x) - SkewElem.from_ga(source.rep, shift.to_ga())
    return inv


def verify_map(source: ReductionSystem, target: ReductionSystem, images: dict) -> MapCheck:
    if source.field != target.field or source.group != target.group:
        raise GroupMismatchError("source and target must share the field and the group")
    fwd = verify_homomorphism(images, source, target)
    check = MapCheck(fwd, is_filtered_iso(images, source, target))
    inv = _shift_inverse(source, target, images)
    if inv is not None:
        check.inverse = inv
        check.backward = verify_homomorphism(inv, target, source)
        ok = True
        for x in source.letters():
            back = apply_hom(inv, source, target.to_free(images[x]))
            ok = ok and back == source.normal_form((x,))
        for x in target.letters():
            there = apply_hom(images, target, source.to_free(inv[x]))
            ok = ok and there == target.normal_form((x,))
        check.composites_ok = ok
    return check
