"""Unimodular covers and gluing along them.

A cover of R is a list f1, ..., fn generating the unit ideal, carried
together with its Bezout certificate.  A family of fractions x_i over
the R[1/f_i] is compatible when each pair agrees in the double
localization R[1/(f_i f_j)]; the witnesses are the saturation exponents.

glue_element inverts the restriction map: align the denominators to a
common power N, take the largest pairwise witness exponent k, raise the
Bezout certificate to the power N+k, and recombine.  The result is
verified against the input family before it is returned, and restricting
a global element then gluing gives back that element on the nose.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import IncompatibleFamily, NotUnimodular, RingMismatch
from .ideals import (BezoutCertificate, power_certificate,
                     saturation_member, unimodular_certificate)
from .localization import (Fraction, LocalizedRing, LocRingHom,
                           compose_canonical, frac_eq, localize)
from .rings import (IntegerRing, ResidueRing, RingElement, RingHom,
                    hom_apply, make_hom, normalize)


@dataclass(frozen=True)
class UnimodularCover:
    """f1, ..., fn with a verified certificate that 1 in <f1, ..., fn>."""

    ring: object
    elements: tuple
    certificate: BezoutCertificate

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return f"cover {self.ring} by [{', '.join(map(str, self.elements))}]"

    @cached_property
    def localized(self) -> tuple:
        return tuple(localize(self.ring, f) for f in self.elements)


def make_cover(ring, elements) -> UnimodularCover:
    elts = tuple(normalize(ring, f) if not isinstance(f, RingElement) else f
                 for f in elements)
    if not elts:
        raise NotUnimodular("a cover needs at least one element")
    for f in elts:
        if f.ring != ring:
            raise RingMismatch(f"{f!r} is not in {ring}")
    cert = unimodular_certificate(elts)
    if cert is None:
        raise NotUnimodular(f"1 is not in <{', '.join(map(str, elts))}>")
    return UnimodularCover(ring, elts, cert)


# ---------------------------------------------------------------------------
# compatibility

@dataclass(frozen=True)
class CompatCheck:
    """Outcome of a pairwise compatibility scan."""

    ok: bool
    witnesses: tuple = ()          # (i, j, k) saturation exponents
    failing_pair: tuple = None

    def __bool__(self):
        return self.ok


def _pair_condition(cover: UnimodularCover, i: int, j: int,
                    xi: Fraction, xj: Fraction, n_align: int):
    """Least exponent k with (r_i f_j^N - r_j f_i^N) * (f_i f_j)^k == 0
    after aligning both fractions to the denominator power N, or None.

    This decides chi_l(x_i) == chi_r(x_j) in R[1/(f_i f_j)], and the
    aligned form is the one the gluing algorithm consumes directly
    (witnesses on unaligned representatives can be off by unit factors
    that matter in rings with zero divisors).
    """
    fi, fj = cover.elements[i], cover.elements[j]
    ri = xi.num * fi ** (n_align - xi.exp)
    rj = xj.num * fj ** (n_align - xj.exp)
    return saturation_member(ri * fj ** n_align - rj * fi ** n_align,
                             fi * fj)


def check_compatibility(cover: UnimodularCover, elements) -> CompatCheck:
    """Decide all pairwise double-localization conditions."""
    elements = tuple(elements)
    if len(elements) != len(cover):
        raise IncompatibleFamily("family size does not match the cover")
    for x, L in zip(elements, cover.localized):
        if not isinstance(x, Fraction) or x.ring != cover.ring or x.f != L.f:
            raise RingMismatch(f"{x!r} is not a fraction over {L}")
    n_align = max((x.exp for x in elements), default=0)
    witnesses = []
    for j in range(len(elements)):
        for i in range(j):
            k = _pair_condition(cover, i, j, elements[i], elements[j],
                                n_align)
            if k is None:
                return CompatCheck(False, tuple(witnesses), (i, j))
            witnesses.append((i, j, k))
    return CompatCheck(True, tuple(witnesses))


@dataclass(frozen=True)
class CompatibleFamily:
    """A cover-indexed family of fractions with verified pair witnesses."""

    cover: UnimodularCover
    elements: tuple
    witnesses: tuple

    def __str__(self):
        return f"[{', '.join(map(str, self.elements))}] over {self.cover}"


def make_family(cover: UnimodularCover, elements) -> CompatibleFamily:
    check = check_compatibility(cover, elements)
    if not check.ok:
        i, j = check.failing_pair
        raise IncompatibleFamily(
            f"components {i} and {j} disagree in the double localization")
    return CompatibleFamily(cover, tuple(elements), check.witnesses)


def restrict_element(cover: UnimodularCover, g) -> CompatibleFamily:
    """The canonical family (g/1, ..., g/1)."""
    g = normalize(cover.ring, g) if not isinstance(g, RingElement) else g
    return make_family(cover, tuple(L.from_base(g) for L in cover.localized))


def glue_element(fam: CompatibleFamily) -> RingElement:
    """The unique global element restricting to the family."""
    cover = fam.cover
    ring = cover.ring
    fs = cover.elements
    n_exp = max((x.exp for x in fam.elements), default=0)
    aligned = [x.num * fs[i] ** (n_exp - x.exp)
               for i, x in enumerate(fam.elements)]
    k = max((w[2] for w in fam.witnesses), default=0)
    m = n_exp + k
    if m == 0:
        cof = [a * f for a, f in zip(cover.certificate.cofactors, fs)]
    else:
        cof = power_certificate(cover.certificate, m).cofactors
    g = ring.zero()
    for b, r, f in zip(cof, aligned, fs):
        g = g + b * r * f ** k
    for x, L in zip(fam.elements, cover.localized):
        if not frac_eq(L.from_base(g), x):
            raise IncompatibleFamily(
                "glued element fails to restrict to the family")
    return g


# ---------------------------------------------------------------------------
# pullback of covers

@dataclass(frozen=True)
class LocalizationSquare:
    """The induced map R[1/f] -> A[1/phi(f)] closing the pullback square
    with the canonical morphisms: r/f^n |-> phi(r)/phi(f)^n."""

    phi: RingHom
    source: LocalizedRing
    target: LocalizedRing

    def __call__(self, a: Fraction) -> Fraction:
        if a.ring != self.source.ring or a.f != self.source.f:
            raise RingMismatch(f"{a!r} is not a fraction of {self.source}")
        return self.target.fraction(hom_apply(self.phi, a.num), a.exp)


def pullback_cover(cover: UnimodularCover, phi: RingHom):
    """Push a cover of R along phi : R -> A; returns the cover of A by
    the phi(f_i) (certificate re-verified) and the connecting maps."""
    if phi.domain != cover.ring:
        raise RingMismatch("cover and hom live over different rings")
    images = tuple(hom_apply(phi, f) for f in cover.elements)
    cofs = tuple(hom_apply(phi, a) for a in cover.certificate.cofactors)
    cert = BezoutCertificate(images, cofs)
    if not cert.verify():
        raise AssertionError("pulled back certificate failed to verify")
    new_cover = UnimodularCover(phi.codomain, images, cert)
    maps = tuple(LocalizationSquare(phi, src, dst)
                 for src, dst in zip(cover.localized, new_cover.localized))
    return new_cover, maps


# ---------------------------------------------------------------------------
# hom-level families

@dataclass(frozen=True)
class CompatibleHomFamily:
    """Homs phi_i : A -> R[1/f_i] agreeing pairwise on A's generators."""

    cover: UnimodularCover
    domain: object
    homs: tuple
    witnesses: tuple   # (i, j, generator index, exponent)


def check_hom_compatibility(cover: UnimodularCover, domain, homs) -> CompatCheck:
    homs = tuple(homs)
    if len(homs) != len(cover):
        raise IncompatibleFamily("family size does not match the cover")
    for h, L in zip(homs, cover.localized):
        if not isinstance(h, LocRingHom) or h.domain != domain or h.target != L:
            raise RingMismatch(f"{h!r} is not a hom {domain} -> {L}")
    ngens = len(homs[0].generator_images) if homs else 0
    witnesses = []
    for g in range(ngens):
        n_align = max(h.generator_images[g].exp for h in homs)
        for j in range(len(homs)):
            for i in range(j):
                k = _pair_condition(cover, i, j,
                                    homs[i].generator_images[g],
                                    homs[j].generator_images[g], n_align)
                if k is None:
                    return CompatCheck(False, tuple(witnesses), (i, j))
                witnesses.append((i, j, g, k))
    return CompatCheck(True, tuple(witnesses))


def make_hom_family(cover: UnimodularCover, domain, homs) -> CompatibleHomFamily:
    check = check_hom_compatibility(cover, domain, homs)
    if not check.ok:
        i, j = check.failing_pair
        raise IncompatibleFamily(
            f"homs {i} and {j} disagree on some generator")
    return CompatibleHomFamily(cover, domain, tuple(homs), check.witnesses)


def restrict_hom(cover: UnimodularCover, psi: RingHom) -> CompatibleHomFamily:
    """sigma at the hom level: compose psi with each canonical map."""
    if psi.codomain != cover.ring:
        raise RingMismatch("psi must land in the covered ring")
    homs = tuple(compose_canonical(L, psi) for L in cover.localized)
    return make_hom_family(cover, psi.domain, homs)


def glue_hom(fam: CompatibleHomFamily) -> RingHom:
    """Glue generator-wise and reassemble a verified hom A -> R.

    Raises NotWellDefined when a domain relation fails on the glued
    images (an incompatibility the pairwise checks cannot see), and
    IncompatibleFamily when a restriction fails to match.
    """
    cover = fam.cover
    domain = fam.domain
    if isinstance(domain, (IntegerRing, ResidueRing)):
        glued = make_hom(domain, cover.ring)
        return glued
    images = []
    for g in range(len(domain.variables)):
        comps = tuple(h.generator_images[g] for h in fam.homs)
        witnesses = tuple((i, j, k) for (i, j, gg, k) in fam.witnesses
                          if gg == g)
        family = CompatibleFamily(cover, comps, witnesses)
        images.append(glue_element(family))
    glued = make_hom(domain, cover.ring, tuple(images))
    for h, L in zip(fam.homs, cover.localized):
        for img, frac in zip(glued.generator_images, h.generator_images):
            if not frac_eq(L.from_base(img), frac):
                raise IncompatibleFamily(
                    "glued hom fails to restrict to the family")
    return glued
