"""Shared random samplers for the test suite.

Everything takes an explicit random.Random so failures reproduce from
the seed printed by the test that used them.
"""
from __future__ import annotations

from zkit import (IntegerRing, NotWellDefined, PrimeField, QuotientRing,
                  Rationals, ResidueRing, make_cover, make_hom,
                  unimodular_certificate)

SMALL_PRIMES = (2, 3, 5, 7)


def random_poly_payload(ring, rng, max_deg=3, max_terms=3, coeff_bound=3):
    payload = {}
    nvars = len(ring.variables)
    for _ in range(rng.randrange(1, max_terms + 1)):
        while True:
            mono = tuple(rng.randrange(0, max_deg + 1) for _ in range(nvars))
            if sum(mono) <= max_deg:
                break
        payload[mono] = rng.randrange(-coeff_bound, coeff_bound + 1)
    return payload


def random_element(ring, rng, max_deg=3):
    if isinstance(ring, IntegerRing):
        return ring.element(rng.randrange(-20, 21))
    if isinstance(ring, ResidueRing):
        return ring.element(rng.randrange(ring.modulus))
    return ring.element(random_poly_payload(ring, rng, max_deg=max_deg))


def random_quotient_ring(rng, base=None, max_vars=2, max_relations=2,
                         rel_deg=3):
    if base is None:
        base = (Rationals() if rng.random() < 0.5
                else PrimeField(rng.choice(SMALL_PRIMES)))
    nvars = rng.randrange(1, max_vars + 1)
    names = tuple("xyzw"[:nvars])
    free = QuotientRing(base, names)
    rels = []
    for _ in range(rng.randrange(0, max_relations + 1)):
        e = free.element(random_poly_payload(free, rng, max_deg=rel_deg,
                                             max_terms=2))
        if not e.is_zero:
            rels.append(e.payload)
    return QuotientRing(base, names, tuple(rels))


def random_ring(rng, kinds=("Z", "Zmod", "Q", "Fp")):
    kind = rng.choice(kinds)
    if kind == "Z":
        return IntegerRing()
    if kind == "Zmod":
        return ResidueRing(rng.randrange(2, 65))
    if kind == "Q":
        return random_quotient_ring(rng, base=Rationals())
    return random_quotient_ring(rng, base=PrimeField(rng.choice(SMALL_PRIMES)))


def random_unimodular_cover(ring, rng, max_n=3):
    """A random cover; (h, 1-h) guarantees success, richer shapes when
    the certificate search finds one."""
    for _ in range(6):
        shape = rng.randrange(3)
        try:
            if shape == 0:
                h = random_element(ring, rng, max_deg=2)
                return make_cover(ring, [h, ring.one() - h])
            if shape == 1:
                h = random_element(ring, rng, max_deg=2)
                g = random_element(ring, rng, max_deg=1)
                return make_cover(ring, [h, ring.one() - h * g, g])
            elems = [random_element(ring, rng, max_deg=2)
                     for _ in range(rng.randrange(2, max_n + 1))]
            if unimodular_certificate(elems) is None:
                continue
            return make_cover(ring, elems)
        except Exception:
            continue
    h = random_element(ring, rng, max_deg=1)
    return make_cover(ring, [h, ring.one() - h])


def random_endo(ring, rng):
    """A random well-defined endomorphism of a quotient ring, or None."""
    if not isinstance(ring, QuotientRing):
        return make_hom(ring, ring)
    for _ in range(8):
        images = []
        for name in ring.variables:
            roll = rng.random()
            if roll < 0.4:
                images.append(ring.var(name))
            elif roll < 0.7:
                images.append(ring.var(name) + ring.from_int(rng.randrange(-2, 3)))
            else:
                images.append(ring.from_int(rng.randrange(-3, 4)))
        try:
            return make_hom(ring, ring, tuple(images))
        except NotWellDefined:
            continue
    return None
