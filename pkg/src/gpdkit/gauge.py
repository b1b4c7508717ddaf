"""Bundle morphisms, generalized gauge transformations and gauge groupoids.

For principal bundles P1, P2 over one base with one structure groupoid,
a bundle morphism is an equivariant, fiber and momentum preserving map
P1 -> P2, and a generalized gauge transformation (GGT) is a map K from
same-fiber pairs (p1, p2) to arrows with

    source(K(p1, p2)) == momentum1(p1)
    target(K(p1, p2)) == momentum2(p2)
    K(p1.g1, p2.g2) == g2^-1 K(p1, p2) g1

The two notions correspond bijectively:

    morphism_to_ggt:  K(p1, p2) = d2(p2, sigma(p1))
    ggt_to_morphism:  sigma(p1) = p2 . K(p1, p2)   for any same-fiber p2

where d2 is the division map of P2.  GGTs compose by the star product

    (K23 * K12)(p1, p3) = K23(p2, p3) K12(p1, p2)

whose value does not depend on the interpolating point p2; evaluation
picks the least p2 and re-checks independence on the others.  Bundles
with GGTs as arrows form a groupoid, built here explicitly with GGTs
interned by content so it can be fed back to validate_groupoid.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .bundles import IntegrityError, PrincipalBundle, division_map
from .core import FiniteGroupoid, ValidationReport, _check_total

__all__ = [
    "BundleMorphism",
    "GGT",
    "GaugeTransformation",
    "validate_bundle_morphism",
    "validate_ggt",
    "validate_gauge_transformation",
    "morphism_to_ggt",
    "ggt_to_morphism",
    "identity_ggt",
    "invert_ggt",
    "star",
    "gauge_to_ggt",
    "ggt_to_gauge",
    "GaugeGroup",
    "gauge_group",
    "check_division_invariance",
    "GaugeGroupoid",
    "build_gauge_groupoid",
]


@dataclass(frozen=True)
class BundleMorphism:
    """A map of total spaces between bundles over one base and groupoid."""

    source: PrincipalBundle
    target: PrincipalBundle
    mapping: dict[str, str]


@dataclass(frozen=True)
class GGT:
    """A generalized gauge transformation; values index same-fiber pairs."""

    source: PrincipalBundle
    target: PrincipalBundle
    values: dict[tuple[str, str], str]

    def apply(self, p1: str, p2: str) -> str:
        try:
            return self.values[(p1, p2)]
        except KeyError:
            raise KeyError(f"not a same-fiber pair: ({p1!r}, {p2!r})") from None


@dataclass(frozen=True)
class GaugeTransformation:
    """A map P -> isotropy arrows with G(p.g) == g^-1 G(p) g."""

    bundle: PrincipalBundle
    values: dict[str, str]


def _context_ok(r: ValidationReport, B1: PrincipalBundle, B2: PrincipalBundle) -> bool:
    if B1.groupoid != B2.groupoid:
        r.add("context.mismatch", note="different structure groupoids")
        return False
    if B1.base != B2.base:
        r.add("context.mismatch", note="different bases")
        return False
    return True


def _fibred_pairs(B1: PrincipalBundle, B2: PrincipalBundle) -> list[tuple[str, str]]:
    pairs = []
    for m in sorted(B1.base):
        for p1 in B1.fiber(m):
            for p2 in B2.fiber(m):
                pairs.append((p1, p2))
    return pairs


def validate_bundle_morphism(f: BundleMorphism) -> ValidationReport:
    """Check fiber preservation, momentum preservation and equivariance.

    Bijectivity is a consequence for valid bundles; it is re-checked
    under "derived.bijective" rather than assumed.
    """
    r = ValidationReport()
    B1, B2 = f.source, f.target
    if not _context_ok(r, B1, B2):
        return r
    _check_total(r, "mapping", f.mapping, B1.total, B2.total)
    sig = f.mapping.get

    for p in sorted(B1.total):
        q = sig(p)
        if q is None or q not in B2.total:
            continue
        if B2.projection.get(q) != B1.projection.get(p):
            r.add("morphism.projection", p)
        if B2.momentum.get(q) != B1.momentum.get(p):
            r.add("morphism.momentum", p)

    for (p, g), pg in sorted(B1.act.items()):
        q, qg = sig(p), sig(pg)
        if q is None or qg is None:
            continue
        if B2.act.get((q, g)) != qg:
            r.add("morphism.equivariance", p, g)

    image: dict[str, str] = {}
    for p in sorted(B1.total):
        q = sig(p)
        if q is None:
            continue
        if q in image:
            r.add("derived.bijective", image[q], p)
        image.setdefault(q, p)
    if len(image) == len(B1.total) and len(B2.total) != len(B1.total):
        r.add("derived.bijective", note="total spaces differ in size")
    return r


def validate_ggt(K: GGT) -> ValidationReport:
    """Check the endpoint and equivariance laws of K over its whole domain."""
    r = ValidationReport()
    B1, B2 = K.source, K.target
    if not _context_ok(r, B1, B2):
        return r
    G = B1.groupoid
    pairs = _fibred_pairs(B1, B2)
    expected = set(pairs)
    for key in pairs:
        if key not in K.values:
            r.add("table.values.missing", *key)
    for key in sorted(K.values):
        if key not in expected:
            r.add("table.values.extra", *key)
        elif K.values[key] not in G.arrows:
            r.add("table.values.dangling", *key, K.values[key])

    for (p1, p2) in pairs:
        k = K.values.get((p1, p2))
        if k is None or k not in G.arrows:
            continue
        if G.source.get(k) != B1.momentum.get(p1):
            r.add("ggt.source", p1, p2)
        if G.target.get(k) != B2.momentum.get(p2):
            r.add("ggt.target", p1, p2)

    by_target = G.by_target()
    for (p1, p2) in pairs:
        k = K.values.get((p1, p2))
        if k is None or k not in G.arrows:
            continue
        for g1 in by_target.get(B1.momentum.get(p1), ()):
            q1 = B1.act.get((p1, g1))
            if q1 is None:
                continue
            for g2 in by_target.get(B2.momentum.get(p2), ()):
                q2 = B2.act.get((p2, g2))
                if q2 is None:
                    continue
                moved = K.values.get((q1, q2))
                if moved is None:
                    continue
                want = G.mul(G.mul(G.inv(g2), k), g1)
                if moved != want:
                    r.add("ggt.equivariance", p1, p2, g1, g2)
    return r


def validate_gauge_transformation(t: GaugeTransformation) -> ValidationReport:
    """Check isotropy endpoints and the conjugation law of t."""
    r = ValidationReport()
    B = t.bundle
    G = B.groupoid
    _check_total(r, "values", t.values, B.total, G.arrows)
    for p in sorted(B.total):
        k = t.values.get(p)
        if k is None or k not in G.arrows:
            continue
        x = B.momentum.get(p)
        if G.source.get(k) != x or G.target.get(k) != x:
            r.add("gauge.isotropy", p)
    for (p, g), pg in sorted(B.act.items()):
        k, k2 = t.values.get(p), t.values.get(pg)
        if k is None or k2 is None or k not in G.arrows:
            continue
        ginv = G.inverse.get(g)
        if ginv is None:
            continue
        want = G.compose.get((G.compose.get((ginv, k)), g))
        if want is not None and k2 != want:
            r.add("gauge.equivariance", p, g)
    return r


def morphism_to_ggt(f: BundleMorphism) -> GGT:
    """The GGT of a bundle morphism: K(p1, p2) = d2(p2, sigma(p1))."""
    B1, B2 = f.source, f.target
    values = {}
    for (p1, p2) in _fibred_pairs(B1, B2):
        values[(p1, p2)] = division_map(B2, p2, f.mapping[p1])
    return GGT(B1, B2, values)


def ggt_to_morphism(K: GGT) -> BundleMorphism:
    """The bundle morphism of a GGT: sigma(p1) = p2 . K(p1, p2).

    The defining formula must not depend on the choice of p2 in the
    fiber; that independence is re-checked here and an IntegrityError
    raised if it fails, rather than silently picking a point.
    """
    B1, B2 = K.source, K.target
    mapping = {}
    for m in sorted(B1.base):
        fiber2 = B2.fiber(m)
        if not fiber2:
            raise IntegrityError(f"empty fiber over {m!r}")
        for p1 in B1.fiber(m):
            images = []
            for p2 in fiber2:
                images.append(B2.act[(p2, K.apply(p1, p2))])
            if len(set(images)) != 1:
                raise IntegrityError(
                    f"value at {p1!r} depends on the interpolating point"
                )
            mapping[p1] = images[0]
    return BundleMorphism(B1, B2, mapping)


def identity_ggt(B: PrincipalBundle) -> GGT:
    """The unit GGT of B: K(p, q) = d(p, q)^-1, the inverted division map."""
    values = {}
    for (p, q) in _fibred_pairs(B, B):
        values[(p, q)] = division_map(B, q, p)
    return GGT(B, B, values)


def invert_ggt(K: GGT) -> GGT:
    """Swap the feet and invert the arrows; the inverse for star."""
    G = K.source.groupoid
    values = {(p2, p1): G.inv(k) for (p1, p2), k in K.values.items()}
    return GGT(K.target, K.source, values)


def star(K23: GGT, K12: GGT) -> GGT:
    """Compose GGTs: (K23 * K12)(p1, p3) = K23(p2, p3) K12(p1, p2).

    The middle bundle of the two factors must agree.  The value is
    independent of the interpolating p2; computed at the least point of
    the middle fiber and re-checked against all others.
    """
    if K12.target != K23.source:
        raise ValueError("middle bundles differ")
    B1, B2, B3 = K12.source, K12.target, K23.target
    G = B1.groupoid
    values = {}
    for m in sorted(B1.base):
        fiber2 = B2.fiber(m)
        if not fiber2:
            raise IntegrityError(f"empty fiber over {m!r}")
        for p1 in B1.fiber(m):
            for p3 in B3.fiber(m):
                candidates = {
                    G.mul(K23.apply(p2, p3), K12.apply(p1, p2))
                    for p2 in fiber2
                }
                if len(candidates) != 1:
                    raise IntegrityError(
                        f"star value at ({p1!r}, {p3!r}) depends on the "
                        "interpolating point"
                    )
                values[(p1, p3)] = candidates.pop()
    return GGT(B1, B3, values)


def gauge_to_ggt(t: GaugeTransformation) -> GGT:
    """The GGT of a gauge transformation: K(p, q) = d(p, q)^-1 G(p)."""
    B = t.bundle
    G = B.groupoid
    values = {}
    for (p, q) in _fibred_pairs(B, B):
        values[(p, q)] = G.mul(G.inv(division_map(B, p, q)), t.values[p])
    return GGT(B, B, values)


def ggt_to_gauge(K: GGT) -> GaugeTransformation:
    """Restrict a GGT from a bundle to itself to the diagonal."""
    if K.source != K.target:
        raise ValueError("not a GGT from a bundle to itself")
    values = {p: K.values[(p, p)] for p in sorted(K.source.total)}
    return GaugeTransformation(K.source, values)


@dataclass(frozen=True)
class GaugeGroup:
    """All gauge transformations of a bundle, with their pointwise product.

    product and inverse index into elements; unit is the index of the
    transformation sending every point to the unit at its momentum.
    """

    bundle: PrincipalBundle
    elements: tuple[GaugeTransformation, ...]
    product: dict[tuple[int, int], int]
    unit: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def _gauge_key(values: dict[str, str]) -> tuple:
    return tuple(sorted(values.items()))


def gauge_group(B: PrincipalBundle) -> GaugeGroup:
    """Enumerate every gauge transformation of B and tabulate the group.

    A gauge transformation is fixed by one isotropy choice per fiber:
    values spread from a fiber representative r through G(r.g) = g^-1 c g.
    Each candidate is re-validated before being admitted.
    """
    import itertools

    G = B.groupoid
    reps = []
    for m in sorted(B.base):
        fiber = B.fiber(m)
        if not fiber:
            raise IntegrityError(f"empty fiber over {m!r}")
        reps.append(fiber[0])
    choice_pools = []
    for p in reps:
        x = B.momentum[p]
        pool = tuple(
            sorted(k for k in G.arrows if G.source[k] == x and G.target[k] == x)
        )
        choice_pools.append(pool)

    elements = []
    for picks in itertools.product(*choice_pools):
        values: dict[str, str] = {}
        for p, c in zip(reps, picks):
            m = B.projection[p]
            for q in B.fiber(m):
                g = division_map(B, p, q)
                values[q] = G.mul(G.mul(G.inv(g), c), g)
        t = GaugeTransformation(B, values)
        report = validate_gauge_transformation(t)
        if not report.ok:
            raise IntegrityError(
                "enumerated gauge transformation fails validation: "
                + report.render()
            )
        elements.append(t)
    elements.sort(key=lambda t: _gauge_key(t.values))

    index = {_gauge_key(t.values): i for i, t in enumerate(elements)}
    unit_values = {p: G.unit[B.momentum[p]] for p in sorted(B.total)}
    unit = index[_gauge_key(unit_values)]
    product = {}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            combined = {
                p: G.mul(a.values[p], b.values[p]) for p in sorted(B.total)
            }
            product[(i, j)] = index[_gauge_key(combined)]
    inverse = []
    for t in elements:
        inv_values = {p: G.inv(t.values[p]) for p in sorted(B.total)}
        inverse.append(index[_gauge_key(inv_values)])
    return GaugeGroup(B, tuple(elements), product, unit, tuple(inverse))


def check_division_invariance(f: BundleMorphism) -> ValidationReport:
    """Check d2(sigma(p), sigma(q)) == d1(p, q) over all same-fiber pairs."""
    r = ValidationReport()
    B1, B2 = f.source, f.target
    for (p, q) in _fibred_pairs(B1, B1):
        lhs = division_map(B2, f.mapping[p], f.mapping[q])
        if lhs != division_map(B1, p, q):
            r.add("division.invariance", p, q)
    return r


def _ggt_digest(i: int, j: int, values: dict[tuple[str, str], str]) -> str:
    payload = json.dumps(
        [i, j, sorted([p1, p2, k] for (p1, p2), k in values.items())],
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class GaugeGroupoid:
    """Bundles as objects, GGTs as arrows, with the star product.

    groupoid is the same data exported as a FiniteGroupoid whose arrow
    ids intern the GGT tables by content, so the generic validator and
    isotropy helpers apply to it unchanged.
    """

    bundle_ids: tuple[str, ...]
    bundles: tuple[PrincipalBundle, ...]
    ggts: dict[str, GGT]
    groupoid: FiniteGroupoid


def build_gauge_groupoid(
    bundles: list[PrincipalBundle], ids: list[str] | None = None
) -> GaugeGroupoid:
    """Assemble the groupoid of all GGTs between the given bundles.

    The bundles must share base and structure groupoid.  Hom sets are
    filled by the independent enumeration oracle, composition by star,
    units by identity_ggt and inversion by invert_ggt; any composite or
    unit missing from the enumerated arrows is an IntegrityError.
    """
    from .builders import enumerate_ggts

    if not bundles:
        raise ValueError("need at least one bundle")
    for B in bundles[1:]:
        if B.groupoid != bundles[0].groupoid or B.base != bundles[0].base:
            raise ValueError("bundles must share base and groupoid")
    if ids is None:
        ids = [f"P{i}" for i in range(len(bundles))]
    if len(ids) != len(bundles) or len(set(ids)) != len(ids):
        raise ValueError("need one distinct id per bundle")

    arrows: dict[str, GGT] = {}
    by_key: dict[tuple, str] = {}
    homs: dict[tuple[int, int], list[str]] = {}

    def intern(i: int, j: int, K: GGT) -> str:
        key = (i, j, tuple(sorted(K.values.items())))
        found = by_key.get(key)
        if found is not None:
            return found
        aid = f"ggt:{ids[i]}>{ids[j]}:{_ggt_digest(i, j, K.values)}"
        by_key[key] = aid
        arrows[aid] = K
        return aid

    def lookup(i: int, j: int, K: GGT) -> str:
        key = (i, j, tuple(sorted(K.values.items())))
        found = by_key.get(key)
        if found is None:
            raise IntegrityError(
                f"composite or unit GGT missing from hom({ids[i]}, {ids[j]})"
            )
        return found

    for i, Bi in enumerate(bundles):
        for j, Bj in enumerate(bundles):
            homs[(i, j)] = [intern(i, j, K) for K in enumerate_ggts(Bi, Bj)]

    source = {}
    target = {}
    for (i, j), names in sorted(homs.items()):
        for aid in names:
            source[aid] = ids[i]
            target[aid] = ids[j]
    unit = {
        ids[i]: lookup(i, i, identity_ggt(B)) for i, B in enumerate(bundles)
    }
    inverse = {}
    compose = {}
    for (i, j), names in sorted(homs.items()):
        for aid in names:
            inverse[aid] = lookup(j, i, invert_ggt(arrows[aid]))
    for (j, k), names2 in sorted(homs.items()):
        for (i, j2), names1 in sorted(homs.items()):
            if j2 != j:
                continue
            for a2 in names2:
                for a1 in names1:
                    composite = star(arrows[a2], arrows[a1])
                    compose[(a2, a1)] = lookup(i, k, composite)

    groupoid = FiniteGroupoid(
        objects=frozenset(ids),
        arrows=frozenset(arrows),
        source=source,
        target=target,
        unit=unit,
        inverse=inverse,
        compose=compose,
    )
    return GaugeGroupoid(tuple(ids), tuple(bundles), arrows, groupoid)
