"""Two-sided bundles: groupoid morphisms in the bibundle picture.

An HSMorphism from a groupoid dom to a groupoid cod is a principal
cod-bundle over the objects of dom together with a left dom-action on
the total space along the projection, commuting with the right action
and leaving the momentum map untouched.  Ordinary groupoid morphisms
embed via hs_from_groupoid_morphism.

The gauge layer of the bundle restricts: bundle morphisms that are also
left equivariant, GGTs that are invariant under the diagonal left
action, and gauge transformations constant on left orbits.  The
morphism/GGT correspondence restricts along with them, and the
invariant GGTs form their own groupoid inside the bundle-level one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundles import (
    IntegrityError,
    PrincipalBundle,
    fibred_product,
    product_bundle,
    validate_bundle,
    verify_division_properties,
)
from .core import (
    FiniteGroupoid,
    GroupoidMorphism,
    LeftAction,
    ValidationReport,
    pair_id,
    product_groupoid,
    split_pair,
    validate_action,
)
from .gauge import (
    GGT,
    BundleMorphism,
    GaugeGroup,
    GaugeGroupoid,
    GaugeTransformation,
    _gauge_key,
    gauge_group,
    morphism_to_ggt,
    ggt_to_morphism,
    validate_bundle_morphism,
    validate_ggt,
)

__all__ = [
    "HSMorphism",
    "validate_hs",
    "hs_from_groupoid_morphism",
    "hs_product",
    "hs_fibred_product",
    "verify_hs_division_properties",
    "HSBundleMorphism",
    "validate_hs_morphism",
    "validate_hs_ggt",
    "hs_morphism_to_ggt",
    "hs_ggt_to_morphism",
    "is_left_invariant_ggt",
    "hs_gauge_group",
    "build_hs_gauge_groupoid",
]


@dataclass(frozen=True)
class HSMorphism:
    """A bibundle from dom to cod.

    bundle is a principal cod-bundle whose base is dom's object set;
    left_act maps (g, p) to g.p and is defined exactly when
    source(g) == projection(p), with projection(g.p) == target(g).
    """

    dom: FiniteGroupoid
    cod: FiniteGroupoid
    bundle: PrincipalBundle
    left_act: dict[tuple[str, str], str]

    def lact(self, g: str, p: str) -> str:
        try:
            return self.left_act[(g, p)]
        except KeyError:
            raise KeyError(f"left action undefined: {g!r} on {p!r}") from None

    def left_action(self) -> LeftAction:
        return LeftAction(
            self.dom,
            self.bundle.total,
            dict(self.bundle.projection),
            self.left_act,
        )


def validate_hs(h: HSMorphism) -> ValidationReport:
    """Check the bibundle conditions of h exhaustively.

    Merges the bundle validation, the left action validation (rules
    prefixed "left-"), momentum invariance under the left action and
    commutation of the two actions.
    """
    r = ValidationReport()
    if h.bundle.groupoid != h.cod:
        r.add("context.mismatch", note="bundle groupoid is not the codomain")
        return r
    if h.bundle.base != frozenset(h.dom.objects):
        r.add("context.mismatch", note="bundle base is not the domain objects")
        return r
    r.extend(validate_bundle(h.bundle))
    r.extend(validate_action(h.left_action()), prefix="left-")

    act_by_point: dict[str, list[tuple[str, str]]] = {}
    for (p, k), pk in sorted(h.bundle.act.items()):
        act_by_point.setdefault(p, []).append((k, pk))
    eps = h.bundle.momentum.get
    for (g, p) in sorted(h.left_act):
        gp = h.left_act[(g, p)]
        if gp not in h.bundle.total:
            continue
        if eps(gp) != eps(p):
            r.add("hs.momentum-invariant", g, p)
        for k, pk in act_by_point.get(p, ()):
            moved = h.left_act.get((g, pk))
            other = h.bundle.act.get((gp, k))
            if moved is not None and other is not None and moved != other:
                r.add("hs.commute", g, p, k)
    return r


def hs_from_groupoid_morphism(m: GroupoidMorphism) -> HSMorphism:
    """Realize a groupoid morphism as a bibundle.

    Points are pairs (x, k) with x an object of the domain and k a
    codomain arrow whose target is the image of x; the right action
    composes into k, the left action pushes x and multiplies by the
    arrow image.
    """
    G, H = m.domain, m.codomain
    points = []
    for x in sorted(G.objects):
        y = m.object_map[x]
        for k in sorted(H.arrows):
            if H.target[k] == y:
                points.append((x, k))
    projection = {pair_id(x, k): x for x, k in points}
    momentum = {pair_id(x, k): H.source[k] for x, k in points}
    act = {}
    for x, k in points:
        for (kk, k2), k3 in H.compose.items():
            if kk == k:
                act[(pair_id(x, k), k2)] = pair_id(x, k3)
    bundle = PrincipalBundle(
        groupoid=H,
        total=frozenset(projection),
        base=frozenset(G.objects),
        projection=projection,
        momentum=momentum,
        act=act,
    )
    left_act = {}
    for x, k in points:
        for g in sorted(G.arrows):
            if G.source[g] != x:
                continue
            left_act[(g, pair_id(x, k))] = pair_id(
                G.target[g], H.mul(m.arrow_map[g], k)
            )
    return HSMorphism(G, H, bundle, left_act)


def hs_product(h1: HSMorphism, h2: HSMorphism) -> HSMorphism:
    """Componentwise product bibundle between the product groupoids."""
    bundle = product_bundle(h1.bundle, h2.bundle)
    left_act = {}
    for (g1, p1), q1 in sorted(h1.left_act.items()):
        for (g2, p2), q2 in sorted(h2.left_act.items()):
            left_act[(pair_id(g1, g2), pair_id(p1, p2))] = pair_id(q1, q2)
    return HSMorphism(
        product_groupoid(h1.dom, h2.dom),
        product_groupoid(h1.cod, h2.cod),
        bundle,
        left_act,
    )


def hs_fibred_product(h1: HSMorphism, h2: HSMorphism) -> HSMorphism:
    """Same-fiber pairs with the diagonal left action; a bibundle from
    the shared domain to the product of the codomains."""
    if h1.dom != h2.dom:
        raise ValueError("fibred product needs a shared domain")
    bundle = fibred_product(h1.bundle, h2.bundle)
    left_act = {}
    for p in sorted(bundle.total):
        x = bundle.projection[p]
        p1, p2 = split_pair(p)
        for g in sorted(h1.dom.arrows):
            if h1.dom.source[g] != x:
                continue
            left_act[(g, p)] = pair_id(
                h1.left_act[(g, p1)], h2.left_act[(g, p2)]
            )
    return HSMorphism(
        h1.dom,
        product_groupoid(h1.cod, h2.cod),
        bundle,
        left_act,
    )


def verify_hs_division_properties(h: HSMorphism) -> ValidationReport:
    """Division map laws plus invariance under the diagonal left action:

    division.left-invariance  witness (g, p, q): d(g.p, g.q) != d(p, q)
    """
    from .bundles import division_map

    r = verify_division_properties(h.bundle)
    B = h.bundle
    for x in sorted(B.base):
        fiber = B.fiber(x)
        movers = [g for g in sorted(h.dom.arrows) if h.dom.source[g] == x]
        for p in fiber:
            for q in fiber:
                d = division_map(B, p, q)
                for g in movers:
                    moved = division_map(
                        B, h.left_act[(g, p)], h.left_act[(g, q)]
                    )
                    if moved != d:
                        r.add("division.left-invariance", g, p, q)
    return r


@dataclass(frozen=True)
class HSBundleMorphism:
    """A bundle morphism between the bundles of two bibundles that also
    respects the left actions."""

    source: HSMorphism
    target: HSMorphism
    mapping: dict[str, str]

    def as_bundle_morphism(self) -> BundleMorphism:
        return BundleMorphism(self.source.bundle, self.target.bundle, self.mapping)


def _hs_context(r: ValidationReport, h1: HSMorphism, h2: HSMorphism) -> bool:
    if h1.dom != h2.dom:
        r.add("context.mismatch", note="different domains")
        return False
    if h1.cod != h2.cod:
        r.add("context.mismatch", note="different codomains")
        return False
    return True


def validate_hs_morphism(f: HSBundleMorphism) -> ValidationReport:
    """Bundle morphism laws plus left equivariance (rule
    hs-morphism.left-equivariance, witness (g, p))."""
    r = ValidationReport()
    if not _hs_context(r, f.source, f.target):
        return r
    r.extend(validate_bundle_morphism(f.as_bundle_morphism()))
    sig = f.mapping.get
    for (g, p), gp in sorted(f.source.left_act.items()):
        q, qg = sig(p), sig(gp)
        if q is None or qg is None:
            continue
        if f.target.left_act.get((g, q)) != qg:
            r.add("hs-morphism.left-equivariance", g, p)
    return r


def is_left_invariant_ggt(h1: HSMorphism, h2: HSMorphism, K: GGT) -> bool:
    """Whether K(g.p1, g.p2) == K(p1, p2) throughout."""
    for (p1, p2), k in K.values.items():
        x = h1.bundle.projection[p1]
        for g in h1.dom.arrows:
            if h1.dom.source[g] != x:
                continue
            if K.values[(h1.left_act[(g, p1)], h2.left_act[(g, p2)])] != k:
                return False
    return True


def validate_hs_ggt(h1: HSMorphism, h2: HSMorphism, K: GGT) -> ValidationReport:
    """GGT laws plus invariance under the diagonal left action (rule
    ggt.left-invariance, witness (g, p1, p2))."""
    r = ValidationReport()
    if not _hs_context(r, h1, h2):
        return r
    r.extend(validate_ggt(K))
    for (p1, p2), k in sorted(K.values.items()):
        x = h1.bundle.projection.get(p1)
        for g in sorted(h1.dom.arrows):
            if h1.dom.source[g] != x:
                continue
            q1 = h1.left_act.get((g, p1))
            q2 = h2.left_act.get((g, p2))
            if q1 is None or q2 is None:
                continue
            moved = K.values.get((q1, q2))
            if moved is not None and moved != k:
                r.add("ggt.left-invariance", g, p1, p2)
    return r


def hs_morphism_to_ggt(f: HSBundleMorphism) -> GGT:
    """morphism_to_ggt on the underlying bundles; the result must come
    out left invariant, which is re-checked."""
    K = morphism_to_ggt(f.as_bundle_morphism())
    if not is_left_invariant_ggt(f.source, f.target, K):
        raise IntegrityError("GGT of a left equivariant morphism is not invariant")
    return K


def hs_ggt_to_morphism(h1: HSMorphism, h2: HSMorphism, K: GGT) -> HSBundleMorphism:
    """ggt_to_morphism on the underlying bundles; left equivariance of
    the result is re-checked."""
    f = ggt_to_morphism(K)
    hsm = HSBundleMorphism(h1, h2, f.mapping)
    for (g, p), gp in h1.left_act.items():
        if h2.left_act[(g, f.mapping[p])] != f.mapping[gp]:
            raise IntegrityError(
                "morphism of an invariant GGT is not left equivariant"
            )
    return hsm


def _is_left_invariant_gauge(h: HSMorphism, t: GaugeTransformation) -> bool:
    return all(
        t.values[gp] == t.values[p] for (g, p), gp in h.left_act.items()
    )


def hs_gauge_group(h: HSMorphism) -> GaugeGroup:
    """Gauge transformations of the bundle that are constant on left
    orbits, as a subgroup of gauge_group(h.bundle)."""
    full = gauge_group(h.bundle)
    kept = [t for t in full.elements if _is_left_invariant_gauge(h, t)]
    index = {_gauge_key(t.values): i for i, t in enumerate(kept)}
    G = h.bundle.groupoid
    product = {}
    for i, a in enumerate(kept):
        for j, b in enumerate(kept):
            combined = {
                p: G.mul(a.values[p], b.values[p]) for p in sorted(h.bundle.total)
            }
            key = _gauge_key(combined)
            if key not in index:
                raise IntegrityError("invariant gauge transformations not closed")
            product[(i, j)] = index[key]
    unit_values = {
        p: G.unit[h.bundle.momentum[p]] for p in sorted(h.bundle.total)
    }
    unit = index[_gauge_key(unit_values)]
    inverse = []
    for t in kept:
        inv_values = {p: G.inv(t.values[p]) for p in sorted(h.bundle.total)}
        inverse.append(index[_gauge_key(inv_values)])
    return GaugeGroup(h.bundle, tuple(kept), product, unit, tuple(inverse))


def build_hs_gauge_groupoid(
    hs_list: list[HSMorphism], ids: list[str] | None = None
) -> GaugeGroupoid:
    """The gauge groupoid with arrows cut down to left invariant GGTs.

    Shares the arrow naming scheme with build_gauge_groupoid, so its
    arrow set is comparable with (and contained in) the bundle-level
    one for the same bundle list.  Star composites are re-checked to be
    invariant rather than assumed.
    """
    from .builders import enumerate_ggts
    from .gauge import _ggt_digest, identity_ggt, invert_ggt, star

    if not hs_list:
        raise ValueError("need at least one bibundle")
    for h in hs_list[1:]:
        if h.dom != hs_list[0].dom or h.cod != hs_list[0].cod:
            raise ValueError("bibundles must share domain and codomain")
    if ids is None:
        ids = [f"P{i}" for i in range(len(hs_list))]
    if len(ids) != len(hs_list) or len(set(ids)) != len(ids):
        raise ValueError("need one distinct id per bibundle")
    bundles = [h.bundle for h in hs_list]

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

    def lookup(i: int, j: int, K: GGT, why: str) -> str:
        key = (i, j, tuple(sorted(K.values.items())))
        found = by_key.get(key)
        if found is None:
            raise IntegrityError(
                f"{why} missing from invariant hom({ids[i]}, {ids[j]})"
            )
        return found

    for i, hi in enumerate(hs_list):
        for j, hj in enumerate(hs_list):
            homs[(i, j)] = [
                intern(i, j, K)
                for K in enumerate_ggts(bundles[i], bundles[j])
                if is_left_invariant_ggt(hi, hj, K)
            ]

    source = {}
    target = {}
    for (i, j), names in sorted(homs.items()):
        for aid in names:
            source[aid] = ids[i]
            target[aid] = ids[j]
    unit = {}
    for i, h in enumerate(hs_list):
        K = identity_ggt(h.bundle)
        if not is_left_invariant_ggt(h, h, K):
            raise IntegrityError("identity GGT is not left invariant")
        unit[ids[i]] = lookup(i, i, K, "unit")
    inverse = {}
    compose = {}
    for (i, j), names in sorted(homs.items()):
        for aid in names:
            inverse[aid] = lookup(j, i, invert_ggt(arrows[aid]), "inverse")
    for (j, k), names2 in sorted(homs.items()):
        for (i, j2), names1 in sorted(homs.items()):
            if j2 != j:
                continue
            for a2 in names2:
                for a1 in names1:
                    composite = star(arrows[a2], arrows[a1])
                    if not is_left_invariant_ggt(
                        hs_list[i], hs_list[k], composite
                    ):
                        raise IntegrityError(
                            "star of invariant GGTs lost invariance"
                        )
                    compose[(a2, a1)] = lookup(i, k, composite, "composite")

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
