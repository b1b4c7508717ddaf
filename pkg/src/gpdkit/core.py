"""Finite groupoids as explicit lookup tables.

A groupoid is a finite set of arrows over a finite set of objects with
five structure tables: source, target, unit, inverse and a partial
composition table.  Composition is written "g1 after g2": the pair
(g1, g2) is composable exactly when source(g1) == target(g2), and the
composite runs from source(g2) to target(g1).

Everything is table driven, so validation can be exhaustive.  Validators
never raise on bad input; they return a ValidationReport listing every
violation found.  Rules prefixed "table." flag malformed tables (missing
entries, entries off the declared domain, ids that were never declared);
all other rules are axioms, each reported with a witness tuple that pins
down one failing instance.

Ids are opaque strings.  Applying a structure table outside its domain
raises KeyError; there are no default values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = [
    "Violation",
    "ValidationReport",
    "FiniteGroupoid",
    "validate_groupoid",
    "isotropy_group",
    "pair_id",
    "split_pair",
    "product_groupoid",
    "GroupoidMorphism",
    "validate_morphism",
    "LeftAction",
    "RightAction",
    "validate_action",
    "transporters",
    "is_free",
    "is_transitive",
    "generalized_conjugation",
    "CONJUGATION_VARIANTS",
    "EquivariantMapWitness",
    "validate_equivariant_map",
]


@dataclass(frozen=True)
class Violation:
    """One failed check: a rule id plus the ids witnessing the failure."""

    rule: str
    witness: tuple[str, ...]
    note: str = ""

    def __str__(self) -> str:
        text = f"{self.rule}[{','.join(self.witness)}]"
        return f"{text} {self.note}" if self.note else text


@dataclass
class ValidationReport:
    """Exhaustive list of violations; empty means the subject is valid."""

    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, *witness: str, note: str = "") -> None:
        self.violations.append(Violation(rule, tuple(witness), note))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.rule, v.witness, v.note))

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def render(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class FiniteGroupoid:
    """A finite groupoid given by its structure tables.

    compose maps (g1, g2) to the composite "g1 after g2" and is defined
    exactly on the pairs with source(g1) == target(g2).  Construction
    does not validate; run validate_groupoid for that.
    """

    objects: frozenset[str]
    arrows: frozenset[str]
    source: dict[str, str]
    target: dict[str, str]
    unit: dict[str, str]
    inverse: dict[str, str]
    compose: dict[tuple[str, str], str]

    def s(self, g: str) -> str:
        return self.source[g]

    def t(self, g: str) -> str:
        return self.target[g]

    def u(self, x: str) -> str:
        return self.unit[x]

    def inv(self, g: str) -> str:
        return self.inverse[g]

    def mul(self, g1: str, g2: str) -> str:
        try:
            return self.compose[(g1, g2)]
        except KeyError:
            raise KeyError(f"not composable: {g1!r} after {g2!r}") from None

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        """Arrows from x to y, sorted."""
        return tuple(
            sorted(
                g
                for g in self.arrows
                if self.source[g] == x and self.target[g] == y
            )
        )

    def by_source(self) -> dict[str, list[str]]:
        index: dict[str, list[str]] = {x: [] for x in sorted(self.objects)}
        for g in sorted(self.arrows):
            index.setdefault(self.source[g], []).append(g)
        return index

    def by_target(self) -> dict[str, list[str]]:
        index: dict[str, list[str]] = {x: [] for x in sorted(self.objects)}
        for g in sorted(self.arrows):
            index.setdefault(self.target[g], []).append(g)
        return index


def _check_total(
    r: ValidationReport,
    name: str,
    table: dict,
    keys: frozenset[str],
    values: frozenset[str],
) -> None:
    # A total table: one entry per key, every value a declared id.
    for k in sorted(keys):
        if k not in table:
            r.add(f"table.{name}.missing", k)
    for k in sorted(table):
        if k not in keys:
            r.add(f"table.{name}.unknown-key", str(k))
        elif table[k] not in values:
            r.add(f"table.{name}.dangling", k, str(table[k]))


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom over the whole of G's tables.

    All violations are collected; nothing short-circuits.  Rule ids:

    table.*                  malformed tables (reported separately from axioms)
    product.source/.target   endpoints of composites
    unit.endpoints/.left/.right
    inverse.endpoints/.left/.right
    associativity            over all composable triples
    derived.source-surjective, derived.target-surjective
                             consequences of the unit laws, checked so a
                             broken unit table cannot mask them
    """
    r = ValidationReport()
    obj, arr = G.objects, G.arrows
    _check_total(r, "source", G.source, arr, obj)
    _check_total(r, "target", G.target, arr, obj)
    _check_total(r, "unit", G.unit, obj, arr)
    _check_total(r, "inverse", G.inverse, arr, arr)

    src, tgt = G.source, G.target
    known = [
        g
        for g in sorted(arr)
        if src.get(g) in obj and tgt.get(g) in obj
    ]
    by_target: dict[str, list[str]] = {}
    for g in known:
        by_target.setdefault(tgt[g], []).append(g)

    composable: set[tuple[str, str]] = set()
    for g1 in known:
        for g2 in by_target.get(src[g1], ()):
            composable.add((g1, g2))
            if (g1, g2) not in G.compose:
                r.add("table.compose.missing", g1, g2)
    for (g1, g2), g3 in sorted(G.compose.items()):
        if g1 not in arr or g2 not in arr:
            r.add("table.compose.unknown-key", g1, g2)
        elif g1 in known and g2 in known and (g1, g2) not in composable:
            r.add("table.compose.extra", g1, g2)
        if g3 not in arr:
            r.add("table.compose.dangling", g1, g2, g3)

    mul = G.compose.get
    unit = G.unit.get
    inv = G.inverse.get

    for g1, g2 in sorted(composable):
        g3 = mul((g1, g2))
        if g3 is None or g3 not in arr:
            continue
        if src.get(g3) != src[g2]:
            r.add("product.source", g1, g2, g3)
        if tgt.get(g3) != tgt[g1]:
            r.add("product.target", g1, g2, g3)

    for x in sorted(obj):
        e = unit(x)
        if e is None or e not in arr:
            continue
        if src.get(e) != x or tgt.get(e) != x:
            r.add("unit.endpoints", x, e)

    for g in known:
        e_t = unit(tgt[g])
        if e_t is not None:
            p = mul((e_t, g))
            if p is not None and p != g:
                r.add("unit.left", g)
        e_s = unit(src[g])
        if e_s is not None:
            p = mul((g, e_s))
            if p is not None and p != g:
                r.add("unit.right", g)

    for g in known:
        h = inv(g)
        if h is None or h not in arr or h not in known:
            continue
        if src[h] != tgt[g] or tgt[h] != src[g]:
            r.add("inverse.endpoints", g, h)
        e_t, e_s = unit(tgt[g]), unit(src[g])
        p = mul((g, h))
        if p is not None and e_t is not None and p != e_t:
            r.add("inverse.right", g)
        q = mul((h, g))
        if q is not None and e_s is not None and q != e_s:
            r.add("inverse.left", g)

    for g1 in known:
        for g2 in by_target.get(src[g1], ()):
            a = mul((g1, g2))
            for g3 in by_target.get(src[g2], ()):
                b = mul((g2, g3))
                left = mul((a, g3)) if a is not None else None
                right = mul((g1, b)) if b is not None else None
                if left is not None and right is not None and left != right:
                    r.add("associativity", g1, g2, g3)

    hit_s = {src[g] for g in known}
    hit_t = {tgt[g] for g in known}
    for x in sorted(obj):
        if x not in hit_s:
            r.add("derived.source-surjective", x)
        if x not in hit_t:
            r.add("derived.target-surjective", x)
    return r


def isotropy_group(G: FiniteGroupoid, x: str) -> FiniteGroupoid:
    """The one-object groupoid on x whose arrows run from x to x."""
    if x not in G.objects:
        raise KeyError(f"not an object: {x!r}")
    arrows = G.hom(x, x)
    return FiniteGroupoid(
        objects=frozenset({x}),
        arrows=frozenset(arrows),
        source={g: x for g in arrows},
        target={g: x for g in arrows},
        unit={x: G.unit[x]},
        inverse={g: G.inverse[g] for g in arrows},
        compose={(a, b): G.compose[(a, b)] for a in arrows for b in arrows},
    )


def pair_id(a: str, b: str) -> str:
    """Canonical id for an ordered pair of ids; JSON, so always splittable."""
    return json.dumps([a, b], separators=(",", ":"))


def split_pair(ab: str) -> tuple[str, str]:
    a, b = json.loads(ab)
    return a, b


def product_groupoid(G1: FiniteGroupoid, G2: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise product; objects and arrows get pair_id ids."""
    objects = frozenset(
        pair_id(x1, x2) for x1 in G1.objects for x2 in G2.objects
    )
    arrows = frozenset(
        pair_id(g1, g2) for g1 in G1.arrows for g2 in G2.arrows
    )
    source = {}
    target = {}
    inverse = {}
    for g1 in sorted(G1.arrows):
        for g2 in sorted(G2.arrows):
            g = pair_id(g1, g2)
            source[g] = pair_id(G1.source[g1], G2.source[g2])
            target[g] = pair_id(G1.target[g1], G2.target[g2])
            inverse[g] = pair_id(G1.inverse[g1], G2.inverse[g2])
    unit = {
        pair_id(x1, x2): pair_id(G1.unit[x1], G2.unit[x2])
        for x1 in sorted(G1.objects)
        for x2 in sorted(G2.objects)
    }
    compose = {}
    for (a1, b1), c1 in sorted(G1.compose.items()):
        for (a2, b2), c2 in sorted(G2.compose.items()):
            compose[(pair_id(a1, a2), pair_id(b1, b2))] = pair_id(c1, c2)
    return FiniteGroupoid(objects, arrows, source, target, unit, inverse, compose)


@dataclass(frozen=True)
class GroupoidMorphism:
    """A functor between groupoids: an object map and an arrow map."""

    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    object_map: dict[str, str]
    arrow_map: dict[str, str]


def validate_morphism(m: GroupoidMorphism) -> ValidationReport:
    """Check functoriality of m over every arrow and composable pair.

    Compatibility with inversion follows from the other laws; it is still
    checked, under the separate rule "derived.morphism-inverse", so the
    report stays exhaustive.
    """
    r = ValidationReport()
    G, H = m.domain, m.codomain
    _check_total(r, "object_map", m.object_map, G.objects, H.objects)
    _check_total(r, "arrow_map", m.arrow_map, G.arrows, H.arrows)
    phi = m.object_map.get
    F = m.arrow_map.get

    for g in sorted(G.arrows):
        h = F(g)
        if h is None or h not in H.arrows:
            continue
        if H.source.get(h) != phi(G.source[g]):
            r.add("morphism.source", g)
        if H.target.get(h) != phi(G.target[g]):
            r.add("morphism.target", g)
        hi = F(G.inverse[g])
        if hi is not None and H.inverse.get(h) != hi:
            r.add("derived.morphism-inverse", g)

    for x in sorted(G.objects):
        y = phi(x)
        e = F(G.unit[x])
        if y is None or e is None:
            continue
        if H.unit.get(y) != e:
            r.add("morphism.unit", x)

    for (g1, g2), g3 in sorted(G.compose.items()):
        h1, h2, h3 = F(g1), F(g2), F(g3)
        if h1 is None or h2 is None or h3 is None:
            continue
        h12 = H.compose.get((h1, h2))
        if h12 is not None and h12 != h3:
            r.add("morphism.product", g1, g2)
    return r


@dataclass(frozen=True)
class LeftAction:
    """A left groupoid action on a carrier set along a momentum map.

    act maps (g, m) to g.m and is defined exactly when
    source(g) == momentum(m); then momentum(g.m) == target(g).
    """

    groupoid: FiniteGroupoid
    carrier: frozenset[str]
    momentum: dict[str, str]
    act: dict[tuple[str, str], str]

    def apply(self, g: str, m: str) -> str:
        try:
            return self.act[(g, m)]
        except KeyError:
            raise KeyError(f"action undefined: {g!r} on {m!r}") from None


@dataclass(frozen=True)
class RightAction:
    """A right groupoid action; act maps (m, g) to m.g.

    Defined exactly when momentum(m) == target(g); then
    momentum(m.g) == source(g).
    """

    groupoid: FiniteGroupoid
    carrier: frozenset[str]
    momentum: dict[str, str]
    act: dict[tuple[str, str], str]

    def apply(self, m: str, g: str) -> str:
        try:
            return self.act[(m, g)]
        except KeyError:
            raise KeyError(f"action undefined: {m!r} by {g!r}") from None


def validate_action(A: LeftAction | RightAction) -> ValidationReport:
    """Check the action axioms of A exhaustively.

    Covers domain exactness of the act table (rules table.act.*), the
    momentum law, compatibility with composition and the unit law.
    """
    r = ValidationReport()
    G = A.groupoid
    _check_total(r, "momentum", A.momentum, A.carrier, G.objects)
    left = isinstance(A, LeftAction)
    J = A.momentum.get

    anchored: dict[str, list[str]] = {}
    for m in sorted(A.carrier):
        x = J(m)
        if x in G.objects:
            anchored.setdefault(x, []).append(m)

    endpoint = G.source if left else G.target
    expected: set[tuple[str, str]] = set()
    for g in sorted(G.arrows):
        for m in anchored.get(endpoint[g], ()):
            key = (g, m) if left else (m, g)
            expected.add(key)
            if key not in A.act:
                r.add("table.act.missing", *key)
    for key in sorted(A.act):
        a, b = key
        g, m = (a, b) if left else (b, a)
        if g not in G.arrows or m not in A.carrier:
            r.add("table.act.unknown-key", a, b)
        elif key not in expected:
            r.add("table.act.extra", a, b)
        elif A.act[key] not in A.carrier:
            r.add("table.act.dangling", a, b, A.act[key])

    def out(key):
        v = A.act.get(key)
        return v if v in A.carrier else None

    for key in sorted(expected):
        res = out(key)
        if res is None:
            continue
        g, m = key if left else (key[1], key[0])
        want = G.target[g] if left else G.source[g]
        if J(res) != want:
            r.add("action.momentum", *key)

    if left:
        for (g2, m) in sorted(expected):
            step = out((g2, m))
            if step is None:
                continue
            for g1 in sorted(G.arrows):
                if G.source[g1] != G.target[g2]:
                    continue
                one = out((g1, step))
                g12 = G.compose.get((g1, g2))
                both = out((g12, m)) if g12 is not None else None
                if one is not None and both is not None and one != both:
                    r.add("action.compose", g1, g2, m)
    else:
        for (m, g1) in sorted(expected):
            step = out((m, g1))
            if step is None:
                continue
            for g2 in sorted(G.arrows):
                if G.target[g2] != G.source[g1]:
                    continue
                one = out((step, g2))
                g12 = G.compose.get((g1, g2))
                both = out((m, g12)) if g12 is not None else None
                if one is not None and both is not None and one != both:
                    r.add("action.compose", m, g1, g2)

    for m in sorted(A.carrier):
        x = J(m)
        if x not in G.objects:
            continue
        e = G.unit.get(x)
        if e is None:
            continue
        res = out((e, m) if left else (m, e))
        if res is not None and res != m:
            r.add("action.unit", m)
    return r


def transporters(A: LeftAction | RightAction, m1: str, m2: str) -> tuple[str, ...]:
    """All arrows moving m1 to m2 under A, sorted."""
    if isinstance(A, LeftAction):
        found = (g for (g, m), res in A.act.items() if m == m1 and res == m2)
    else:
        found = (g for (m, g), res in A.act.items() if m == m1 and res == m2)
    return tuple(sorted(found))


def is_free(A: LeftAction | RightAction) -> tuple[bool, tuple[str, str] | None]:
    """Whether only units fix carrier points; returns a counterexample if not."""
    G = A.groupoid
    for key in sorted(A.act):
        if A.act[key] not in A.carrier:
            continue
        g, m = key if isinstance(A, LeftAction) else (key[1], key[0])
        if A.act[key] == m and g != G.unit.get(A.momentum[m]):
            return False, (g, m)
    return True, None


def is_transitive(
    A: LeftAction | RightAction,
) -> tuple[bool, tuple[str, str] | None]:
    """Whether every carrier point reaches every other; counterexample if not.

    When the action is also free the connecting arrow is unique; that
    uniqueness is what transporters exposes.
    """
    for m1 in sorted(A.carrier):
        for m2 in sorted(A.carrier):
            if not transporters(A, m1, m2):
                return False, (m1, m2)
    return True, None


CONJUGATION_VARIANTS = ("left", "left_bar", "right", "right_bar")


def generalized_conjugation(
    G: FiniteGroupoid, variant: str = "left"
) -> LeftAction | RightAction:
    """Conjugation-style action of G x G on the arrows of G.

    variant "left":       (g1, g2) . m = g1 m g2^-1, momentum m -> (target(m), source(m))
    variant "left_bar":   (g1, g2) . m = g2 m g1^-1, momentum m -> (source(m), target(m))
    variant "right":      m . (g1, g2) = g1^-1 m g2, momentum m -> (target(m), source(m))
    variant "right_bar":  m . (g1, g2) = g2^-1 m g1, momentum m -> (source(m), target(m))

    Left variants return a LeftAction of product_groupoid(G, G), right
    variants a RightAction.  Restricting a left variant to pairs (g, g)
    with m in an isotropy group recovers ordinary conjugation.
    """
    if variant not in CONJUGATION_VARIANTS:
        raise ValueError(f"unknown variant: {variant!r}")
    GG = product_groupoid(G, G)
    carrier = frozenset(G.arrows)
    flip = variant in ("left_bar", "right_bar")
    momentum = {
        m: pair_id(G.source[m], G.target[m]) if flip else pair_id(G.target[m], G.source[m])
        for m in sorted(G.arrows)
    }
    by_source = G.by_source()
    by_target = G.by_target()
    act: dict[tuple[str, str], str] = {}
    for m in sorted(G.arrows):
        s_m, t_m = G.source[m], G.target[m]
        if variant == "left":
            for g1 in by_source.get(t_m, ()):
                for g2 in by_source.get(s_m, ()):
                    res = G.mul(G.mul(g1, m), G.inv(g2))
                    act[(pair_id(g1, g2), m)] = res
        elif variant == "left_bar":
            for g1 in by_source.get(s_m, ()):
                for g2 in by_source.get(t_m, ()):
                    res = G.mul(G.mul(g2, m), G.inv(g1))
                    act[(pair_id(g1, g2), m)] = res
        elif variant == "right":
            for g1 in by_target.get(t_m, ()):
                for g2 in by_target.get(s_m, ()):
                    res = G.mul(G.mul(G.inv(g1), m), g2)
                    act[(m, pair_id(g1, g2))] = res
        else:
            for g1 in by_target.get(s_m, ()):
                for g2 in by_target.get(t_m, ()):
                    res = G.mul(G.mul(G.inv(g2), m), g1)
                    act[(m, pair_id(g1, g2))] = res
    if variant.startswith("left"):
        return LeftAction(GG, carrier, momentum, act)
    return RightAction(GG, carrier, momentum, act)


@dataclass(frozen=True)
class EquivariantMapWitness:
    """A candidate equivariant map between two actions of one groupoid."""

    source: LeftAction | RightAction
    target: LeftAction | RightAction
    mapping: dict[str, str]


def validate_equivariant_map(w: EquivariantMapWitness) -> ValidationReport:
    """Check that w.mapping preserves momentum and intertwines the actions."""
    A, B = w.source, w.target
    if type(A) is not type(B):
        raise ValueError("actions must be on the same side")
    if A.groupoid != B.groupoid:
        raise ValueError("actions must share their groupoid")
    r = ValidationReport()
    _check_total(r, "mapping", w.mapping, A.carrier, B.carrier)
    f = w.mapping.get

    for m in sorted(A.carrier):
        fm = f(m)
        if fm is None or fm not in B.carrier:
            continue
        if B.momentum.get(fm) != A.momentum.get(m):
            r.add("equivariant.momentum", m)

    left = isinstance(A, LeftAction)
    for key in sorted(A.act):
        res = A.act[key]
        if res not in A.carrier:
            continue
        g, m = key if left else (key[1], key[0])
        fm, fres = f(m), f(res)
        if fm is None or fres is None:
            continue
        other = B.act.get((g, fm) if left else (fm, g))
        if other is not None and other != fres:
            r.add("equivariant.compat", *key)
    return r
