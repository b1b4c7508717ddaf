"""Constructors, seeded random generators and enumeration oracles.

The make_* functions build standard examples from raw tables and refuse
broken input with an error naming the failed condition.  The random_*
generators are deterministic in their GeneratorSpec: equal specs give
bit-identical structures, and outputs are asserted valid before they
are returned.

enumerate_bundle_morphisms and enumerate_ggts are brute-force oracles.
They deliberately share no code with morphism_to_ggt, ggt_to_morphism
or the division-map machinery: fibers are solved by scanning the raw
action tables, candidates are spread pointwise and re-checked against
the defining laws.  Both refuse inputs larger than their bounds instead
of truncating; bounds come from the argument, or the environment
variable GPDKIT_ORACLE_BOUNDS, or the defaults.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass

from .bundles import PrincipalBundle, unit_bundle, validate_bundle
from .core import (
    FiniteGroupoid,
    GroupoidMorphism,
    isotropy_group,
    pair_id,
    validate_groupoid,
    validate_morphism,
)
from .gauge import GGT, BundleMorphism
from .hs import HSMorphism, hs_from_groupoid_morphism, validate_hs

__all__ = [
    "GeneratorError",
    "OracleBoundError",
    "group_table",
    "GROUP_NAMES",
    "make_group_groupoid",
    "make_pair_groupoid",
    "make_action_groupoid",
    "make_gauge_groupoid_example",
    "GeneratorSpec",
    "random_groupoid",
    "random_bundle",
    "random_hs",
    "OracleBounds",
    "ORACLE_BOUNDS_ENV",
    "oracle_bounds",
    "enumerate_bundle_morphisms",
    "enumerate_ggts",
    "fixture_documents",
]


class GeneratorError(RuntimeError):
    """A generator could not satisfy its size bounds."""


class OracleBoundError(RuntimeError):
    """An enumeration oracle refused an input above its bounds."""


def _cyclic(n: int) -> dict[tuple[str, str], str]:
    labels = ["e"] + [f"c{i}" for i in range(1, n)]
    return {
        (labels[i], labels[j]): labels[(i + j) % n]
        for i in range(n)
        for j in range(n)
    }


def _klein() -> dict[tuple[str, str], str]:
    labels = ["e", "a", "b", "c"]
    bits = {"e": (0, 0), "a": (0, 1), "b": (1, 0), "c": (1, 1)}
    back = {v: k for k, v in bits.items()}
    return {
        (x, y): back[(bits[x][0] ^ bits[y][0], bits[x][1] ^ bits[y][1])]
        for x in labels
        for y in labels
    }


def _sym3() -> dict[tuple[str, str], str]:
    perms = sorted(itertools.permutations(range(3)))
    label = {p: "".join(map(str, p)) for p in perms}
    table = {}
    for p in perms:
        for q in perms:
            comp = tuple(p[q[i]] for i in range(3))
            table[(label[p], label[q])] = label[comp]
    return table


_GROUP_TABLES = {
    "trivial": {("e", "e"): "e"},
    "z2": {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "e"},
    "z3": _cyclic(3),
    "z4": _cyclic(4),
    "v4": _klein(),
    "s3": _sym3(),
}

GROUP_NAMES = ("trivial", "z2", "z3", "z4", "v4", "s3")


def group_table(name: str) -> dict[tuple[str, str], str]:
    """A small group multiplication table by name; see GROUP_NAMES."""
    try:
        return dict(_GROUP_TABLES[name])
    except KeyError:
        raise KeyError(f"unknown group {name!r}, have {GROUP_NAMES}") from None


def _group_unit(table: dict[tuple[str, str], str], elements: list[str]) -> str:
    for e in elements:
        if all(
            table.get((e, x)) == x and table.get((x, e)) == x for x in elements
        ):
            return e
    raise ValueError("multiplication table has no two-sided identity")


def _group_inverses(
    table: dict[tuple[str, str], str], elements: list[str], e: str
) -> dict[str, str]:
    inv = {}
    for x in elements:
        for y in elements:
            if table.get((x, y)) == e and table.get((y, x)) == e:
                inv[x] = y
                break
        else:
            raise ValueError(f"multiplication table has no inverse for {x!r}")
    return inv


def make_group_groupoid(
    table: dict[tuple[str, str], str], object_id: str = "*"
) -> FiniteGroupoid:
    """A one-object groupoid from a group multiplication table.

    The table must be total on its elements, have a two-sided identity,
    inverses and be associative; the error message names whichever
    condition breaks first.
    """
    elements = sorted({x for k in table for x in k})
    for x in elements:
        for y in elements:
            if (x, y) not in table:
                raise ValueError(f"multiplication table missing entry ({x!r}, {y!r})")
            if table[(x, y)] not in elements:
                raise ValueError(
                    f"multiplication table value {table[(x, y)]!r} is not an element"
                )
    e = _group_unit(table, elements)
    inv = _group_inverses(table, elements, e)
    G = FiniteGroupoid(
        objects=frozenset({object_id}),
        arrows=frozenset(elements),
        source={x: object_id for x in elements},
        target={x: object_id for x in elements},
        unit={object_id: e},
        inverse=inv,
        compose=dict(table),
    )
    report = validate_groupoid(G)
    if not report.ok:
        raise ValueError(f"not a group table: {report.render()}")
    return G


def make_pair_groupoid(points: int | list[str]) -> FiniteGroupoid:
    """The pair groupoid: one arrow (y,x) from x to y for each pair."""
    if isinstance(points, int):
        points = [str(i) for i in range(points)]
    points = sorted(points)

    def aid(y: str, x: str) -> str:
        return f"({y},{x})"

    arrows = {aid(y, x) for y in points for x in points}
    source = {aid(y, x): x for y in points for x in points}
    target = {aid(y, x): y for y in points for x in points}
    unit = {x: aid(x, x) for x in points}
    inverse = {aid(y, x): aid(x, y) for y in points for x in points}
    compose = {
        (aid(z, y), aid(y, x)): aid(z, x)
        for z in points
        for y in points
        for x in points
    }
    return FiniteGroupoid(
        frozenset(points), frozenset(arrows), source, target, unit, inverse, compose
    )


def make_action_groupoid(
    table: dict[tuple[str, str], str],
    carrier: list[str],
    action: dict[tuple[str, str], str],
) -> FiniteGroupoid:
    """The action groupoid of a group acting on a set.

    Arrows are pairs (g, m) from m to g.m; (g1, m1) after (g2, m2) is
    composable exactly when m1 == g2.m2 and equals (g1 g2, m2).  The
    action table must be a genuine left group action.
    """
    group = make_group_groupoid(table)
    e = next(iter(group.unit.values()))
    elements = sorted(group.arrows)
    carrier = sorted(carrier)
    for g in elements:
        for m in carrier:
            if (g, m) not in action:
                raise ValueError(f"action table missing entry ({g!r}, {m!r})")
            if action[(g, m)] not in carrier:
                raise ValueError(f"action value {action[(g, m)]!r} not in carrier")
    for m in carrier:
        if action[(e, m)] != m:
            raise ValueError(f"identity does not fix {m!r}")
    for g1 in elements:
        for g2 in elements:
            for m in carrier:
                if action[(g1, action[(g2, m)])] != action[(table[(g1, g2)], m)]:
                    raise ValueError(
                        f"action not compatible at ({g1!r}, {g2!r}, {m!r})"
                    )

    arrows = [(g, m) for g in elements for m in carrier]
    source = {pair_id(g, m): m for g, m in arrows}
    target = {pair_id(g, m): action[(g, m)] for g, m in arrows}
    unit = {m: pair_id(e, m) for m in carrier}
    inverse = {
        pair_id(g, m): pair_id(group.inverse[g], action[(g, m)]) for g, m in arrows
    }
    compose = {}
    for g1, m1 in arrows:
        for g2, m2 in arrows:
            if m1 == action[(g2, m2)]:
                compose[(pair_id(g1, m1), pair_id(g2, m2))] = pair_id(
                    table[(g1, g2)], m2
                )
    G = FiniteGroupoid(
        frozenset(carrier),
        frozenset(source),
        source,
        target,
        unit,
        inverse,
        compose,
    )
    report = validate_groupoid(G)
    assert report.ok, report.render()
    return G


def make_gauge_groupoid_example(
    table: dict[tuple[str, str], str],
    total: list[str],
    base: list[str],
    projection: dict[str, str],
    action: dict[tuple[str, str], str],
) -> FiniteGroupoid:
    """The gauge groupoid of an ordinary principal group bundle.

    Arrows are diagonal orbits [p, q] of pairs of total points, from the
    base point under q to the one under p; composition transports the
    second factor through the unique group element matching the middle
    points.  The input action must be free and transitive on fibers.
    """
    group = make_group_groupoid(table)
    e = next(iter(group.unit.values()))
    elements = sorted(group.arrows)
    total = sorted(total)
    base = sorted(base)
    for p in total:
        if projection.get(p) not in base:
            raise ValueError(f"projection missing or dangling at {p!r}")
        for g in elements:
            if (p, g) not in action:
                raise ValueError(f"action table missing entry ({p!r}, {g!r})")
            if action[(p, g)] not in total:
                raise ValueError(f"action value {action[(p, g)]!r} not a point")
    covered = {projection[p] for p in total}
    for m in base:
        if m not in covered:
            raise ValueError(f"projection misses base point {m!r}")
    for p in total:
        if action[(p, e)] != p:
            raise ValueError(f"identity does not fix {p!r}")
        for g1 in elements:
            for g2 in elements:
                if action[(action[(p, g1)], g2)] != action[(p, table[(g1, g2)])]:
                    raise ValueError(
                        f"action not compatible at ({p!r}, {g1!r}, {g2!r})"
                    )
        for g in elements:
            if projection[action[(p, g)]] != projection[p]:
                raise ValueError(f"action leaves the fiber at ({p!r}, {g!r})")
            if action[(p, g)] == p and g != e:
                raise ValueError(f"not principal: not free at ({p!r}, {g!r})")
    fibers: dict[str, list[str]] = {}
    for p in total:
        fibers.setdefault(projection[p], []).append(p)
    for m, fib in sorted(fibers.items()):
        for p in fib:
            reach = {action[(p, g)] for g in elements}
            for q in fib:
                if q not in reach:
                    raise ValueError(
                        f"not principal: fiber over {m!r} not transitive at "
                        f"({p!r}, {q!r})"
                    )

    def orbit_rep(p: str, q: str) -> tuple[str, str]:
        return min((action[(p, g)], action[(q, g)]) for g in elements)

    def transporter(p: str, q: str) -> str:
        for g in elements:
            if action[(p, g)] == q:
                return g
        raise AssertionError("transitivity was checked above")

    reps = sorted({orbit_rep(p, q) for p in total for q in total})
    aid = {rep: pair_id(*rep) for rep in reps}
    source = {aid[(p, q)]: projection[q] for p, q in reps}
    target = {aid[(p, q)]: projection[p] for p, q in reps}
    unit = {m: aid[orbit_rep(fib[0], fib[0])] for m, fib in sorted(fibers.items())}
    inverse = {aid[(p, q)]: aid[orbit_rep(q, p)] for p, q in reps}
    compose = {}
    for p1, q1 in reps:
        for p2, q2 in reps:
            if projection[q1] != projection[p2]:
                continue
            g = transporter(p2, q1)
            compose[(aid[(p1, q1)], aid[(p2, q2)])] = aid[
                orbit_rep(p1, action[(q2, g)])
            ]
    G = FiniteGroupoid(
        frozenset(base),
        frozenset(aid.values()),
        source,
        target,
        unit,
        inverse,
        compose,
    )
    report = validate_groupoid(G)
    assert report.ok, report.render()
    return G


@dataclass(frozen=True)
class GeneratorSpec:
    """Seed and size bounds for the random generators."""

    seed: int
    max_objects: int = 4
    max_group_order: int = 6
    max_base: int = 4
    max_total: int = 16


_GROUP_ORDERS = (
    ("trivial", 1),
    ("z2", 2),
    ("z3", 3),
    ("z4", 4),
    ("v4", 4),
    ("s3", 6),
)


def random_groupoid(spec: GeneratorSpec) -> FiniteGroupoid:
    """A random disjoint union of blocks, each a pair groupoid of some
    objects combined with a small group.  Deterministic in spec."""
    rng = random.Random(f"groupoid:{spec.seed}")
    remaining = rng.randint(1, spec.max_objects)
    sizes = []
    while remaining:
        size = rng.randint(1, remaining)
        sizes.append(size)
        remaining -= size
    names = [n for n, order in _GROUP_ORDERS if order <= spec.max_group_order]

    objects: list[str] = []
    source: dict[str, str] = {}
    target: dict[str, str] = {}
    unit: dict[str, str] = {}
    inverse: dict[str, str] = {}
    compose: dict[tuple[str, str], str] = {}
    counter = 0
    for size in sizes:
        block = [f"x{len(objects) + i}" for i in range(size)]
        objects.extend(block)
        name = rng.choice(names)
        table = _GROUP_TABLES[name]
        elements = sorted({x for k in table for x in k})
        e = _group_unit(table, elements)
        ginv = _group_inverses(table, elements, e)
        aid: dict[tuple[str, str, str], str] = {}
        for y in block:
            for x in block:
                for c in elements:
                    aid[(y, x, c)] = f"a{counter}"
                    counter += 1
        for (y, x, c), a in aid.items():
            source[a] = x
            target[a] = y
            inverse[a] = aid[(x, y, ginv[c])]
        for x in block:
            unit[x] = aid[(x, x, e)]
        for z in block:
            for y in block:
                for x in block:
                    for c1 in elements:
                        for c2 in elements:
                            compose[(aid[(z, y, c1)], aid[(y, x, c2)])] = aid[
                                (z, x, table[(c1, c2)])
                            ]
    G = FiniteGroupoid(
        frozenset(objects),
        frozenset(source),
        source,
        target,
        unit,
        inverse,
        compose,
    )
    report = validate_groupoid(G)
    assert report.ok, report.render()
    return G


def random_bundle(G: FiniteGroupoid, base_size: int, spec: GeneratorSpec) -> PrincipalBundle:
    """A random principal G-bundle with relabeled points.

    Built as a pullback of the unit bundle along a random anchor map,
    then relabeled.  The base holds at most base_size points and is
    trimmed to respect spec.max_total; at least one point must fit.
    Deterministic in (G, base_size, spec).
    """
    if base_size < 1:
        raise ValueError("base_size must be at least 1")
    rng = random.Random(f"bundle:{spec.seed}")
    by_target: dict[str, list[str]] = {x: [] for x in sorted(G.objects)}
    for g in sorted(G.arrows):
        by_target[G.target[g]].append(g)
    budget = spec.max_total
    alpha: dict[str, str] = {}
    for i in range(max(1, base_size)):
        fitting = sorted(x for x in G.objects if len(by_target[x]) <= budget)
        if not fitting:
            break
        x = rng.choice(fitting)
        alpha[f"m{i}"] = x
        budget -= len(by_target[x])
    if not alpha:
        raise GeneratorError(
            f"no fiber fits in a total space of {spec.max_total} points"
        )

    points = [(m, g) for m in sorted(alpha) for g in by_target[alpha[m]]]
    shuffled = list(points)
    rng.shuffle(shuffled)
    label = {pt: f"p{i}" for i, pt in enumerate(shuffled)}
    projection = {label[(m, g)]: m for m, g in points}
    momentum = {label[(m, g)]: G.source[g] for m, g in points}
    act = {}
    for m, g in points:
        for h in sorted(G.arrows):
            if G.target[h] != G.source[g]:
                continue
            act[(label[(m, g)], h)] = label[(m, G.compose[(g, h)])]
    B = PrincipalBundle(
        groupoid=G,
        total=frozenset(projection),
        base=frozenset(alpha),
        projection=projection,
        momentum=momentum,
        act=act,
    )
    report = validate_bundle(B)
    assert report.ok, report.render()
    return B


def _components(G: FiniteGroupoid) -> list[list[str]]:
    parent = {x: x for x in G.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in sorted(G.arrows):
        a, b = find(G.source[g]), find(G.target[g])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[str, list[str]] = {}
    for x in sorted(G.objects):
        groups.setdefault(find(x), []).append(x)
    return [groups[root] for root in sorted(groups)]


def _spanning_arrows(G: FiniteGroupoid, component: list[str]) -> dict[str, str]:
    # tau[x] is an arrow from the component basepoint to x.
    x0 = min(component)
    tau = {x0: G.unit[x0]}
    frontier = [x0]
    while frontier:
        x = frontier.pop(0)
        for g in sorted(G.arrows):
            if G.source[g] == x and G.target[g] not in tau:
                tau[G.target[g]] = G.mul(g, tau[x])
                frontier.append(G.target[g])
            elif G.target[g] == x and G.source[g] not in tau:
                tau[G.source[g]] = G.mul(G.inv(g), tau[x])
                frontier.append(G.source[g])
    return tau


def _group_homs(
    G: FiniteGroupoid, dom: tuple[str, ...], H: FiniteGroupoid, cod: tuple[str, ...]
) -> list[dict[str, str]]:
    # All multiplicative maps dom -> cod between two isotropy groups.
    homs = []
    for images in itertools.product(cod, repeat=len(dom)):
        rho = dict(zip(dom, images))
        if all(
            rho[G.mul(a, b)] == H.mul(rho[a], rho[b]) for a in dom for b in dom
        ):
            homs.append(rho)
    return homs


def random_hs(G: FiniteGroupoid, H: FiniteGroupoid, spec: GeneratorSpec) -> HSMorphism:
    """A random bibundle from G to H, deterministic in (G, H, spec).

    Realizes a random groupoid morphism: per component of G it picks a
    target object, a multiplicative map between isotropy groups and a
    conjugating arrow per object, then pulls the unit bundle back and
    relabels the points.  Falls back to the cheapest constant morphism
    when spec.max_total would be exceeded, and fails if even that does
    not fit.
    """
    rng = random.Random(f"hs:{spec.seed}")
    fiber_size = {y: 0 for y in H.objects}
    for k in H.arrows:
        fiber_size[H.target[k]] += 1

    def assemble(pick) -> GroupoidMorphism:
        object_map: dict[str, str] = {}
        arrow_map: dict[str, str] = {}
        for component in _components(G):
            tau = _spanning_arrows(G, component)
            iso = tuple(sorted(isotropy_group(G, min(component)).arrows))
            y0, rho, u = pick(component, iso)
            for x in component:
                object_map[x] = H.target[u[x]]
            for g in sorted(G.arrows):
                x, y = G.source[g], G.target[g]
                if x not in tau:
                    continue
                gamma = G.mul(G.mul(G.inv(tau[y]), g), tau[x])
                arrow_map[g] = H.mul(H.mul(u[y], rho[gamma]), H.inv(u[x]))
        return GroupoidMorphism(G, H, object_map, arrow_map)

    def rich_pick(component, iso):
        y0 = rng.choice(sorted(H.objects))
        cod = tuple(sorted(isotropy_group(H, y0).arrows))
        homs = _group_homs(G, iso, H, cod)
        rho = rng.choice(homs)
        outgoing = sorted(k for k in H.arrows if H.source[k] == y0)
        u = {x: rng.choice(outgoing) for x in sorted(component)}
        return y0, rho, u

    def minimal_pick(component, iso):
        y0 = min(sorted(H.objects), key=lambda y: (fiber_size[y], y))
        unit_cod = H.unit[y0]
        rho = {c: unit_cod for c in iso}
        u = {x: unit_cod for x in sorted(component)}
        return y0, rho, u

    morphism = assemble(rich_pick)
    total = sum(fiber_size[morphism.object_map[x]] for x in G.objects)
    if total > spec.max_total:
        morphism = assemble(minimal_pick)
        total = sum(fiber_size[morphism.object_map[x]] for x in G.objects)
        if total > spec.max_total:
            raise GeneratorError(
                f"cheapest bibundle needs {total} points, bound is {spec.max_total}"
            )
    report = validate_morphism(morphism)
    assert report.ok, report.render()

    h = hs_from_groupoid_morphism(morphism)
    shuffled = sorted(h.bundle.total)
    rng.shuffle(shuffled)
    label = {p: f"q{i}" for i, p in enumerate(shuffled)}
    bundle = PrincipalBundle(
        groupoid=h.bundle.groupoid,
        total=frozenset(label.values()),
        base=h.bundle.base,
        projection={label[p]: m for p, m in h.bundle.projection.items()},
        momentum={label[p]: x for p, x in h.bundle.momentum.items()},
        act={(label[p], k): label[q] for (p, k), q in h.bundle.act.items()},
    )
    relabeled = HSMorphism(
        h.dom,
        h.cod,
        bundle,
        {(g, label[p]): label[q] for (g, p), q in h.left_act.items()},
    )
    report = validate_hs(relabeled)
    assert report.ok, report.render()
    return relabeled


@dataclass(frozen=True)
class OracleBounds:
    """Refusal thresholds for the enumeration oracles."""

    max_total: int = 16
    max_arrows: int = 36
    max_base: int = 6


ORACLE_BOUNDS_ENV = "GPDKIT_ORACLE_BOUNDS"


def oracle_bounds() -> OracleBounds:
    """The default bounds, overridable via GPDKIT_ORACLE_BOUNDS, e.g.
    "total=24,arrows=48,base=8" (unnamed fields keep their defaults)."""
    raw = os.environ.get(ORACLE_BOUNDS_ENV, "")
    kwargs = {}
    if raw.strip():
        for piece in raw.split(","):
            name, _, value = piece.partition("=")
            key = {"total": "max_total", "arrows": "max_arrows", "base": "max_base"}.get(
                name.strip()
            )
            if key is None or not value.strip().isdigit():
                raise ValueError(
                    f"cannot parse {ORACLE_BOUNDS_ENV}: bad piece {piece!r}"
                )
            kwargs[key] = int(value)
    return OracleBounds(**kwargs)


def _check_bounds(B1: PrincipalBundle, B2: PrincipalBundle, bounds: OracleBounds) -> None:
    for B in (B1, B2):
        if len(B.total) > bounds.max_total:
            raise OracleBoundError(
                f"refusing enumeration: {len(B.total)} points exceeds "
                f"{bounds.max_total}; raise {ORACLE_BOUNDS_ENV} to override"
            )
    if len(B1.groupoid.arrows) > bounds.max_arrows:
        raise OracleBoundError(
            f"refusing enumeration: {len(B1.groupoid.arrows)} arrows exceeds "
            f"{bounds.max_arrows}; raise {ORACLE_BOUNDS_ENV} to override"
        )
    if len(B1.base) > bounds.max_base:
        raise OracleBoundError(
            f"refusing enumeration: {len(B1.base)} base points exceeds "
            f"{bounds.max_base}; raise {ORACLE_BOUNDS_ENV} to override"
        )


def _oracle_context(B1: PrincipalBundle, B2: PrincipalBundle, bounds) -> OracleBounds:
    if B1.groupoid != B2.groupoid or B1.base != B2.base:
        raise ValueError("enumeration needs a shared base and groupoid")
    resolved = bounds if bounds is not None else oracle_bounds()
    _check_bounds(B1, B2, resolved)
    return resolved


def enumerate_bundle_morphisms(
    B1: PrincipalBundle, B2: PrincipalBundle, bounds: OracleBounds | None = None
) -> tuple[BundleMorphism, ...]:
    """All bundle morphisms B1 -> B2, by fiberwise brute force.

    Per base point, each candidate image of one basepoint is spread
    through the fiber along the raw action tables and kept only when
    that spreading is single-valued and covers the fiber; the assembled
    maps are then re-checked against all three morphism laws.
    """
    _oracle_context(B1, B2, bounds)
    per_fiber: list[list[dict[str, str]]] = []
    for m in sorted(B1.base):
        fib1, fib2 = B1.fiber(m), B2.fiber(m)
        p = fib1[0] if fib1 else None
        local: list[dict[str, str]] = []
        if p is None:
            per_fiber.append([{}])
            continue
        moves = sorted(
            (g, q) for (pp, g), q in B1.act.items() if pp == p
        )
        for q in fib2:
            if B2.momentum[q] != B1.momentum[p]:
                continue
            candidate = {p: q}
            good = True
            for g, p2 in moves:
                q2 = B2.act.get((q, g))
                if q2 is None or candidate.get(p2, q2) != q2:
                    good = False
                    break
                candidate[p2] = q2
            if good and set(candidate) == set(fib1):
                local.append(candidate)
        per_fiber.append(local)

    results = []
    for pieces in itertools.product(*per_fiber):
        mapping: dict[str, str] = {}
        for piece in pieces:
            mapping.update(piece)
        ok = all(
            B2.projection[mapping[p]] == B1.projection[p]
            and B2.momentum[mapping[p]] == B1.momentum[p]
            for p in B1.total
        ) and all(
            B2.act.get((mapping[p], g)) == mapping[q]
            for (p, g), q in B1.act.items()
        )
        if ok:
            results.append(BundleMorphism(B1, B2, mapping))
    results.sort(key=lambda f: tuple(sorted(f.mapping.items())))
    return tuple(results)


def enumerate_ggts(
    B1: PrincipalBundle, B2: PrincipalBundle, bounds: OracleBounds | None = None
) -> tuple[GGT, ...]:
    """All generalized gauge transformations B1 -> B2, by brute force.

    Per base point, every arrow with matching feet at a representative
    pair is spread through the fiber block with the equivariance law,
    using transport arrows solved from the raw action tables, and the
    block is re-checked in full before being kept.
    """
    _oracle_context(B1, B2, bounds)
    G = B1.groupoid

    def moves_index(B: PrincipalBundle) -> dict[str, list[tuple[str, str]]]:
        idx: dict[str, list[tuple[str, str]]] = {p: [] for p in B.total}
        for (p, g), q in sorted(B.act.items()):
            idx[p].append((g, q))
        return idx

    moves1, moves2 = moves_index(B1), moves_index(B2)

    def transports(
        moves: dict[str, list[tuple[str, str]]], r: str, fib
    ) -> dict[str, str] | None:
        # unique arrow moving r to each fiber point, from the act table
        found: dict[str, list[str]] = {q: [] for q in fib}
        for g, q in moves[r]:
            if q in found:
                found[q].append(g)
        out = {}
        for q, gs in found.items():
            if len(gs) != 1:
                return None
            out[q] = gs[0]
        return out

    per_fiber: list[list[dict[tuple[str, str], str]]] = []
    for m in sorted(B1.base):
        fib1, fib2 = B1.fiber(m), B2.fiber(m)
        if not fib1 or not fib2:
            per_fiber.append([{}])
            continue
        r1, r2 = fib1[0], fib2[0]
        t1 = transports(moves1, r1, fib1)
        t2 = transports(moves2, r2, fib2)
        if t1 is None or t2 is None:
            per_fiber.append([])
            continue
        local: list[dict[tuple[str, str], str]] = []
        feet = sorted(
            k
            for k in G.arrows
            if G.source[k] == B1.momentum[r1] and G.target[k] == B2.momentum[r2]
        )
        for k in feet:
            block = {}
            for q1 in fib1:
                for q2 in fib2:
                    block[(q1, q2)] = G.mul(G.mul(G.inv(t2[q2]), k), t1[q1])
            consistent = True
            for (q1, q2), v in block.items():
                if (
                    G.source[v] != B1.momentum[q1]
                    or G.target[v] != B2.momentum[q2]
                ):
                    consistent = False
                    break
                for g1, moved1 in moves1[q1]:
                    for g2, moved2 in moves2[q2]:
                        if block[(moved1, moved2)] != G.mul(
                            G.mul(G.inv(g2), v), g1
                        ):
                            consistent = False
                            break
                    if not consistent:
                        break
                if not consistent:
                    break
            if consistent:
                local.append(block)
        per_fiber.append(local)

    results = []
    for pieces in itertools.product(*per_fiber):
        values: dict[tuple[str, str], str] = {}
        for piece in pieces:
            values.update(piece)
        results.append(GGT(B1, B2, values))
    results.sort(key=lambda K: tuple(sorted(K.values.items())))
    return tuple(results)


def fixture_documents() -> dict[str, object]:
    """The shipped example structures, keyed by conventional file name."""
    z2 = make_group_groupoid(group_table("z2"))
    swap = {("e", "0"): "0", ("e", "1"): "1", ("a", "0"): "1", ("a", "1"): "0"}
    points = [f"{m}.{c}" for m in ("m0", "m1") for c in ("e", "a")]
    z2t = group_table("z2")
    action = {
        (f"{m}.{c}", g): f"{m}.{z2t[(c, g)]}"
        for m in ("m0", "m1")
        for c in ("e", "a")
        for g in ("e", "a")
    }
    return {
        "z2.gpd": z2,
        "s3.gpd": make_group_groupoid(group_table("s3")),
        "pair2.gpd": make_pair_groupoid(2),
        "pair3.gpd": make_pair_groupoid(3),
        "z2-swap.gpd": make_action_groupoid(group_table("z2"), ["0", "1"], swap),
        "gauge-z2.gpd": make_gauge_groupoid_example(
            group_table("z2"),
            points,
            ["m0", "m1"],
            {p: p.split(".")[0] for p in points},
            action,
        ),
        "unit-z2.bnd": unit_bundle(z2),
    }
