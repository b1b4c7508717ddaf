"""Principal groupoid bundles and their division maps.

A principal bundle here is a finite set of points with a projection to a
base set, a momentum map into the objects of a groupoid, and a right
action along that momentum.  Principality means the action is free and
transitive on each projection fiber; equivalently (p, g) -> (p, p.g) is
a bijection onto the set of same-fiber pairs.

The division map of a principal bundle sends a same-fiber pair (p, q)
to the unique arrow g with p.g == q.  It is computed once per bundle by
scanning the action table and cached on the instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FiniteGroupoid,
    RightAction,
    ValidationReport,
    _check_total,
    pair_id,
    split_pair,
    validate_action,
)

__all__ = [
    "NotSameFiberError",
    "IntegrityError",
    "PrincipalBundle",
    "validate_bundle",
    "division_map",
    "verify_division_properties",
    "unit_bundle",
    "pullback_bundle",
    "product_bundle",
    "fibred_product",
    "BundleIso",
    "trivialize",
]


class NotSameFiberError(ValueError):
    """Raised when a division is requested across different fibers."""


class IntegrityError(ValueError):
    """Raised when a computation contradicts principality or a theorem."""


@dataclass(frozen=True)
class PrincipalBundle:
    """A candidate principal bundle; validate_bundle decides principality.

    act maps (p, g) to p.g and is defined exactly when
    momentum(p) == target(g); then momentum(p.g) == source(g) and
    projection(p.g) == projection(p).
    """

    groupoid: FiniteGroupoid
    total: frozenset[str]
    base: frozenset[str]
    projection: dict[str, str]
    momentum: dict[str, str]
    act: dict[tuple[str, str], str]

    def ract(self, p: str, g: str) -> str:
        try:
            return self.act[(p, g)]
        except KeyError:
            raise KeyError(f"action undefined: {p!r} by {g!r}") from None

    def fiber(self, m: str) -> tuple[str, ...]:
        """Total points over base point m, sorted."""
        return tuple(
            sorted(p for p in self.total if self.projection.get(p) == m)
        )

    def right_action(self) -> RightAction:
        return RightAction(self.groupoid, self.total, self.momentum, self.act)


def validate_bundle(B: PrincipalBundle) -> ValidationReport:
    """Check that B is a principal bundle, collecting every violation.

    Includes the right action axioms (rules action.* and table.*), the
    projection table, surjectivity and invariance of the projection, and
    fiberwise freeness and transitivity:

    bundle.free        witness (p, g, h): p.g == p.h with g != h
    bundle.transitive  witness (p, q): same fiber, no arrow moves p to q
    """
    r = ValidationReport()
    r.extend(validate_action(B.right_action()))
    _check_total(r, "projection", B.projection, B.total, B.base)

    pi = B.projection.get
    hit = {pi(p) for p in B.total}
    for m in sorted(B.base):
        if m not in hit:
            r.add("bundle.projection-surjective", m)

    for (p, g) in sorted(B.act):
        q = B.act[(p, g)]
        if q not in B.total or p not in B.total:
            continue
        if pi(q) != pi(p):
            r.add("bundle.projection-invariant", p, g)

    # Fiberwise: g -> p.g injective for each p, image all of p's fiber.
    by_point: dict[str, dict[str, str]] = {}
    for (p, g) in sorted(B.act):
        q = B.act[(p, g)]
        if q in B.total:
            by_point.setdefault(p, {})[g] = q
    fibers: dict[str, list[str]] = {}
    for p in sorted(B.total):
        m = pi(p)
        if m in B.base:
            fibers.setdefault(m, []).append(p)
    for m in sorted(fibers):
        for p in fibers[m]:
            seen: dict[str, str] = {}
            for g, q in sorted(by_point.get(p, {}).items()):
                if q in seen and seen[q] != g:
                    r.add("bundle.free", p, seen[q], g)
                seen.setdefault(q, g)
            for q in fibers[m]:
                if q not in seen:
                    r.add("bundle.transitive", p, q)
    return r


def _division_table(B: PrincipalBundle) -> dict[tuple[str, str], tuple[str, ...]]:
    cached = getattr(B, "_division_cache", None)
    if cached is not None:
        return cached
    table: dict[tuple[str, str], list[str]] = {}
    for (p, g) in sorted(B.act):
        q = B.act[(p, g)]
        table.setdefault((p, q), []).append(g)
    frozen = {pq: tuple(sorted(gs)) for pq, gs in table.items()}
    object.__setattr__(B, "_division_cache", frozen)
    return frozen


def division_map(B: PrincipalBundle, p: str, q: str) -> str:
    """The unique arrow g with p.g == q, for p and q in one fiber.

    Raises NotSameFiberError when the points project differently, and
    IntegrityError naming the fiber when the bundle is not principal
    there (no solution, or more than one).
    """
    if p not in B.total or q not in B.total:
        raise KeyError(f"not a total point: {p!r} or {q!r}")
    m = B.projection[p]
    if B.projection[q] != m:
        raise NotSameFiberError(
            f"{p!r} and {q!r} lie over different base points"
        )
    sols = _division_table(B).get((p, q), ())
    if len(sols) == 1:
        return sols[0]
    kind = "no solution" if not sols else "multiple solutions"
    raise IntegrityError(
        f"division of {q!r} by {p!r} has {kind} in the fiber over {m!r}"
    )


def verify_division_properties(B: PrincipalBundle) -> ValidationReport:
    """Check the division map laws exhaustively over same-fiber pairs.

    division.defined       witness (p, q): no unique solution
    division.defining      p . d(p, q) == q
    division.endpoints     d(p, q) runs from momentum(q) to momentum(p)
    division.reflexive     d(p, p) is the unit at momentum(p)
    division.symmetry      d(p, q) == d(q, p)^-1
    division.equivariance  d(p.g1, q.g2) == g1^-1 d(p, q) g2
    """
    r = ValidationReport()
    G = B.groupoid
    fibers = {m: B.fiber(m) for m in sorted(B.base)}
    d: dict[tuple[str, str], str] = {}
    for m in sorted(fibers):
        for p in fibers[m]:
            for q in fibers[m]:
                try:
                    d[(p, q)] = division_map(B, p, q)
                except IntegrityError:
                    r.add("division.defined", p, q)
    for (p, q), g in sorted(d.items()):
        if B.act.get((p, g)) != q:
            r.add("division.defining", p, q)
        if G.source.get(g) != B.momentum.get(q) or G.target.get(g) != B.momentum.get(p):
            r.add("division.endpoints", p, q)
        if p == q and g != G.unit.get(B.momentum.get(p)):
            r.add("division.reflexive", p)
        back = d.get((q, p))
        if back is not None and G.inverse.get(back) != g:
            r.add("division.symmetry", p, q)
    by_point: dict[str, list[str]] = {}
    for (p, g) in sorted(B.act):
        by_point.setdefault(p, []).append(g)
    for (p, q), g in sorted(d.items()):
        for g1 in by_point.get(p, ()):
            p1 = B.act[(p, g1)]
            for g2 in by_point.get(q, ()):
                q2 = B.act[(q, g2)]
                moved = d.get((p1, q2))
                if moved is None:
                    continue
                want = G.mul(G.mul(G.inv(g1), g), g2)
                if moved != want:
                    r.add("division.equivariance", p, q, g1, g2)
    return r


def unit_bundle(G: FiniteGroupoid) -> PrincipalBundle:
    """The groupoid as a bundle over its objects: projection is target,
    momentum is source, and the action is composition.  Its division map
    is d(g, h) = g^-1 h."""
    return PrincipalBundle(
        groupoid=G,
        total=frozenset(G.arrows),
        base=frozenset(G.objects),
        projection=dict(G.target),
        momentum=dict(G.source),
        act=dict(G.compose),
    )


def pullback_bundle(B: PrincipalBundle, f: dict[str, str]) -> PrincipalBundle:
    """Pull B back along f; the new base is f's key set.

    Points are pair_id(m, p) with f(m) == projection(p); the action only
    touches the second component.
    """
    for m in sorted(f):
        if f[m] not in B.base:
            raise ValueError(f"f({m!r}) = {f[m]!r} is not a base point")
    base = frozenset(f)
    total = []
    for m in sorted(f):
        for p in B.fiber(f[m]):
            total.append((m, p))
    projection = {pair_id(m, p): m for m, p in total}
    momentum = {pair_id(m, p): B.momentum[p] for m, p in total}
    act = {}
    for m, p in total:
        for (pp, g), q in B.act.items():
            if pp == p:
                act[(pair_id(m, p), g)] = pair_id(m, q)
    return PrincipalBundle(
        groupoid=B.groupoid,
        total=frozenset(projection),
        base=base,
        projection=projection,
        momentum=momentum,
        act=act,
    )


def product_bundle(B1: PrincipalBundle, B2: PrincipalBundle) -> PrincipalBundle:
    """Componentwise product bundle over the product of the bases."""
    from .core import product_groupoid

    GG = product_groupoid(B1.groupoid, B2.groupoid)
    total = [(p1, p2) for p1 in sorted(B1.total) for p2 in sorted(B2.total)]
    projection = {
        pair_id(p1, p2): pair_id(B1.projection[p1], B2.projection[p2])
        for p1, p2 in total
    }
    momentum = {
        pair_id(p1, p2): pair_id(B1.momentum[p1], B2.momentum[p2])
        for p1, p2 in total
    }
    act = {}
    for (p1, g1), q1 in sorted(B1.act.items()):
        for (p2, g2), q2 in sorted(B2.act.items()):
            act[(pair_id(p1, p2), pair_id(g1, g2))] = pair_id(q1, q2)
    return PrincipalBundle(
        groupoid=GG,
        total=frozenset(projection),
        base=frozenset(projection.values()),
        projection=projection,
        momentum=momentum,
        act=act,
    )


def fibred_product(B1: PrincipalBundle, B2: PrincipalBundle) -> PrincipalBundle:
    """Pairs of points over one base point, as a bundle for the product
    groupoid over the shared base."""
    if B1.base != B2.base:
        raise ValueError("fibred product needs a shared base")
    from .core import product_groupoid

    GG = product_groupoid(B1.groupoid, B2.groupoid)
    total = []
    for m in sorted(B1.base):
        for p1 in B1.fiber(m):
            for p2 in B2.fiber(m):
                total.append((m, p1, p2))
    projection = {pair_id(p1, p2): m for m, p1, p2 in total}
    momentum = {
        pair_id(p1, p2): pair_id(B1.momentum[p1], B2.momentum[p2])
        for m, p1, p2 in total
    }
    act = {}
    for m, p1, p2 in total:
        for g1 in sorted(B1.groupoid.arrows):
            if B1.act.get((p1, g1)) is None:
                continue
            for g2 in sorted(B2.groupoid.arrows):
                if B2.act.get((p2, g2)) is None:
                    continue
                act[(pair_id(p1, p2), pair_id(g1, g2))] = pair_id(
                    B1.act[(p1, g1)], B2.act[(p2, g2)]
                )
    return PrincipalBundle(
        groupoid=GG,
        total=frozenset(projection),
        base=frozenset(B1.base),
        projection=projection,
        momentum=momentum,
        act=act,
    )


@dataclass(frozen=True)
class BundleIso:
    """A mutually inverse pair of bundle maps produced by trivialize."""

    source: PrincipalBundle
    target: PrincipalBundle
    forward: dict[str, str]
    backward: dict[str, str]


def _restrict(B: PrincipalBundle, U: frozenset[str]) -> PrincipalBundle:
    total = frozenset(p for p in B.total if B.projection[p] in U)
    return PrincipalBundle(
        groupoid=B.groupoid,
        total=total,
        base=U,
        projection={p: B.projection[p] for p in B.projection if p in total},
        momentum={p: B.momentum[p] for p in B.momentum if p in total},
        act={k: v for k, v in B.act.items() if k[0] in total},
    )


def trivialize(B: PrincipalBundle, section: dict[str, str]) -> BundleIso:
    """Trivialize B over the domain of a section.

    section maps base points to total points lying over them; its key
    set is the open piece.  The result identifies the restriction of B
    with the pullback of the unit bundle along m -> momentum(section(m)),
    via p -> (projection(p), d(section(projection(p)), p)) and back via
    (m, g) -> section(m).g.  Both directions are built and checked to be
    mutually inverse and equivariant.
    """
    for m in sorted(section):
        if m not in B.base:
            raise ValueError(f"not a base point: {m!r}")
        p = section[m]
        if p not in B.total or B.projection[p] != m:
            raise ValueError(f"not a section at {m!r}: {p!r}")
    U = frozenset(section)
    restricted = _restrict(B, U)
    alpha = {m: B.momentum[section[m]] for m in sorted(section)}
    trivial = pullback_bundle(unit_bundle(B.groupoid), alpha)

    forward = {}
    for p in sorted(restricted.total):
        m = B.projection[p]
        forward[p] = pair_id(m, division_map(B, section[m], p))
    backward = {}
    for mp in sorted(trivial.total):
        m, g = split_pair(mp)
        backward[mp] = B.act[(section[m], g)]

    for p in sorted(restricted.total):
        if backward[forward[p]] != p:
            raise IntegrityError(f"trivialization does not invert at {p!r}")
    for mp in sorted(trivial.total):
        if forward[backward[mp]] != mp:
            raise IntegrityError(f"trivialization does not invert at {mp!r}")
    for (p, g), q in sorted(restricted.act.items()):
        if trivial.act[(forward[p], g)] != forward[q]:
            raise IntegrityError(f"trivialization not equivariant at ({p!r}, {g!r})")
    return BundleIso(restricted, trivial, forward, backward)
