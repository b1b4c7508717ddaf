"""Bundle morphisms, GGTs, gauge groups and the gauge groupoid."""

from __future__ import annotations

import pytest

from gpdkit import (
    GGT,
    BundleMorphism,
    GaugeTransformation,
    GeneratorError,
    GeneratorSpec,
    IntegrityError,
    build_gauge_groupoid,
    check_division_invariance,
    division_map,
    enumerate_bundle_morphisms,
    enumerate_ggts,
    gauge_group,
    gauge_to_ggt,
    ggt_to_gauge,
    ggt_to_morphism,
    identity_ggt,
    invert_ggt,
    isotropy_group,
    morphism_to_ggt,
    pullback_bundle,
    random_bundle,
    random_groupoid,
    star,
    unit_bundle,
    validate_bundle_morphism,
    validate_gauge_transformation,
    validate_ggt,
    validate_groupoid,
)


def _ggt_table(K: GGT) -> tuple:
    return tuple(sorted(K.values.items()))


def test_identity_ggt_is_inverted_division(unit_z2):
    K = identity_ggt(unit_z2)
    assert validate_ggt(K).ok
    assert K.apply("e", "a") == "a"
    assert K.apply("a", "e") == "a"
    assert K.apply("e", "e") == "e"
    for (p, q), k in K.values.items():
        assert k == division_map(unit_z2, q, p)


def test_ggt_apply_rejects_cross_fiber_pairs(unit_pair2):
    K = identity_ggt(unit_pair2)
    with pytest.raises(KeyError, match="not a same-fiber pair"):
        K.apply("(0,0)", "(1,1)")


def test_validate_ggt_flags_each_law(unit_z2):
    K = identity_ggt(unit_z2)
    values = dict(K.values)
    values[("e", "a")] = "e"
    report = validate_ggt(GGT(unit_z2, unit_z2, values))
    assert "ggt.equivariance" in report.rules()

    values = {key: "e" if key == ("e", "e") else v for key, v in K.values.items()}
    del values[("e", "a")]
    report = validate_ggt(GGT(unit_z2, unit_z2, values))
    assert "table.values.missing" in report.rules()


def test_invert_and_star_satisfy_group_laws(unit_z2, unit_s3):
    for B in (unit_z2, unit_s3):
        ident = identity_ggt(B)
        for K in enumerate_ggts(B, B):
            assert _ggt_table(star(invert_ggt(K), K)) == _ggt_table(ident)
            assert _ggt_table(star(K, invert_ggt(K))) == _ggt_table(ident)
            assert _ggt_table(star(K, ident)) == _ggt_table(K)
            assert _ggt_table(star(ident, K)) == _ggt_table(K)


def test_star_rejects_mismatched_middle(unit_z2, unit_s3):
    with pytest.raises(ValueError, match="middle bundles differ"):
        star(identity_ggt(unit_z2), identity_ggt(unit_s3))


def test_morphism_ggt_round_trip(unit_z2):
    morphisms = enumerate_bundle_morphisms(unit_z2, unit_z2)
    assert len(morphisms) == 2
    for f in morphisms:
        assert validate_bundle_morphism(f).ok
        K = morphism_to_ggt(f)
        assert validate_ggt(K).ok
        assert ggt_to_morphism(K).mapping == f.mapping
    ggts = enumerate_ggts(unit_z2, unit_z2)
    assert len(ggts) == 2
    for K in ggts:
        assert _ggt_table(morphism_to_ggt(ggt_to_morphism(K))) == _ggt_table(K)


def test_ggt_to_morphism_rechecks_independence(unit_z2):
    K = identity_ggt(unit_z2)
    values = dict(K.values)
    # Endpoints stay legal but the two interpolating points now disagree.
    values[("e", "e")] = "a"
    with pytest.raises(IntegrityError, match="interpolating point"):
        ggt_to_morphism(GGT(unit_z2, unit_z2, values))


def test_validate_bundle_morphism_flags_each_law(unit_z2, unit_s3):
    f = BundleMorphism(unit_z2, unit_z2, {"e": "a", "a": "a"})
    report = validate_bundle_morphism(f)
    assert "morphism.momentum" in report.rules() or "morphism.equivariance" in report.rules()
    assert "derived.bijective" in report.rules()

    report = validate_bundle_morphism(
        BundleMorphism(unit_z2, unit_s3, {"e": "012", "a": "021"})
    )
    assert "context.mismatch" in report.rules()


def test_gauge_transformation_laws(unit_s3, s3):
    gg = gauge_group(unit_s3)
    for t in gg.elements:
        assert validate_gauge_transformation(t).ok
    broken = dict(gg.elements[gg.unit].values)
    broken["012"] = "120"
    report = validate_gauge_transformation(GaugeTransformation(unit_s3, broken))
    assert "gauge.equivariance" in report.rules()

    off = {p: "120" for p in unit_s3.total}
    # values stay isotropy arrows on a one-object groupoid, but the
    # conjugation law fails for a non-central value
    report = validate_gauge_transformation(GaugeTransformation(unit_s3, off))
    assert "gauge.equivariance" in report.rules()


def test_gauge_group_orders(unit_z2, unit_s3, unit_pair2):
    assert gauge_group(unit_z2).order == 2
    assert gauge_group(unit_s3).order == 6
    assert gauge_group(unit_pair2).order == 1


def test_gauge_group_table_matches_the_group(unit_s3, s3):
    gg = gauge_group(unit_s3)
    rep = min(unit_s3.fiber("*"))
    index = {t.values[rep]: i for i, t in enumerate(gg.elements)}
    assert len(index) == len(s3.arrows)
    for c1 in sorted(s3.arrows):
        for c2 in sorted(s3.arrows):
            assert gg.product[(index[c1], index[c2])] == index[s3.mul(c1, c2)]
    assert gg.elements[gg.unit].values[rep] == s3.unit["*"]
    for c in sorted(s3.arrows):
        assert gg.inverse[index[c]] == index[s3.inv(c)]


def test_gauge_ggt_round_trip(unit_s3):
    gg = gauge_group(unit_s3)
    for t in gg.elements:
        K = gauge_to_ggt(t)
        assert validate_ggt(K).ok
        assert ggt_to_gauge(K).values == t.values
    with pytest.raises(ValueError, match="itself"):
        ggt_to_gauge(GGT(unit_s3, pullback_bundle(unit_s3, {"n": "*"}), {}))


def test_division_invariance_of_enumerated_morphisms(unit_z2, unit_s3):
    for B in (unit_z2, unit_s3):
        for f in enumerate_bundle_morphisms(B, B):
            assert check_division_invariance(f).ok


def test_gauge_groupoid_of_twin_unit_bundles(unit_z2):
    twin = pullback_bundle(unit_z2, {m: m for m in unit_z2.base})
    gg = build_gauge_groupoid([unit_z2, twin], ids=["P0", "P1"])
    assert len(gg.groupoid.arrows) == 8
    assert validate_groupoid(gg.groupoid).ok
    for i, B in enumerate((unit_z2, twin)):
        pid = gg.bundle_ids[i]
        iso = isotropy_group(gg.groupoid, pid)
        mine = {_ggt_table(gg.ggts[a]) for a in iso.arrows}
        theirs = {_ggt_table(gauge_to_ggt(t)) for t in gauge_group(B).elements}
        assert mine == theirs


def test_gauge_groupoid_units_and_inverses_are_the_stated_ones(unit_z2):
    gg = build_gauge_groupoid([unit_z2])
    pid = gg.bundle_ids[0]
    unit_arrow = gg.groupoid.unit[pid]
    assert _ggt_table(gg.ggts[unit_arrow]) == _ggt_table(identity_ggt(unit_z2))
    for a in gg.groupoid.arrows:
        flipped = gg.groupoid.inverse[a]
        assert _ggt_table(gg.ggts[flipped]) == _ggt_table(invert_ggt(gg.ggts[a]))


def test_gauge_groupoid_on_random_pair():
    seed = 0
    while True:
        G = random_groupoid(GeneratorSpec(seed, max_objects=2, max_group_order=4))
        try:
            b1 = random_bundle(G, 2, GeneratorSpec(seed + 10, max_total=10))
            b2 = random_bundle(G, 2, GeneratorSpec(seed + 20, max_total=10))
        except GeneratorError:
            seed += 1
            continue
        if b1.base == b2.base:
            break
        seed += 1
    gg = build_gauge_groupoid([b1, b2])
    assert validate_groupoid(gg.groupoid).ok
    assert len(gg.groupoid.hom("P0", "P1")) == len(enumerate_ggts(b1, b2))


def test_gauge_groupoid_input_checks(unit_z2, unit_s3):
    with pytest.raises(ValueError, match="at least one bundle"):
        build_gauge_groupoid([])
    with pytest.raises(ValueError, match="share base and groupoid"):
        build_gauge_groupoid([unit_z2, unit_s3])
    with pytest.raises(ValueError, match="one distinct id"):
        build_gauge_groupoid([unit_z2], ids=["P0", "P1"])
