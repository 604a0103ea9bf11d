from ebelyi.algebra.fields import Cyc
from ebelyi.triangle import (
    CASE_DATA,
    Affine,
    CoverData,
    normalize,
    sheet_lattice,
    word_affine,
)
from ebelyi.triples import Triple, cycle_of, cycle_type, enumerate_triples, identity


def small_triples(dmax=5):
    for d in range(1, dmax + 1):
        for case in CASE_DATA:
            yield from enumerate_triples(case, d)


def test_rotations_compose_to_identity():
    # apply a, then b, then c
    for case in CASE_DATA.values():
        eye = Affine(Cyc(case.kind, 1), Cyc(case.kind, 0))
        assert word_affine("cba", case) == eye


def test_rotation_fixes_its_vertex():
    for case in CASE_DATA.values():
        for role, rot in case.delta.items():
            assert rot(case.vertex[role]) == case.vertex[role]


def test_rotation_multipliers_have_declared_order():
    for case in CASE_DATA.values():
        for role, o in zip("abc", case.orders):
            u = case.delta[role].u
            assert u**o == Cyc(case.kind, 1)
            for k in range(1, o):
                assert u**k != Cyc(case.kind, 1)


def test_lattice_words_are_independent_translations():
    for case in CASE_DATA.values():
        w1, w2 = case.w1, case.w2
        assert not w1.is_zero() and not w2.is_zero()
        # independence over Q: the ratio is not rational
        assert (w2 / w1).b != 0


def test_identity_triple_has_full_sheet_lattice():
    for case in CASE_DATA:
        t = Triple(identity(1), identity(1), identity(1), case)
        assert sheet_lattice(t) == (1, 0, 1)
        cov = CoverData(t)
        assert cov.N == 1
        assert cov.r == case[2]


def test_cover_invariants_small_degrees():
    for t in small_triples():
        cov = CoverData(t)
        assert cov.N == cov.n1 * cov.m2
        assert cov.r * t.d == t.case[2] * cov.N
        assert 0 <= cov.n2 < cov.m2
        assert (cov.genus == 1) == (cov.r == 1)


def test_normalize_keeps_cycle_types_up_to_role_map():
    for t in small_triples():
        norm = normalize(t)
        by_role = dict(zip("abc", t.perms))
        for slot, role in zip(norm.triple.perms, "abc"):
            assert cycle_type(slot) == cycle_type(by_role[norm.role_map[role]])


def test_normalize_marks_a_usable_origin():
    for t in small_triples():
        norm = normalize(t)
        cov = norm.cover
        if cov.r == 1:
            assert norm.origin_role is None
            continue
        by_role = dict(zip("abc", norm.triple.perms))
        o = dict(zip("abc", t.case))[norm.origin_role]
        assert o % cov.r == 0
        # sheet 1 sits in a cycle whose length matches the reduced order
        assert len(cycle_of(by_role[norm.origin_role], 0)) == o // cov.r


def test_normalize_prefers_the_c_vertex():
    # with all orders equal the relabeling can always park the origin at c
    for t in enumerate_triples((3, 3, 3), 4):
        norm = normalize(t)
        if norm.origin_role is not None:
            assert norm.origin_role == "c"
