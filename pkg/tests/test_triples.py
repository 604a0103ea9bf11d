import pytest
from hypothesis import given, strategies as st

from ebelyi.errors import (
    DegreeMismatch,
    InputError,
    NotEuclidean,
    NotTransitive,
    RelationViolated,
)
from ebelyi.triples import (
    Triple,
    canonical_key,
    cycle_type,
    enumerate_triples,
    format_perm,
    identity,
    inverse,
    make_triple,
    order,
    parse_perm,
    then,
)

perms = st.integers(2, 7).flatmap(lambda d: st.permutations(range(d))).map(tuple)


def test_then_applies_left_factor_first():
    p = (1, 0, 2)
    q = (0, 2, 1)
    r = then(p, q)
    for x in range(3):
        assert r[x] == q[p[x]]


@given(perms)
def test_inverse_cancels(p):
    assert then(p, inverse(p)) == identity(len(p))
    assert then(inverse(p), p) == identity(len(p))


@given(perms)
def test_format_parse_roundtrip(p):
    assert parse_perm(format_perm(p), len(p)) == p


def test_parse_perm_forms():
    assert parse_perm("(1 2 3)") == (1, 2, 0)
    assert parse_perm("(1,2,3)") == (1, 2, 0)
    assert parse_perm("(1 2)(3 4)") == (1, 0, 3, 2)
    assert parse_perm("(2 4)", 5) == (0, 3, 2, 1, 4)
    assert parse_perm("id", 3) == (0, 1, 2)
    assert parse_perm("()", 2) == (0, 1)


def test_parse_perm_rejects_garbage():
    with pytest.raises(InputError):
        parse_perm("id")  # no degree to infer
    with pytest.raises(InputError):
        parse_perm("(1 2")
    with pytest.raises(InputError):
        parse_perm("(0 1)")
    with pytest.raises(InputError):
        parse_perm("(1 2)(2 3)")
    with pytest.raises(InputError):
        parse_perm("1 2 3")
    with pytest.raises(DegreeMismatch):
        parse_perm("(1 5)", 3)


def test_triple_validation_errors():
    rho = parse_perm("(1 2 3)")
    with pytest.raises(RelationViolated):
        make_triple(rho, rho, parse_perm("(1 3 2)"), (3, 3, 3))
    sa = parse_perm("(1 2 3)(4 5 6)")
    with pytest.raises(NotTransitive):
        make_triple(sa, inverse(sa), identity(6), (3, 3, 3))
    # five-cycles compose to the identity but no Euclidean case fits
    f = (1, 2, 3, 4, 0)
    sc = inverse(then(f, f))
    with pytest.raises(NotEuclidean):
        make_triple(f, f, sc)
    with pytest.raises(NotEuclidean):
        Triple(f, f, sc, (2, 3, 7))


def test_case_inference():
    t = make_triple((2, 0, 1, 3), (3, 1, 0, 2), (0, 2, 3, 1))
    assert t.case == (3, 3, 3)
    # all-identity orders fit every case, so inference must refuse
    with pytest.raises(NotEuclidean):
        make_triple(identity(1), identity(1), identity(1))


def test_passport_and_genus():
    t = Triple((2, 0, 1, 3), (3, 1, 0, 2), (0, 2, 3, 1), (3, 3, 3))
    assert t.passport() == ((3, 1), (3, 1), (3, 1))
    assert t.genus() == 0
    rho = (1, 2, 0)
    torus = Triple(rho, rho, rho, (3, 3, 3))
    assert torus.genus() == 1


@given(perms)
def test_cycle_type_is_a_partition(p):
    ct = cycle_type(p)
    assert sum(ct) == len(p)
    assert list(ct) == sorted(ct, reverse=True)
    assert order(p) >= max(ct)


@given(st.permutations(range(4)).map(tuple))
def test_canonical_key_conjugation_invariant(t):
    base = Triple((2, 0, 1, 3), (3, 1, 0, 2), (0, 2, 3, 1), (3, 3, 3))
    moved = base.conjugated(t)
    assert canonical_key(*moved.perms) == canonical_key(*base.perms)
    assert moved.passport() == base.passport()


def test_enumeration_counts_small_degrees():
    want = {
        ((2, 3, 6), 1): 1,
        ((3, 3, 3), 1): 1,
        ((2, 4, 4), 1): 1,
        ((2, 3, 6), 2): 1,
        ((3, 3, 3), 2): 0,
        ((2, 4, 4), 2): 3,
        ((2, 3, 6), 3): 2,
        ((3, 3, 3), 3): 4,
        ((2, 4, 4), 3): 0,
        ((2, 3, 6), 4): 1,
        ((3, 3, 3), 4): 1,
        ((2, 4, 4), 4): 7,
        ((2, 3, 6), 5): 0,
        ((3, 3, 3), 5): 0,
        ((2, 4, 4), 5): 2,
        ((2, 3, 6), 6): 5,
        ((3, 3, 3), 6): 1,
        ((2, 4, 4), 6): 2,
    }
    for (case, d), n in want.items():
        assert len(enumerate_triples(case, d)) == n, (case, d)


def test_enumeration_yields_sorted_canonical_representatives():
    for case in ((2, 3, 6), (3, 3, 3), (2, 4, 4)):
        ts = enumerate_triples(case, 4)
        keys = [canonical_key(*t.perms) for t in ts]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)
        for t in ts:
            assert canonical_key(*t.perms) == t.perms
