from ebelyi.triples import enumerate_triples, format_perm
from ebelyi.triangle import normalize
from ebelyi.isogeny import build_isogeny

targets = [
    (2, (2, 3, 6), 0),
    (3, (3, 3, 3), 0),
    (3, (3, 3, 3), 1),
    (3, (2, 3, 6), 0),
    (4, (2, 4, 4), 0),
    (4, (2, 4, 4), 5),
    (6, (2, 3, 6), 0),
    (6, (2, 3, 6), 3),
]
for d, case, idx in targets:
    t = enumerate_triples(case, d)[idx]
    norm = normalize(t)
    print("d=%d %s #%d  sa=%s sb=%s sc=%s" % (d, case, idx,
          format_perm(t.a), format_perm(t.b), format_perm(t.c)))
    print("   passport:", t.passport())
    print("   origin_role:", norm.origin_role, " role_map:", norm.role_map)
    nt = norm.triple
    print("   norm triple: sa=%s sb=%s sc=%s  d=%d" % (
        format_perm(nt.a), format_perm(nt.b), format_perm(nt.c), nt.d))
    print("   norm passport:", nt.passport())
    c = norm.cover
    print("   cover: n1=%s n2=%s m2=%s N=%s r=%s" % (c.n1, c.n2, c.m2, c.N, c.r))
    print()
