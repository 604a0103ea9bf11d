import time
from ebelyi.triples import enumerate_triples, Triple, parse_perm, inverse
from ebelyi.belyi import compute_belyi

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
    t0 = time.time()
    try:
        m = compute_belyi(t)
        m.verify()
        print("ok   d=%d %s #%d genus %d %5.2fs" % (d, case, idx, m.genus, time.time() - t0))
    except Exception as e:
        print("FAIL d=%d %s #%d %s: %s" % (d, case, idx, type(e).__name__, e))

# paper examples must stay green
t = Triple((2, 0, 1, 3), (3, 1, 0, 2), (0, 2, 3, 1), (3, 3, 3))
m = compute_belyi(t)
m.verify()
p = m.phi_over_base()
assert [str(f) for f, _ in p.num.squarefree_decomposition()] == ["-8 + (1)*x", "24 + (1)*x"]
print("ex1 ok")
sa = parse_perm("(1,4)(2,5)(3,6)", 6)
sb = parse_perm("(1,3,5)", 6)
sc = parse_perm("(1,4,5,2,3,6)", 6)
m = compute_belyi(Triple(inverse(sa), inverse(sb), inverse(sc), (2, 3, 6)))
m.verify()
print("ex2 ok")
