import time
from ebelyi.triples import enumerate_triples
from ebelyi.belyi import compute_belyi

fails = []
t00 = time.time()
for d in range(1, 9):
    for case in ((3, 3, 3), (2, 4, 4), (2, 3, 6)):
        for i, t in enumerate(enumerate_triples(case, d)):
            t0 = time.time()
            try:
                m = compute_belyi(t)
                m.verify()
                dt = time.time() - t0
                twr = "K'%d" % m.tower.degree if (m.tower is not None and not m.tower.is_trivial()) else "-"
                print("ok  d=%d %s #%d genus %d %6.2fs %s" % (d, case, i, m.genus, dt, twr), flush=True)
            except Exception as e:
                dt = time.time() - t0
                print("FAIL d=%d %s #%d %6.2fs %s: %s" % (d, case, i, dt, type(e).__name__, e), flush=True)
                fails.append((d, case, t, e))
print("total %.1fs, %d failures" % (time.time() - t00, len(fails)), flush=True)
for d, case, t, e in fails:
    print("---", d, case, t.a, t.b, t.c, type(e).__name__, repr(e), flush=True)
