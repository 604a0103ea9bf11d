import cProfile
import pstats
import signal
import sys
import time

from ebelyi.triples import enumerate_triples
from ebelyi.belyi import compute_belyi


class TimeUp(Exception):
    pass


def alarm(sig, frame):
    raise TimeUp


t0 = time.time()
ts = enumerate_triples((2, 4, 4), 8)
print("enumeration took %.1fs, %d triples" % (time.time() - t0, len(ts)), flush=True)
t = ts[0]
print("triple:", t.a, t.b, t.c, flush=True)

signal.signal(signal.SIGALRM, alarm)
signal.alarm(420)
pr = cProfile.Profile()
t0 = time.time()
try:
    pr.enable()
    m = compute_belyi(t)
    pr.disable()
    print("completed in %.1fs" % (time.time() - t0), flush=True)
except TimeUp:
    pr.disable()
    print("aborted after %.1fs" % (time.time() - t0), flush=True)
st = pstats.Stats(pr, stream=sys.stdout)
st.sort_stats("cumulative").print_stats(40)
st.sort_stats("tottime").print_stats(30)
