from mpmath import mp
from ebelyi.triples import enumerate_triples
from ebelyi.triangle import normalize
from ebelyi.isogeny import build_isogeny
from ebelyi.belyi import (
    _gamma_lattice, origin_point, _adjoin_origin, _finish0, _genus0_raw,
    standard_alpha, rotation_quotient,
)
from ebelyi.algebra.fields import Cyc, QQ
from ebelyi.algebra.curves import model_lattice, model_curve

prec = 128
t = enumerate_triples((2, 4, 4), 4)[0]
norm = normalize(t)
iso = build_isogeny(norm, prec)
case = norm.cover.case
print("origin role:", norm.origin_role, "vertex:", case.vertex[norm.origin_role])
PO = origin_point(case, norm.origin_role, prec)
print("P_O exact:", PO)
T2, lift, QO = _adjoin_origin(iso, norm, PO, prec)
print("T2 trivial:", T2.is_trivial(), "deg:", T2.degree if not T2.is_trivial() else 1)
print("QO:", QO)
raw = _genus0_raw(norm, iso, prec)
phi = raw["phi_raw"]
print("phi num:", phi.num)
print("phi den:", phi.den)
print("profiles:", raw["profiles_raw"])

lat_g = _gamma_lattice(norm)
lat_d = model_lattice(case.kind)
T = raw["tower"]

def emb(c):
    return T.embed(c, prec) if not T.is_trivial() else c.embed(prec)

def ev_poly(p, x):
    acc = mp.mpc(0)
    for c in reversed(list(p.coeffs)):
        acc = acc * x + emb(c)
    return acc

def ev_rf(rf, x):
    return ev_poly(rf.num, x) / ev_poly(rf.den, x)

def ev_cf(cf, x, y):
    return ev_rf(cf.a, x) + ev_rf(cf.b, x) * y

with mp.workprec(prec):
    zQ = lat_g.point(case.vertex[norm.origin_role], prec)
    print("analytic Q_O:", mp.nstr(zQ[0], 10), mp.nstr(zQ[1], 10))
    for k in range(4):
        z = Cyc(case.kind, QQ(2 * k + 1, 17), QQ(k + 1, 11))
        Pg = lat_g.point(z, prec)
        Pd = lat_d.point(z, prec)
        alpha0 = standard_alpha(model_curve(case.kind), case.orders)
        v_true = ev_cf(alpha0, Pd[0], Pd[1])
        u = ev_cf(raw["beta"], Pg[0], Pg[1])
        xi_v = ev_cf(raw["xi"], Pg[0], Pg[1])
        phi_u = ev_poly(phi.num, u) / ev_poly(phi.den, u)
        psi_pt = (ev_cf(raw["psi"].U, Pg[0], Pg[1]), ev_cf(raw["psi"].V, Pg[0], Pg[1]))
        print("z%d |alpha(true)-xi| = %s   |alpha(true)-phi(beta)| = %s" % (
            k, mp.nstr(abs(v_true - xi_v), 5), mp.nstr(abs(v_true - phi_u), 5)))
        print("    psi(Pg) vs Pd: dx=%s dy=%s" % (
            mp.nstr(abs(psi_pt[0] - Pd[0]), 5), mp.nstr(abs(psi_pt[1] - Pd[1]), 5)))
