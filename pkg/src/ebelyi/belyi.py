"""Exact model of the three-point cover attached to a permutation triple.

The cover is assembled from exact ingredients: the rotation quotient of
the tessellation curve (alpha), the isogeny pair joining it to the
sheet-lattice curve, and, when the cover has genus zero, the rotation
quotient of the sheet-lattice curve (beta).  The rational map phi tying
the two quotient lines together is the unique solution of a linear
system and is certified against the cycle structure of the input
permutations, which also rules out branch points beyond 0, 1, infinity.
"""

from .algebra.curves import model_curve, model_lattice
from .algebra.fields import (
    Cyc,
    QQ,
    adjoin_root,
    p_divmod,
    p_trim,
    retower,
    split_tower,
)
from .algebra.poly import Poly
from .analytic import DEFAULT_PREC, ScaledLattice, precision_ladder, recognize_cyc
from .errors import (
    NotInvariant,
    ShapeViolation,
    VerificationFailure,
    ZeroDivisor,
)
from .funcfield import CurveFunc, Morphism, RatFunc, translation_map
from .isogeny import build_isogeny, shrink_isogeny
from .triangle import normalize


# ---------------------------------------------------------------------
# quotient maps of the two curves


_SIGN_CACHE = {}


def _unit_vertex_sign(kind):
    """Sign of the y coordinate of the z = 1 point of the standard curve.

    The point is (0, 1) or (0, -1); which one depends on the scaling
    conventions of the lattice parametrization, so it is read off
    numerically once and reused.
    """
    s = _SIGN_CACHE.get(kind)
    if s is None:
        pt = model_lattice(kind).point(Cyc(kind, 1), 96)
        s = 1 if pt[1].real > 0 else -1
        _SIGN_CACHE[kind] = s
    return s


def standard_alpha(curve, orders):
    """Quotient of the tessellation curve by its rotation group, scaled
    so the a vertices sit over 0, the b vertices over 1, and the fixed
    point of the rotation (the c vertex at the lattice) over infinity."""
    one = curve.one
    x = CurveFunc.xgen(curve)
    y = CurveFunc.ygen(curve)
    if orders == (3, 3, 3):
        half = (one * 0 + 1) / 2
        return half + y * (half * _unit_vertex_sign("w"))
    if orders == (2, 4, 4):
        return 1 - x * x
    if orders == (2, 3, 6):
        return y * y
    raise ShapeViolation("no rotation quotient for orders %r" % (orders,))


def alpha_degree(orders):
    return orders[2]


def rotation_quotient(curve, r):
    """Quotient of a curve with extra automorphisms by the order-r
    rotation fixing the origin, with its only pole there."""
    if r == 2:
        return CurveFunc.xgen(curve)
    if r == 3:
        if not curve.A.is_zero():
            raise ShapeViolation("order 3 rotation needs an x^3 + B curve")
        # sign chosen so the quotient coordinate is positive along the
        # real period of the parametrization
        return CurveFunc.ygen(curve) * _unit_vertex_sign("w")
    if r == 4:
        if not curve.B.is_zero():
            raise ShapeViolation("order 4 rotation needs an x^3 + A x curve")
        x = CurveFunc.xgen(curve)
        return x * x
    if r == 6:
        if not curve.A.is_zero():
            raise ShapeViolation("order 6 rotation needs an x^3 + B curve")
        y = CurveFunc.ygen(curve)
        return y * y
    raise ShapeViolation("no rotation of order %d" % r)


# ---------------------------------------------------------------------
# the rotation center and its preimage on the sheet curve


def origin_point(case, role, prec=DEFAULT_PREC):
    """Exact standard-curve point under the chosen rotation center."""
    v = case.vertex[role]
    lat = model_lattice(case.kind)
    curve = model_curve(case.kind)

    def attempt(p):
        pt = lat.point(v, p)
        if pt is None:
            raise ShapeViolation("rotation center lies on the lattice")
        return recognize_cyc(pt[0], case.kind, p), recognize_cyc(pt[1], case.kind, p)

    P = precision_ladder(attempt, start=prec)
    if not curve.is_on(P):
        raise VerificationFailure("recognized rotation center is not on the curve")
    m = dict(zip("abc", case.orders))[role]
    if curve.mul(P, m) is not None:
        raise VerificationFailure("rotation center is not %d-torsion" % m)
    return P


def _gamma_lattice(norm):
    case = norm.cover.case
    eta1 = norm.cover.n1 * case.w1 + norm.cover.n2 * case.w2
    eta2 = norm.cover.m2 * case.w2
    parent = model_lattice(case.kind)
    return ScaledLattice(eta1, eta2, ("ratio", parent, QQ(1, norm.cover.N)))


def _sqfree_coeffs(coeffs, one):
    p = Poly(coeffs, one)
    g = p.gcd(p.deriv())
    if g.degree > 0:
        p = p // g
    return list(p.coeffs)


def _adjoin_origin(iso, norm, PO, prec):
    """Extend the isogeny field by the sheet-curve point above the
    rotation center.

    Returns (tower, lift, Q) with lift embedding the isogeny field into
    the extension; the y sign of Q is settled later against the full
    reverse isogeny, so only x(Q) is pinned here.
    """
    T0 = iso.tower
    lat = _gamma_lattice(norm)
    v = norm.cover.case.vertex[norm.origin_role]
    Zg = lat.point(v, prec)
    if Zg is None:
        raise ShapeViolation("rotation center lies on the sheet lattice")
    xPO = T0.coerce(PO[0])
    A, B = iso.psi.U.a.num, iso.psi.U.a.den
    pol = [A[k] - xPO * B[k] for k in range(iso.N + 1)]
    T1, lift1, xQ = adjoin_root(T0, _sqfree_coeffs(pol, T0.coerce(1)), Zg[0], prec)
    fx = xQ * xQ * xQ + lift1(iso.E_gamma.A) * xQ + lift1(iso.E_gamma.B)
    if fx.is_zero():
        # the preimage is 2-torsion, no second extension needed
        return T1, lift1, (xQ, fx)
    one1 = lift1(T0.coerce(1))
    T2, lift2, yQ = adjoin_root(T1, [-fx, one1 * 0, one1], Zg[1], prec)

    def lift(e, f1=lift1, f2=lift2):
        return f2(f1(e))

    return T2, lift, (lift2(xQ), yQ)


# ---------------------------------------------------------------------
# solving for the cover


def _lift_ratfunc(rf, fn, one):
    return RatFunc(rf.num.map_coeffs(fn, one), rf.den.map_coeffs(fn, one), reduce=False)


def _lift_curvefunc(h, curve, fn, one):
    return CurveFunc(curve, _lift_ratfunc(h.a, fn, one), _lift_ratfunc(h.b, fn, one))


def _nullspace_line(rows, ncols, one):
    """The solution of a homogeneous system expected to have a single
    free parameter; raises NotInvariant otherwise."""
    zero = one * 0
    ech = []
    piv = {}
    for row in rows:
        r = list(row)
        for c in sorted(piv):
            if not r[c].is_zero():
                f = r[c]
                pr = ech[piv[c]]
                r = [rc - f * pc for rc, pc in zip(r, pr)]
        lead = next((j for j in range(ncols) if not r[j].is_zero()), None)
        if lead is None:
            continue
        inv = one / r[lead]
        piv[lead] = len(ech)
        ech.append([rc * inv for rc in r])
    free = [j for j in range(ncols) if j not in piv]
    if len(free) != 1:
        raise NotInvariant("cover solve has nullity %d, expected 1" % len(free))
    j0 = free[0]
    # clear pivot columns upward so each equation reads off one unknown
    for c, ri in sorted(piv.items(), reverse=True):
        for k in range(len(ech)):
            if k != ri and not ech[k][c].is_zero():
                f = ech[k][c]
                ech[k] = [a - f * b for a, b in zip(ech[k], ech[ri])]
    sol = [zero] * ncols
    sol[j0] = one
    for c, ri in piv.items():
        sol[c] = -ech[ri][j0]
    return sol


def _solve_cover(beta, xi, d):
    """Numerator and denominator of the degree-d rational map phi with
    phi(beta) = xi on the sheet curve."""
    curve = beta.curve
    one = curve.one
    pows = [CurveFunc.lift(curve, RatFunc.const(1, one))]
    for _ in range(d):
        pows.append(pows[-1] * beta)
    gens = pows + [xi * p for p in pows]
    den = Poly([one], one)
    for g in gens:
        for rf in (g.a, g.b):
            den = (den * (rf.den // den.gcd(rf.den))).monic()
    comps = []
    for g in gens:
        comps.append((g.a.num * (den // g.a.den), g.b.num * (den // g.b.den)))
    rows = []
    for part in (0, 1):
        top = max(p[part].degree for p in comps)
        for k in range(top + 1):
            rows.append([p[part][k] for p in comps])
    sol = _nullspace_line(rows, 2 * (d + 1), one)
    comb = None
    for c, g in zip(sol, gens):
        term = g * c
        comb = term if comb is None else comb + term
    if not comb.is_zero():
        raise NotInvariant("cover solve failed the exact recheck")
    num = Poly(sol[: d + 1], one)
    dnm = -Poly(sol[d + 1 :], one)
    phi = RatFunc(num, dnm)
    if max(phi.num.degree, phi.den.degree) != d:
        raise VerificationFailure(
            "solved map has degree %d, the cover needs %d"
            % (max(phi.num.degree, phi.den.degree), d)
        )
    return phi


# ---------------------------------------------------------------------
# matching the input labels


# base points by role: a over 0, b over 1, c over infinity.  When
# normalization relabeled the roles, a fractional-linear move puts each
# fiber back over the base point of the role the input used.
_MOBIUS = {
    ("a", "b", "c"): None,
    ("b", "c", "a"): ((0, 1), (-1, 1)),  # u -> 1/(1-u)
    ("c", "a", "b"): ((1, -1), (1, 0)),  # u -> (u-1)/u
    ("a", "c", "b"): ((1, 0), (1, -1)),  # u -> u/(u-1)
}


def _relabel(phi, role_map, one):
    mat = _MOBIUS[(role_map["a"], role_map["b"], role_map["c"])]
    if mat is None:
        return phi
    (p, q), (r, s) = mat
    num = phi.num.scale(one * p) + phi.den.scale(one * q)
    den = phi.num.scale(one * r) + phi.den.scale(one * s)
    inv = one / den.lc()
    # no reduction needed: a fractional-linear move keeps them coprime
    return RatFunc(num.scale(inv), den.scale(inv), reduce=False)


def fiber_profiles(phi, d):
    """Ramification profiles of a degree-d map over 0, 1 and infinity,
    each a descending tuple summing to d."""
    out = {}
    for role, pol in (("a", phi.num), ("b", phi.num - phi.den), ("c", phi.den)):
        prof = []
        for fac, m in pol.squarefree_decomposition():
            prof.extend([m] * fac.degree)
        if pol.degree < d:
            prof.append(d - pol.degree)
        prof.sort(reverse=True)
        if sum(prof) != d:
            raise VerificationFailure("fiber over %s does not sum to the degree" % role)
        out[role] = tuple(prof)
    return out


_BASE_NAME = {"a": "0", "b": "1", "c": "infinity"}


def _check_passport(profiles, triple):
    want = dict(zip("abc", triple.passport()))
    for role in "abc":
        if profiles[role] != want[role]:
            raise VerificationFailure(
                "fiber over %s has profile %s, the permutations need %s"
                % (_BASE_NAME[role], list(profiles[role]), list(want[role]))
            )


def _check_point_count(profiles, d, genus):
    """Total fiber-point count certifying that all branching happens
    over the three base points: d + 2 for genus zero, d for genus one."""
    pts = sum(len(p) for p in profiles.values())
    want = d + 2 if genus == 0 else d
    if pts != want:
        raise VerificationFailure(
            "cover has %d points over the base triple, expected %d" % (pts, want)
        )


# ---------------------------------------------------------------------
# putting the pieces together


class BelyiModel:
    """Exact cover data for one permutation triple.

    phi is the headline map: a rational function in the sheet-curve
    quotient coordinate beta when the cover has genus zero, or a
    function on the sheet curve itself when it stays genus one.  All
    members live over tower, the smallest field the construction needed.
    """

    __slots__ = (
        "triple",
        "normalized",
        "iso",
        "genus",
        "degree",
        "tower",
        "sheet_curve",
        "tess_curve",
        "psi",
        "alpha",
        "beta",
        "xi",
        "phi_raw",
        "phi",
        "center",
        "center_preimage",
        "profiles",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.pop(k))
        if kw:
            raise TypeError("unexpected fields %s" % sorted(kw))

    def phi_over_base(self):
        """phi with cyclotomic coefficients when no extension was needed
        to express it; None otherwise.  Genus zero only."""
        if self.genus != 0:
            return None
        if self.tower.is_trivial():
            return self.phi
        for p in (self.phi.num, self.phi.den):
            for c in p.coeffs:
                if not c.is_constant():
                    return None
        one = Cyc(self.tower.kind, 1)

        def conv(e):
            return e.constant()

        return RatFunc(
            self.phi.num.map_coeffs(conv, one),
            self.phi.den.map_coeffs(conv, one),
            reduce=False,
        )

    def verify(self):
        """Re-run the exact identities behind the model; raises
        VerificationFailure on any mismatch."""
        self.iso.verify_mult_identity()
        if self.genus == 1:
            again = self.psi.pullback(self.alpha)
            if not (again - self.phi).is_zero():
                raise VerificationFailure("sheet-curve pullback changed")
        else:
            lhs = self.phi_raw.num.eval(self.beta)
            rhs = self.phi_raw.den.eval(self.beta) * self.xi
            if not (lhs - rhs).is_zero():
                raise VerificationFailure("cover square does not commute")
        _check_passport(self.profiles, self.triple)
        _check_point_count(self.profiles, self.degree, self.genus)
        return True


def _finish0(norm, iso, T2, lift, QO, PO, prec):
    case = norm.cover.case
    one = T2.coerce(1)
    Eg = iso.E_gamma.map_coeffs(lift)
    Ed = iso.E_delta.map_coeffs(lift)
    psi = Morphism(
        Eg,
        Ed,
        _lift_curvefunc(iso.psi.U, Eg, lift, one),
        _lift_curvefunc(iso.psi.V, Eg, lift, one),
    )
    alpha = standard_alpha(Ed, case.orders)
    if norm.origin_role == "c":
        beta = rotation_quotient(Eg, norm.cover.r)
        POl = None
    else:
        POl = (T2.coerce(PO[0]), T2.coerce(PO[1]))
        if psi.apply(QO) != POl:
            QO = (QO[0], -QO[1])
            if psi.apply(QO) != POl:
                raise VerificationFailure(
                    "neither preimage of the rotation center matches"
                )
        beta = translation_map(Eg, Eg.neg(QO)).pullback(
            rotation_quotient(Eg, norm.cover.r)
        )
    xi = psi.pullback(alpha)
    phi = _solve_cover(beta, xi, norm.triple.d)
    profiles = fiber_profiles(phi, norm.triple.d)
    return {
        "tower": T2,
        "sheet_curve": Eg,
        "tess_curve": Ed,
        "psi": psi,
        "alpha": alpha,
        "beta": beta,
        "xi": xi,
        "phi_raw": phi,
        "profiles_raw": profiles,
        "center": POl,
        "center_preimage": QO,
    }


def _divides_modulus(tower, fac):
    if tower.is_trivial() or len(fac) > tower.degree + 1:
        return False
    return not p_trim(p_divmod(list(tower.modulus), fac)[1])


def _genus0_raw(norm, iso, prec):
    if norm.origin_role == "c":
        T2 = iso.tower
        lift = None
        PO = None
        QO = None
    else:
        PO = origin_point(norm.cover.case, norm.origin_role, prec)
        while True:
            try:
                T2, lift, QO = _adjoin_origin(iso, norm, PO, prec)
                break
            except ZeroDivisor as zd:
                fac = list(zd.factor)
                if not _divides_modulus(iso.tower, fac):
                    raise
                # the isogeny ring itself is reducible; carry the whole
                # isogeny onto the component of the designated root
                iso = shrink_isogeny(iso, fac, prec)
    if lift is None:

        def lift(e):
            return e

    while True:
        try:
            raw = _finish0(norm, iso, T2, lift, QO, PO, prec)
            raw["iso"] = iso
            return raw
        except ZeroDivisor as zd:
            fac = list(zd.factor)
            if not _divides_modulus(T2, fac):
                raise
            T2n = split_tower(T2, fac, prec)

            def conv(e, old=T2, new=T2n):
                return retower(old, new, e)

            def lift(e, prev=lift, c=conv):
                return c(prev(e))

            if QO is not None:
                QO = (conv(QO[0]), conv(QO[1]))
            T2 = T2n


_RAW_CACHE = {}


def _genus1_model(triple, norm, iso):
    orders = norm.cover.case.orders
    alpha = standard_alpha(iso.E_delta, orders)
    phi = iso.psi.pullback(alpha)
    profiles = {}
    for role, m in zip("abc", orders):
        profiles[role] = tuple([m] * (orders[2] // m * iso.N))
    _check_passport(profiles, triple)
    _check_point_count(profiles, triple.d, 1)
    return BelyiModel(
        triple=triple,
        normalized=norm,
        iso=iso,
        genus=1,
        degree=triple.d,
        tower=iso.tower,
        sheet_curve=iso.E_gamma,
        tess_curve=iso.E_delta,
        psi=iso.psi,
        alpha=alpha,
        beta=None,
        xi=None,
        phi_raw=None,
        phi=phi,
        center=None,
        center_preimage=None,
        profiles=profiles,
    )


def compute_belyi(triple, prec=DEFAULT_PREC):
    """Exact cover model of a transitive Euclidean triple, verified
    against its cycle structure."""
    norm = normalize(triple)
    iso = build_isogeny(norm, prec)
    if norm.cover.r == 1:
        return _genus1_model(triple, norm, iso)
    cover = norm.cover
    key = (cover.case.orders, cover.n1, cover.n2, cover.m2, norm.origin_role, cover.r, prec)
    raw = _RAW_CACHE.get(key)
    if raw is None:
        raw = precision_ladder(lambda p: _genus0_raw(norm, iso, p), start=prec)
        _RAW_CACHE[key] = raw
    one = raw["tower"].coerce(1)
    phi = _relabel(raw["phi_raw"], norm.role_map, one)
    profiles = {norm.role_map[role]: raw["profiles_raw"][role] for role in "abc"}
    _check_passport(profiles, triple)
    _check_point_count(profiles, triple.d, 0)
    return BelyiModel(
        triple=triple,
        normalized=norm,
        iso=raw["iso"],
        genus=0,
        degree=triple.d,
        tower=raw["tower"],
        sheet_curve=raw["sheet_curve"],
        tess_curve=raw["tess_curve"],
        psi=raw["psi"],
        alpha=raw["alpha"],
        beta=raw["beta"],
        xi=raw["xi"],
        phi_raw=raw["phi_raw"],
        phi=phi,
        center=raw["center"],
        center_preimage=raw["center_preimage"],
        profiles=profiles,
    )
