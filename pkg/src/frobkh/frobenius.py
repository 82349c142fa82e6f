"""Rank-two Frobenius systems given by structure constants.

A system is stored over the ordered basis ``{1, X}`` of ``A`` and the ordered
basis ``{1⊗1, 1⊗X, X⊗1, X⊗X}`` of ``A⊗A`` (index ``2*i + j``).  Elements of
``A`` are pairs ``(alpha, beta)`` meaning ``alpha + beta*X``.  Multiplication
is fixed by ``X^2 = h*X + t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    QDeg,
    QQ,
    ZZ,
    GF,
    FractionField,
    PolynomialRing,
    RingElement,
    parse_ring,
    polynomial_ring,
)
from .errors import NotInvertibleError, RepresentationError, UsageError

BASIS = ("1", "X")
TENSOR_BASIS = ("1⊗1", "1⊗X", "X⊗1", "X⊗X")
# quantum degree of the basis labels 1 and X
LABEL_QDEG = (1, -1)

ZHT = polynomial_ring(ZZ, (("h", -2), ("t", -4)))


@dataclass(frozen=True)
class FrobeniusSystem:
    ring: object
    h: RingElement
    t: RingElement
    counit: tuple  # (eps(1), eps(X))
    comult: tuple  # (Delta(1), Delta(X)), each a 4-tuple
    name: str = "custom"
    graded: bool = True

    # -- algebra operations on coordinate vectors --------------------------

    def mul(self, x, y):
        x0, x1 = x
        y0, y1 = y
        xy = x1 * y1
        return (x0 * y0 + xy * self.t, x0 * y1 + x1 * y0 + xy * self.h)

    def basis_product(self, i, j):
        """``b_i * b_j`` as a coordinate pair."""
        one, zero = self.ring.one, self.ring.zero
        e = ((one, zero), (zero, one))
        return self.mul(e[i], e[j])

    def eps(self, x):
        return x[0] * self.counit[0] + x[1] * self.counit[1]

    def delta(self, x):
        d1, dX = self.comult
        return tuple(x[0] * a + x[1] * b for a, b in zip(d1, dX))

    def structure_constants(self):
        """Flat tuple of all structure constants, for equality checks."""
        return (self.h, self.t) + tuple(self.counit) + tuple(self.comult[0]) + tuple(self.comult[1])

    def same_structure(self, other):
        if self.ring != other.ring:
            return False
        return all(a == b for a, b in zip(self.structure_constants(), other.structure_constants()))

    def element(self, alpha, beta=0):
        return (self.ring(alpha), self.ring(beta))

    def describe(self):
        d1, dX = self.comult
        return {
            "name": self.name,
            "ring": self.ring.name,
            "X^2": f"({self.h})*X + ({self.t})",
            "eps(1)": str(self.counit[0]),
            "eps(X)": str(self.counit[1]),
            "Delta(1)": _fmt_tensor(d1),
            "Delta(X)": _fmt_tensor(dX),
        }


def _fmt_tensor(vec):
    terms = [f"({c})*{b}" for c, b in zip(vec, TENSOR_BASIS) if c]
    return " + ".join(terms) if terms else "0"


def _system(ring, h, t, counit, d1, dX, name):
    r = ring
    h, t = r(h), r(t)
    sys = FrobeniusSystem(
        r, h, t,
        (r(counit[0]), r(counit[1])),
        (tuple(r(c) for c in d1), tuple(r(c) for c in dX)),
        name,
    )
    return _with_grading(sys)


def _with_grading(sys):
    hom = homogeneity(sys)
    graded = all(d is not None for d in hom.values())
    if graded != sys.graded:
        sys = FrobeniusSystem(sys.ring, sys.h, sys.t, sys.counit, sys.comult, sys.name, graded)
    return sys


def custom_system(ring, h, t, name=None):
    """System with ``X^2 = hX + t`` and the counit/comultiplication of F5."""
    h, t = ring(h), ring(t)
    return _system(ring, h, t, (0, 1), (-h, 1, 1, 0), (t, 0, 0, 1),
                   name or f"custom(h={h},t={t})")


def make_system(name):
    """Build one of the named systems ``F1, F2, F3, F5, F6, F7``."""
    key = name.upper()
    if key == "F1":
        return _system(ZZ, 0, 0, (0, 1), (0, 1, 1, 0), (0, 0, 0, 1), "F1")
    if key == "F2":
        R = polynomial_ring(ZZ, (("c", 2),))
        c = R.gen("c")
        return _system(R, 0, 0, (-c, 1), (0, 1, 1, c), (0, 0, 0, 1), "F2")
    if key == "F3":
        R = polynomial_ring(ZZ, (("t", -4),))
        t = R.gen("t")
        return _system(R, 0, t, (0, 1), (0, 1, 1, 0), (t, 0, 0, 1), "F3")
    if key == "F5":
        h, t = ZHT.gens()
        return _system(ZHT, h, t, (0, 1), (-h, 1, 1, 0), (t, 0, 0, 1), "F5")
    if key == "F6":
        R = polynomial_ring(GF(2), (("H", -2),))
        H = R.gen("H")
        return _system(R, H, 0, (0, 1), (H, 1, 1, 0), (0, 0, 0, 1), "F6")
    if key == "F7":
        R = polynomial_ring(ZZ, (("h", -2),))
        h = R.gen("h")
        return _system(R, h, 0, (0, 1), (-h, 1, 1, 0), (0, 0, 0, 1), "F7")
    raise UsageError(f"unknown Frobenius system {name!r}")


def _split_top_level(text):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_system(text):
    """Parse ``f1`` ... ``f7`` or ``custom:h=<poly>,t=<poly>,ring=<ring>``."""
    text = text.strip()
    if not text.lower().startswith("custom"):
        return make_system(text)
    body = text.split(":", 1)[1] if ":" in text else ""
    fields = {}
    for part in _split_top_level(body):
        if "=" not in part:
            raise UsageError(f"bad custom system field {part!r}")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    ring = parse_ring(fields.get("ring", "Z[h,t]"))
    return custom_system(ring, ring.parse(fields.get("h", "0")), ring.parse(fields.get("t", "0")))


# -- axiom verification ---------------------------------------------------


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)  # axiom -> (passed, witness)
    homogeneity: dict = field(default_factory=dict)  # map -> degree or None

    @property
    def ok(self):
        return all(p for p, _ in self.results.values())

    def failures(self):
        return {k: w for k, (p, w) in self.results.items() if not p}

    def lines(self):
        out = []
        for k, (p, w) in self.results.items():
            out.append(f"{k}: {'pass' if p else 'FAIL'}" + ("" if p else f" (witness {w})"))
        for k, d in self.homogeneity.items():
            out.append(f"degree[{k}]: {'inhomogeneous' if d is None else d}")
        return out


def _vec_eq(a, b):
    return all(x == y for x, y in zip(a, b))


def _tensor_mul_left(sys, a, w):
    """``(a⊗1) * w`` for ``w`` in A⊗A."""
    out = [sys.ring.zero] * 4
    for i in range(2):
        for j in range(2):
            c = w[2 * i + j]
            if not c:
                continue
            ab = sys.mul(a, _unit_vec(sys, i))
            for k in range(2):
                out[2 * k + j] = out[2 * k + j] + c * ab[k]
    return tuple(out)


def _tensor_mul_right(sys, w, b):
    """``w * (1⊗b)``."""
    out = [sys.ring.zero] * 4
    for i in range(2):
        for j in range(2):
            c = w[2 * i + j]
            if not c:
                continue
            jb = sys.mul(_unit_vec(sys, j), b)
            for k in range(2):
                out[2 * i + k] = out[2 * i + k] + c * jb[k]
    return tuple(out)


def _unit_vec(sys, i):
    one, zero = sys.ring.one, sys.ring.zero
    return (one, zero) if i == 0 else (zero, one)


def _delta_left(sys, w):
    """``(Delta ⊗ Id)`` applied to ``w`` in A⊗A, result in A⊗A⊗A (index 4i+2j+k)."""
    out = [sys.ring.zero] * 8
    for i in range(2):
        for k in range(2):
            c = w[2 * i + k]
            if not c:
                continue
            d = sys.comult[i]
            for ij in range(4):
                out[2 * ij + k] = out[2 * ij + k] + c * d[ij]
    return out


def _delta_right(sys, w):
    out = [sys.ring.zero] * 8
    for i in range(2):
        for k in range(2):
            c = w[2 * i + k]
            if not c:
                continue
            d = sys.comult[k]
            for jl in range(4):
                out[4 * i + jl] = out[4 * i + jl] + c * d[jl]
    return out


def check_axioms(sys):
    """Check the Frobenius-system identities exactly on basis vectors."""
    rep = AxiomReport()
    e = [_unit_vec(sys, 0), _unit_vec(sys, 1)]

    def first_failure(cases):
        for witness, ok in cases:
            if not ok:
                return False, witness
        return True, None

    rep.results["m_associative"] = first_failure(
        (f"({BASIS[a]}, {BASIS[b]}, {BASIS[c]})",
         _vec_eq(sys.mul(sys.mul(e[a], e[b]), e[c]), sys.mul(e[a], sys.mul(e[b], e[c]))))
        for a in range(2) for b in range(2) for c in range(2))
    rep.results["m_commutative"] = first_failure(
        (f"({BASIS[a]}, {BASIS[b]})", _vec_eq(sys.mul(e[a], e[b]), sys.mul(e[b], e[a])))
        for a in range(2) for b in range(2))
    rep.results["unit"] = first_failure(
        (BASIS[a], _vec_eq(sys.mul(e[0], e[a]), e[a])) for a in range(2))
    rep.results["coassociative"] = first_failure(
        (BASIS[a], _vec_eq(_delta_left(sys, sys.comult[a]), _delta_right(sys, sys.comult[a])))
        for a in range(2))
    rep.results["cocommutative"] = first_failure(
        (BASIS[a], _vec_eq(sys.comult[a], [sys.comult[a][k] for k in (0, 2, 1, 3)]))
        for a in range(2))
    rep.results["bimodule_left"] = first_failure(
        (f"({BASIS[a]}, {BASIS[b]})",
         _vec_eq(sys.delta(sys.mul(e[a], e[b])), _tensor_mul_left(sys, e[a], sys.comult[b])))
        for a in range(2) for b in range(2))
    rep.results["bimodule_right"] = first_failure(
        (f"({BASIS[a]}, {BASIS[b]})",
         _vec_eq(sys.delta(sys.mul(e[a], e[b])), _tensor_mul_right(sys, sys.comult[a], e[b])))
        for a in range(2) for b in range(2))

    def eps_left(w):
        return (sys.eps((w[0], w[2])), sys.eps((w[1], w[3])))

    def eps_right(w):
        return (sys.eps((w[0], w[1])), sys.eps((w[2], w[3])))

    rep.results["counit"] = first_failure(
        (BASIS[a], _vec_eq(eps_left(sys.comult[a]), e[a])) for a in range(2))
    rep.results["counit_right"] = first_failure(
        (BASIS[a], _vec_eq(eps_right(sys.comult[a]), e[a])) for a in range(2))
    rep.homogeneity = homogeneity(sys)
    return rep


def _map_degree(entries):
    """Common degree of a linear map from (coef, in_label_deg, out_label_deg) triples."""
    degs = set()
    for coef, lin, lout in entries:
        q = coef.qdeg()
        if q is QDeg.ZERO:
            continue
        if q is QDeg.INHOMOGENEOUS:
            return None
        degs.add(q + lout - lin)
    if len(degs) > 1:
        return None
    return degs.pop() if degs else "any"


def homogeneity(sys):
    """Degree of each structure map, or ``None`` when inhomogeneous.

    Expected degrees in this package's convention: unit +1, mult -1,
    counit +1, comult -1.
    """
    L = LABEL_QDEG
    mult = []
    for a in range(2):
        for b in range(2):
            prod = sys.basis_product(a, b)
            for k in range(2):
                mult.append((prod[k], L[a] + L[b], L[k]))
    comult = []
    for a in range(2):
        for i in range(2):
            for j in range(2):
                comult.append((sys.comult[a][2 * i + j], L[a], L[i] + L[j]))
    counit = [(sys.counit[a], L[a], 0) for a in range(2)]
    unit = [(sys.ring.one, 0, L[0])]
    return {
        "unit": _map_degree(unit),
        "mult": _map_degree(mult),
        "counit": _map_degree(counit),
        "comult": _map_degree(comult),
    }


# -- ring homomorphisms and base change -----------------------------------


class RingHom:
    """Ring map ``source -> target`` fixed by the images of source variables."""

    def __init__(self, source, target, images=None):
        self.source = source
        self.target = target
        images = dict(images or {})
        self.images = {}
        for name, _ in source.variables:
            if name not in images:
                raise UsageError(f"no image given for variable {name!r} of {source}")
            self.images[name] = target(images.pop(name))
        if images:
            raise UsageError(f"{source} has no variables {sorted(images)}")
        self._check_characteristic()

    @classmethod
    def by_name(cls, source, target, overrides=None):
        """Send each variable to the same-named target variable, else to 0."""
        overrides = dict(overrides or {})
        target_names = {n for n, _ in target.variables}
        images = {}
        for name, _ in source.variables:
            if name in overrides:
                v = overrides[name]
                images[name] = target.parse(v) if isinstance(v, str) else target(v)
            elif name in target_names:
                images[name] = target.gen(name)
            else:
                images[name] = target.zero
        return cls(source, target, images)

    def _base_of(self, ring):
        if isinstance(ring, PolynomialRing):
            return ring.base
        if isinstance(ring, FractionField):
            return ring.base.base
        return ring

    def _check_characteristic(self):
        sb = self._base_of(self.source)
        tchar = self.target.characteristic
        if sb.characteristic and tchar != sb.characteristic:
            raise UsageError(f"no ring map {self.source} -> {self.target}: characteristic mismatch")
        if sb == QQ:
            tb = self._base_of(self.target)
            if tb != QQ:
                raise UsageError(f"no ring map {self.source} -> {self.target}: Q does not map there")

    def _map_base(self, raw):
        if isinstance(raw, Fraction):
            return self.target(raw)
        return self.target(int(raw))

    def __call__(self, x):
        src = self.source
        if x.ring != src:
            raise UsageError(f"{x} is not in {src}")
        if isinstance(src, PolynomialRing):
            out = self.target.zero
            gens = [self.images[n] for n, _ in src.variables]
            for exp, c in x.value.items():
                term = self._map_base(c)
                for g, k in zip(gens, exp):
                    if k:
                        term = term * g ** k
                out = out + term
            return out
        if isinstance(src, FractionField):
            P = src.base
            inner = RingHom(P, self.target, self.images)
            num = inner(RingElement(P, x.value[0]))
            den = inner(RingElement(P, x.value[1]))
            if not den.is_unit():
                raise UsageError(f"denominator of {x} maps to a non-unit")
            return num * den.inverse()
        return self._map_base(x.value)

    def is_graded(self):
        """True when every variable maps to zero or to an element of equal degree."""
        for name, d in self.source.variables:
            q = self.images[name].qdeg()
            if q is QDeg.ZERO:
                continue
            if q is QDeg.INHOMOGENEOUS or q != d:
                return False
        return True

    def __repr__(self):
        imgs = ", ".join(f"{k}->{v}" for k, v in self.images.items())
        return f"RingHom({self.source} -> {self.target}: {imgs})"


def base_change(sys, psi):
    if psi.source != sys.ring:
        raise UsageError(f"base change source {psi.source} does not match {sys.ring}")
    new = FrobeniusSystem(
        psi.target, psi(sys.h), psi(sys.t),
        tuple(psi(c) for c in sys.counit),
        tuple(tuple(psi(c) for c in d) for d in sys.comult),
        f"{sys.name}⊗{psi.target.name}",
        sys.graded and psi.is_graded(),
    )
    if new.graded:
        new = _with_grading(new)
    return new


# -- twisting --------------------------------------------------------------


def invert_in_A(sys, y):
    """Inverse of ``y = (alpha, beta)`` in ``A`` or ``None`` when not a unit."""
    a, b = sys.ring(y[0]), sys.ring(y[1])
    det = a * a + a * b * sys.h - b * b * sys.t
    if not det.is_unit():
        return None
    inv = det.inverse()
    yinv = ((a + b * sys.h) * inv, -b * inv)
    prod = sys.mul((a, b), yinv)
    if not (prod[0] == 1 and prod[1] == 0):
        raise ArithmeticError("inverse check failed")  # pragma: no cover
    return yinv


def twist(sys, y, name=None):
    """Twisted system ``eps'(x) = eps(yx)``, ``Delta'(x) = Delta(y^-1 x)``."""
    y = (sys.ring(y[0]), sys.ring(y[1]))
    yinv = invert_in_A(sys, y)
    if yinv is None:
        raise NotInvertibleError(f"{y[0]} + ({y[1]})*X is not invertible in A")
    one, zero = sys.ring.one, sys.ring.zero
    e = ((one, zero), (zero, one))
    counit = tuple(sys.eps(sys.mul(y, e[a])) for a in range(2))
    comult = tuple(sys.delta(sys.mul(yinv, e[a])) for a in range(2))
    new = FrobeniusSystem(sys.ring, sys.h, sys.t, counit, comult,
                          name or f"twist({sys.name}, {y[0]} + ({y[1]})*X)", sys.graded)
    return _with_grading(new) if sys.graded else new


# -- rebasing and duality ----------------------------------------------------


def _inverse_2x2(P):
    (p00, p01), (p10, p11) = P
    det = p00 * p11 - p01 * p10
    if not det.is_unit():
        raise RepresentationError(f"change of basis has non-unit determinant {det}")
    d = det.inverse()
    return ((p11 * d, -p01 * d), (-p10 * d, p00 * d))


def _apply(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def _apply_tensor(M, w):
    out = []
    for i in range(2):
        for j in range(2):
            s = w[0] * 0
            for k in range(2):
                for l in range(2):
                    s = s + M[i][k] * M[j][l] * w[2 * k + l]
            out.append(s)
    return tuple(out)


def _rebase(ring, mul, counit, comult_basis, P, name):
    """Express an abstract rank-two Frobenius algebra in the basis given by P's columns.

    ``mul`` multiplies coordinate pairs, ``counit`` evaluates the counit on a
    pair, ``comult_basis`` holds the comultiplication of the two old basis
    vectors.  The first column of ``P`` must be the unit.
    """
    Pinv = _inverse_2x2(P)
    u = (P[0][0], P[1][0])
    x = (P[0][1], P[1][1])
    if not _vec_eq(_apply(Pinv, mul(u, x)), (ring.zero, ring.one)):
        raise RepresentationError("first basis vector is not the unit")
    t_new, h_new = _apply(Pinv, mul(x, x))

    def comult(v):
        return tuple(v[0] * a + v[1] * b for a, b in zip(*comult_basis))

    new_counit = (counit(u), counit(x))
    new_comult = (_apply_tensor(Pinv, comult(u)), _apply_tensor(Pinv, comult(x)))
    return FrobeniusSystem(ring, h_new, t_new, new_counit, new_comult, name)


def change_basis(sys, alpha, beta, name=None):
    """Same system written in the basis ``{1, alpha*X + beta}`` (alpha a unit)."""
    R = sys.ring
    P = ((R.one, R(beta)), (R.zero, R(alpha)))
    new = _rebase(R, sys.mul, sys.eps, sys.comult, P, name or sys.name)
    return _with_grading(new)


def dual(sys):
    """Dual system on ``Hom_R(A, R)`` re-expressed in a rank-two basis."""
    R = sys.ring
    one, zero = R.one, R.zero

    def mul_star(phi, psi):
        # (phi*psi)(b_k) = (phi⊗psi)(Delta(b_k))
        out = []
        for k in range(2):
            d = sys.comult[k]
            s = zero
            for i in range(2):
                for j in range(2):
                    s = s + phi[i] * psi[j] * d[2 * i + j]
            out.append(s)
        return tuple(out)

    def counit_star(phi):
        return phi[0]  # phi(1)

    comult_star = []
    for k in range(2):
        w = []
        for i in range(2):
            for j in range(2):
                w.append(sys.basis_product(i, j)[k])
        comult_star.append(tuple(w))

    e1, eX = sys.counit
    if eX.is_unit():
        P = ((e1, one), (eX, zero))
    elif e1.is_unit():
        P = ((e1, zero), (eX, one))
    else:
        raise RepresentationError("dual algebra has no basis {unit, dual basis vector}")
    new = _rebase(R, mul_star, counit_star, tuple(comult_star), P, f"dual({sys.name})")
    return _with_grading(new) if sys.graded else new


def isomorphic(s1, s2):
    """Search for ``Y = alpha*X + beta`` carrying ``s1`` onto ``s2``; returns (alpha, beta) or None."""
    if s1.ring != s2.ring:
        return None
    R = s1.ring
    units = R.units()
    alphas = [R(u) if not isinstance(u, dict) else RingElement(R, u) for u in units] \
        if units is not None else [R.one, -R.one]
    for alpha in alphas:
        betas = []
        if s1.counit[0].is_unit():
            betas.append((s2.counit[1] - alpha * s1.counit[1]) * s1.counit[0].inverse())
        diff = s2.h - alpha * s1.h
        two = R(2)
        if two.is_unit():
            betas.append(diff * two.inverse())
        elif R.characteristic != 2:
            half = _halve(diff)
            if half is not None:
                betas.append(half)
        betas += [R.zero, s1.h, -s1.h, s2.h, -s2.h]
        for beta in betas:
            try:
                cand = change_basis(s1, alpha, beta)
            except RepresentationError:
                continue
            if cand.same_structure(s2):
                return alpha, beta
    return None


def _halve(x):
    R = x.ring
    if isinstance(R, PolynomialRing) and R.base == ZZ:
        if all(c % 2 == 0 for c in x.value.values()):
            return RingElement(R, {e: c // 2 for e, c in x.value.items()})
        return None
    if R == ZZ:
        return R(x.value // 2) if x.value % 2 == 0 else None
    return None


# -- universal system --------------------------------------------------------


@dataclass(frozen=True)
class F4Parameters:
    """Specialization ``(a, c, e, f, h, t)`` of the universal rank-two system."""

    a: RingElement
    c: RingElement
    e: RingElement
    f: RingElement
    h: RingElement
    t: RingElement

    def relations(self):
        a, c, e, f, h, t = self.a, self.c, self.e, self.f, self.h, self.t
        return (a * e - c * f, a * f + c * h * f - c * e * t - 1)

    def satisfies_relations(self):
        return all(r == 0 for r in self.relations())

    def comultiplication(self):
        e, f, h, t = self.e, self.f, self.h, self.t
        d1 = (e * t - h * f, f, f, e)
        dX = (f * t, e * t, e * t, f + e * h)
        return d1, dX

    def system(self):
        R = self.a.ring
        d1, dX = self.comultiplication()
        return FrobeniusSystem(R, self.h, self.t, (-self.c, self.a), (d1, dX), "F4-specialization")

    def universal_twist_element(self):
        """``(f + eX)^-1 = a + ch - cX`` as a coordinate pair."""
        return (self.a + self.c * self.h, -self.c)

    def as_tuple(self):
        return (self.a, self.c, self.e, self.f, self.h, self.t)


def recognize(sys, witness=None):
    """Read off universal-system parameters, optionally in the basis ``{1, witness}``.

    ``witness`` is a pair ``(alpha, beta)`` meaning ``X' = alpha*X + beta``.
    """
    if witness is not None:
        sys = change_basis(sys, *witness)
    d, f1, f2, e = sys.comult[0]
    if f1 != f2:
        raise RepresentationError("Delta(1) is not symmetric in the 1⊗X and X⊗1 terms")
    params = F4Parameters(sys.counit[1], -sys.counit[0], e, f1, sys.h, sys.t)
    if d != params.e * params.t - params.h * params.f:
        raise RepresentationError("Delta(1) has the wrong 1⊗1 coefficient")
    if not params.satisfies_relations():
        raise RepresentationError("parameters violate the universal relations")
    _, dX = params.comultiplication()
    if not _vec_eq(dX, sys.comult[1]):
        raise RepresentationError("Delta(X) does not match the universal formula")
    return params


def realize_from_universal(sys):
    """Base change of F5 followed by a twist reproducing ``sys``.

    Returns ``(psi, y, rebuilt)`` where ``rebuilt = twist(base_change(F5, psi), y)``.
    """
    params = recognize(sys)
    psi = RingHom(ZHT, sys.ring, {"h": sys.h, "t": sys.t})
    y = params.universal_twist_element()
    rebuilt = twist(base_change(make_system("F5"), psi), y)
    return psi, y, rebuilt

