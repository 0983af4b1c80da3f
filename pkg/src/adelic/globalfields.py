"""Global field descriptors, places, ideles and Arakelov divisors.

Supported fields: Q, quadratic number fields Q(sqrt d), rational function
fields F_q(t), and hyperelliptic extensions y^2 = f(t) for odd q.  Places
carry their splitting data (by the Kronecker symbol of the discriminant,
resp. the residue symbol of f), ramification and residue cardinalities.

Conventions.  An idele stores its finite components as valuations
n = v(alpha_v) and its archimedean components as positive reals.  The
divisor of an idele uses the classical sign: the coefficient at a finite
place is -v(alpha_v) (so the associated lattice of global sections is
prod P^{v(alpha_v)}, the set of x with v(x) >= v(alpha) everywhere), and
the coefficient at an archimedean place is e_v * log(alpha_v).  With these
choices the divisor degree equals the idele log-norm uniformly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from . import ffpoly
from .ffpoly import Poly, gf
from .localfields import (
    P_ADIC,
    LocalFieldDesc,
    base_field,
    quadratic_extension,
)
from .values import LogValue, PosRealExact, factorize, is_prime

INFINITY = "infinity"

RATIONAL = "rational"
QUADRATIC = "quadratic-number-field"
RATFUNC = "rational-function-field"
HYPERELLIPTIC = "hyperelliptic-function-field"

FINITE = "finite"
REAL = "real"
COMPLEX = "complex"
FF_FINITE = "ff-finite"
FF_INFINITE = "ff-infinite"

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


class GlobalFieldError(Exception):
    pass


class UnsupportedField(GlobalFieldError):
    pass


class NotAnExtension(GlobalFieldError):
    pass


def kronecker_of_disc(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for a fundamental discriminant D at a prime."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 == 1 else -1
    r = D % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(abs(n)).values())


@dataclass(frozen=True)
class GlobalFieldDesc:
    kind: str
    d: int | None = None          # quadratic number fields
    q: int | None = None          # function fields
    fpoly: Poly | None = None     # hyperelliptic defining polynomial

    # -- constructors --------------------------------------------------------

    @staticmethod
    def rationals() -> "GlobalFieldDesc":
        return GlobalFieldDesc(RATIONAL)

    @staticmethod
    def quadratic(d: int) -> "GlobalFieldDesc":
        if d in (0, 1) or not _is_squarefree(d):
            raise UnsupportedField(f"d = {d} must be squarefree and != 0, 1")
        return GlobalFieldDesc(QUADRATIC, d=d)

    @staticmethod
    def rational_function_field(q: int) -> "GlobalFieldDesc":
        gf(q)  # validates that q is a supported prime power
        return GlobalFieldDesc(RATFUNC, q=q)

    @staticmethod
    def hyperelliptic(q: int, coeffs) -> "GlobalFieldDesc":
        F = gf(q)
        if q % 2 == 0:
            raise UnsupportedField("hyperelliptic fields need odd q")
        f = ffpoly.ptrim(coeffs)
        if ffpoly.pdeg(f) < 1 or f[-1] != 1:
            raise UnsupportedField("f must be monic of positive degree")
        deriv = ffpoly.ptrim(F.mul(i % F.p, f[i]) for i in range(1, len(f)))
        # squarefree <=> gcd(f, f') = 1
        a, b = f, deriv
        while b:
            a, b = b, ffpoly.pmod(F, a, b)
        if ffpoly.pdeg(a) != 0:
            raise UnsupportedField("f must be squarefree")
        return GlobalFieldDesc(HYPERELLIPTIC, q=q, fpoly=f)

    # -- invariants ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return 2 if self.kind in (QUADRATIC, HYPERELLIPTIC) else 1

    @property
    def disc(self) -> int:
        """Fundamental discriminant of a quadratic number field."""
        if self.kind == RATIONAL:
            return 1
        if self.kind != QUADRATIC:
            raise UnsupportedField("disc is a number-field invariant")
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def signature(self) -> Tuple[int, int]:
        if self.kind == RATIONAL:
            return (1, 0)
        if self.kind == QUADRATIC:
            return (2, 0) if self.d > 0 else (0, 1)
        raise UnsupportedField("signature is a number-field invariant")

    @property
    def genus(self) -> int:
        if self.kind == RATFUNC:
            return 0
        if self.kind == HYPERELLIPTIC:
            return (ffpoly.pdeg(self.fpoly) - 1) // 2
        raise UnsupportedField("genus is a function-field invariant")

    @property
    def is_function_field(self) -> bool:
        return self.kind in (RATFUNC, HYPERELLIPTIC)

    @property
    def constant_char(self) -> int:
        return gf(self.q).p

    def omega_params(self) -> Tuple[int, int]:
        """(trace, norm) of the integral generator omega of a quadratic field:
        omega = (1+sqrt d)/2 when d = 1 mod 4, else sqrt d."""
        if self.kind != QUADRATIC:
            raise UnsupportedField("omega is a quadratic-field generator")
        if self.d % 4 == 1:
            return (1, (1 - self.d) // 4)
        return (0, -self.d)

    def describe(self) -> str:
        if self.kind == RATIONAL:
            return "Q"
        if self.kind == QUADRATIC:
            return "Q(i)" if self.d == -1 else f"Q(sqrt {self.d})"
        if self.kind == RATFUNC:
            return f"F{self.q}(t)"
        return f"F{self.q}(t)[y]/(y^2 - f), f={list(self.fpoly)}"

    @property
    def prime_field(self) -> "GlobalFieldDesc":
        if self.kind in (RATIONAL, QUADRATIC):
            return GlobalFieldDesc.rationals()
        return GlobalFieldDesc.rational_function_field(self.q)


@dataclass(frozen=True)
class Place:
    """A place of a global field, with its local invariants over the base."""

    field: GlobalFieldDesc
    kind: str
    below: object = None          # rational prime, base polynomial, or INFINITY
    splitting: str | None = None
    index: int = 0
    e: int = 1
    f: int = 1
    residue_card: int | None = None
    deg: int = 0                  # degree over the constant field
    root: int | None = None       # omega root mod p (number-field places)

    @property
    def e_v(self) -> int:
        if self.kind == COMPLEX:
            return 2
        if self.kind == REAL:
            return 1
        raise GlobalFieldError("e_v is an archimedean constant")

    def is_archimedean(self) -> bool:
        return self.kind in (REAL, COMPLEX)

    def is_ramified(self) -> bool:
        return self.e == 2

    def label(self) -> str:
        if self.kind == REAL:
            return f"inf#{self.index}"
        if self.kind == COMPLEX:
            return "inf#0"
        if self.kind in (FF_FINITE, FF_INFINITE):
            if self.below == INFINITY:
                return f"inf#{self.index}"
            enc = ffpoly.poly_to_int(gf(self.field.q), self.below)
            return f"p{enc}#{self.index}"
        return f"p{self.below}#{self.index}"

    def __repr__(self) -> str:
        return f"Place({self.field.describe()}, {self.label()})"


# ---------------------------------------------------------------------------
# places
# ---------------------------------------------------------------------------


def _sqrt_mod_p(a: int, p: int) -> int:
    """Smallest square root of a modulo an odd prime (brute force; p small)."""
    a %= p
    for r in range((p + 1) // 2 + 1):
        if r * r % p == a:
            return r
    raise ValueError(f"{a} is not a square mod {p}")


def places_above(field: GlobalFieldDesc, below) -> List[Place]:
    """All places of the field over a place of its prime field.

    ``below`` is a rational prime, a monic irreducible of F_q[t] (tuple of
    coefficients), or the string "infinity".
    """
    if isinstance(below, list):
        below = tuple(below)
    return list(_places_above(field, below))


@lru_cache(maxsize=None)
def _places_above(field: GlobalFieldDesc, below) -> Tuple[Place, ...]:
    return tuple(_places_above_impl(field, below))


def _places_above_impl(field: GlobalFieldDesc, below) -> List[Place]:
    if field.kind == RATIONAL:
        if below == INFINITY:
            return [Place(field, REAL)]
        if not is_prime(below):
            raise UnsupportedField(f"{below} is not a prime")
        return [Place(field, FINITE, below=below, residue_card=below)]

    if field.kind == QUADRATIC:
        if below == INFINITY:
            if field.d > 0:
                return [Place(field, REAL, below=INFINITY, index=i) for i in (0, 1)]
            return [Place(field, COMPLEX, below=INFINITY)]
        p = below
        if not is_prime(p):
            raise UnsupportedField(f"{below} is not a prime")
        D = field.disc
        t, n = field.omega_params()
        sym = kronecker_of_disc(D, p)
        if sym == 1:
            if p == 2:
                roots = [0, 1]
            else:
                s = _sqrt_mod_p(D, p)
                inv2 = pow(2, -1, p)
                roots = sorted({(t + s) * inv2 % p, (t - s) * inv2 % p})
            return [Place(field, FINITE, below=p, splitting=SPLIT, index=i,
                          residue_card=p, root=r) for i, r in enumerate(roots)]
        if sym == -1:
            return [Place(field, FINITE, below=p, splitting=INERT, f=2,
                          residue_card=p * p)]
        root = (t * pow(2, -1, p)) % p if p != 2 else (1 if field.d % 4 == 3 else 0)
        return [Place(field, FINITE, below=p, splitting=RAMIFIED, e=2,
                      residue_card=p, root=root)]

    F = gf(field.q)
    if field.kind == RATFUNC:
        if below == INFINITY:
            return [Place(field, FF_INFINITE, below=INFINITY,
                          residue_card=field.q, deg=1)]
        pi = ffpoly.ptrim(below)
        if not ffpoly.is_irreducible(F, pi) or pi[-1] != 1:
            raise UnsupportedField(f"{below} is not monic irreducible over F_{field.q}")
        dg = ffpoly.pdeg(pi)
        return [Place(field, FF_FINITE, below=pi, residue_card=field.q ** dg, deg=dg)]

    # hyperelliptic y^2 = f(t)
    if below == INFINITY:
        if ffpoly.pdeg(field.fpoly) % 2 == 1:
            return [Place(field, FF_INFINITE, below=INFINITY, splitting=RAMIFIED,
                          e=2, residue_card=field.q, deg=1)]
        # f monic of even degree: the leading coefficient 1 is a square
        return [Place(field, FF_INFINITE, below=INFINITY, splitting=SPLIT, index=i,
                      residue_card=field.q, deg=1) for i in (0, 1)]
    pi = ffpoly.ptrim(below)
    if not ffpoly.is_irreducible(F, pi) or pi[-1] != 1:
        raise UnsupportedField(f"{below} is not monic irreducible over F_{field.q}")
    dg = ffpoly.pdeg(pi)
    sym = ffpoly.euler_symbol(F, field.fpoly, pi)
    if sym == 0:
        return [Place(field, FF_FINITE, below=pi, splitting=RAMIFIED, e=2,
                      residue_card=field.q ** dg, deg=dg)]
    if sym == 1:
        return [Place(field, FF_FINITE, below=pi, splitting=SPLIT, index=i,
                      residue_card=field.q ** dg, deg=dg) for i in (0, 1)]
    return [Place(field, FF_FINITE, below=pi, splitting=INERT, f=2,
                  residue_card=field.q ** (2 * dg), deg=2 * dg)]


def archimedean_places(field: GlobalFieldDesc) -> List[Place]:
    if field.kind in (RATIONAL, QUADRATIC):
        return places_above(field, INFINITY)
    return []


def ramified_finite_places(field: GlobalFieldDesc) -> List[Place]:
    return list(_ramified_places(field))


@lru_cache(maxsize=None)
def _ramified_places(field: GlobalFieldDesc) -> Tuple[Place, ...]:
    return tuple(_ramified_places_impl(field))


def _ramified_places_impl(field: GlobalFieldDesc) -> List[Place]:
    """Finite places dividing the discriminant (number fields), or all
    ramified places including the degree place (function fields)."""
    if field.kind == RATIONAL or field.kind == RATFUNC:
        return []
    if field.kind == QUADRATIC:
        out = []
        for p in sorted(factorize(abs(field.disc))):
            pl, = places_above(field, p)
            assert pl.splitting == RAMIFIED
            out.append(pl)
        return out
    F = gf(field.q)
    out = []
    _, fact = ffpoly.pfactor(F, field.fpoly)
    for pi in sorted(fact):
        pl, = places_above(field, pi)
        out.append(pl)
    if ffpoly.pdeg(field.fpoly) % 2 == 1:
        out.extend(places_above(field, INFINITY))
    return out


# ---------------------------------------------------------------------------
# discriminants
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def absolute_discriminant(field: GlobalFieldDesc) -> PosRealExact:
    """d_K: |disc| for number fields, q^(2g-2) for function fields."""
    if field.kind == RATIONAL:
        return PosRealExact.one()
    if field.kind == QUADRATIC:
        return PosRealExact.from_rational(abs(field.disc))
    F = gf(field.q)
    g = 0 if field.kind == RATFUNC else field.genus
    return PosRealExact.prime_power(F.p, F.k * (2 * g - 2))


def _is_extension(L: GlobalFieldDesc, K: GlobalFieldDesc) -> bool:
    if L == K:
        return True
    if K == L.prime_field:
        return True
    return False


def relative_discriminant_norm(L: GlobalFieldDesc, K: GlobalFieldDesc) -> PosRealExact:
    """d_{L/K} = d_L / d_K^{[L:K]}, exactly."""
    if not _is_extension(L, K):
        raise NotAnExtension(f"{K.describe()} is not a base of {L.describe()}")
    rel_deg = 1 if L == K else L.degree
    return absolute_discriminant(L) / absolute_discriminant(K) ** rel_deg


def local_discriminant_desc(field: GlobalFieldDesc, p: int) -> LocalFieldDesc:
    """The local quadratic extension of Q_p at a ramified prime of a
    quadratic number field, built from a validated defining polynomial."""
    if field.kind != QUADRATIC:
        raise UnsupportedField("local descriptors are built for quadratic fields")
    if kronecker_of_disc(field.disc, p) != 0:
        raise GlobalFieldError(f"{p} is unramified in {field.describe()}")
    # K_P = Q_p(sqrt d); x^2 - d lands in a validated shape in every
    # ramified case: Eisenstein for odd p | d, x^2 - u (u = 3 mod 4) or
    # x^2 - 2u over Q_2
    return quadratic_extension(base_field(p, P_ADIC), 0, -field.d)


def different_exponent_at(field: GlobalFieldDesc, place: Place) -> int:
    """The exponent of the local different at a place (0 if unramified)."""
    if not place.is_ramified():
        return 0
    if field.kind == QUADRATIC:
        return local_discriminant_desc(field, place.below).different_exponent
    if field.kind == HYPERELLIPTIC:
        return 1  # odd q: all ramification is tame
    raise UnsupportedField(f"no ramified places on {field.describe()}")


# ---------------------------------------------------------------------------
# ideles and divisors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Idele:
    """Finite-support idele: finite components as valuations v(alpha_v),
    archimedean components as positive reals."""

    field: GlobalFieldDesc
    finite_components: Tuple[Tuple[Place, int], ...]
    archimedean_components: Tuple[Tuple[Place, float], ...]

    @staticmethod
    def make(field: GlobalFieldDesc, finite: Dict[Place, int] | None = None,
             arch: Dict[Place, float] | None = None) -> "Idele":
        finite = {pl: int(n) for pl, n in (finite or {}).items() if n != 0}
        arch = {pl: float(a) for pl, a in (arch or {}).items() if a != 1.0}
        for pl in finite:
            if pl.field != field or pl.is_archimedean():
                raise GlobalFieldError(f"bad finite component at {pl}")
        for pl, a in arch.items():
            if pl.field != field or not pl.is_archimedean():
                raise GlobalFieldError(f"bad archimedean component at {pl}")
            if a <= 0:
                raise GlobalFieldError("archimedean components must be positive")
        return Idele(field,
                     tuple(sorted(finite.items(), key=lambda kv: kv[0].label())),
                     tuple(sorted(arch.items(), key=lambda kv: kv[0].label())))

    @staticmethod
    def trivial(field: GlobalFieldDesc) -> "Idele":
        return Idele.make(field)

    @property
    def finite(self) -> Dict[Place, int]:
        return dict(self.finite_components)

    @property
    def arch(self) -> Dict[Place, float]:
        return dict(self.archimedean_components)

    def __mul__(self, other: "Idele") -> "Idele":
        if self.field != other.field:
            raise GlobalFieldError("ideles of different fields")
        fin = self.finite
        for pl, n in other.finite_components:
            fin[pl] = fin.get(pl, 0) + n
        ar = self.arch
        for pl, a in other.archimedean_components:
            ar[pl] = ar.get(pl, 1.0) * a
        return Idele.make(self.field, fin, ar)

    def inv(self) -> "Idele":
        return Idele.make(self.field,
                          {pl: -n for pl, n in self.finite_components},
                          {pl: 1.0 / a for pl, a in self.archimedean_components})

    def describe(self) -> str:
        parts = [f"{pl.label()}:{n}" for pl, n in self.finite_components]
        parts += [f"{pl.label()}:{a:g}" for pl, a in self.archimedean_components]
        return ",".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class Divisor:
    """Arakelov divisor: integer coefficients at finite places, real
    coefficients at archimedean places."""

    field: GlobalFieldDesc
    coefficients: Tuple[Tuple[Place, object], ...]

    @staticmethod
    def make(field: GlobalFieldDesc, coeffs: Dict[Place, object]) -> "Divisor":
        cleaned = {pl: c for pl, c in coeffs.items() if c != 0}
        return Divisor(field, tuple(sorted(cleaned.items(),
                                           key=lambda kv: kv[0].label())))

    @property
    def coeffs(self) -> Dict[Place, object]:
        return dict(self.coefficients)

    def __add__(self, other: "Divisor") -> "Divisor":
        if self.field != other.field:
            raise GlobalFieldError("divisors on different fields")
        out = self.coeffs
        for pl, c in other.coefficients:
            out[pl] = out.get(pl, 0) + c
        return Divisor.make(self.field, out)

    def degree(self) -> LogValue:
        """Arakelov degree: finite coefficients pair with log(#k_v)."""
        total = LogValue.zero()
        for pl, c in self.coefficients:
            if pl.is_archimedean():
                total = total + LogValue.of_real(float(c))
            else:
                total = total + LogValue.log_of_int(pl.residue_card, scale=c)
        return total

    def finite_degree(self) -> int:
        """Function fields: sum of n_v * deg(v) over all places."""
        if not self.field.is_function_field:
            raise UnsupportedField("finite_degree is a function-field notion")
        return sum(c * pl.deg for pl, c in self.coefficients)

    def describe(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c}[{pl.label()}]" for pl, c in self.coefficients)


def divisor_of_idele(alpha: Idele) -> Divisor:
    """The divisor with coefficient -v(alpha_v) at finite places and
    e_v log(alpha_v) at archimedean places; a group homomorphism."""
    coeffs: Dict[Place, object] = {pl: -n for pl, n in alpha.finite_components}
    for pl, a in alpha.archimedean_components:
        coeffs[pl] = pl.e_v * math.log(a)
    return Divisor.make(alpha.field, coeffs)


def idele_from_divisor(div: Divisor) -> Idele:
    """A preimage of a divisor under divisor_of_idele (witnesses surjectivity)."""
    fin: Dict[Place, int] = {}
    arch: Dict[Place, float] = {}
    for pl, c in div.coefficients:
        if pl.is_archimedean():
            arch[pl] = math.exp(float(c) / pl.e_v)
        else:
            fin[pl] = -int(c)
    return Idele.make(div.field, fin, arch)


def idele_log_norm(alpha: Idele) -> LogValue:
    """log |alpha| = sum_v log|alpha_v|_v, exact at the finite places."""
    total = LogValue.zero()
    for pl, n in alpha.finite_components:
        total = total + LogValue.log_of_int(pl.residue_card, scale=-n)
    for pl, a in alpha.archimedean_components:
        total = total + LogValue.of_real(pl.e_v * math.log(a))
    return total


# ---------------------------------------------------------------------------
# principal ideles
# ---------------------------------------------------------------------------


def _lift_omega_root(field: GlobalFieldDesc, p: int, r0: int, modulus: int) -> int:
    """Newton-lift a simple root of x^2 - t x + n from mod p to mod p^K."""
    t, n = field.omega_params()
    r = r0 % p
    mod = p
    while mod < modulus:
        mod = min(mod * mod, modulus)
        fr = (r * r - t * r + n) % mod
        dr = (2 * r - t) % mod
        r = (r - fr * pow(dr, -1, mod)) % mod
    return r % modulus


def principal_idele(field: GlobalFieldDesc, element) -> Idele:
    """The idele of a nonzero global element.

    Element formats: a rational for Q; a pair (a, b) of rationals meaning
    a + b*omega for quadratic fields; a pair (numerator, denominator) of
    F_q[t] polynomials for rational function fields.
    """
    if field.kind == RATIONAL:
        x = Fraction(element)
        if x == 0:
            raise GlobalFieldError("the zero element has no idele")
        fin = {}
        for p in set(factorize(abs(x.numerator))) | set(factorize(x.denominator)):
            v = 0
            num, den = x.numerator, x.denominator
            while num % p == 0:
                num //= p
                v += 1
            while den % p == 0:
                den //= p
                v -= 1
            pl, = places_above(field, p)
            fin[pl] = v
        pl_inf, = places_above(field, INFINITY)
        return Idele.make(field, fin, {pl_inf: abs(float(x))})

    if field.kind == QUADRATIC:
        a, b = Fraction(element[0]), Fraction(element[1])
        if a == 0 and b == 0:
            raise GlobalFieldError("the zero element has no idele")
        t, n = field.omega_params()
        norm = a * a + a * b * t + b * b * n
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        fin: Dict[Place, int] = {}
        prime_set = set(factorize(abs(norm.numerator))) | \
            set(factorize(norm.denominator)) | set(factorize(den))
        for p in sorted(prime_set):
            vn = 0
            num_, den_ = norm.numerator, norm.denominator
            while num_ % p == 0:
                num_ //= p
                vn += 1
            while den_ % p == 0:
                den_ //= p
                vn -= 1
            places = places_above(field, p)
            if places[0].splitting == INERT:
                assert vn % 2 == 0
                if vn:
                    fin[places[0]] = vn // 2
            elif places[0].splitting == RAMIFIED:
                if vn:
                    fin[places[0]] = vn
            else:
                # split: localize a + b*omega through each root embedding
                K = abs(vn) + max(0, 2 * _vp_rat(den, p)) + 3
                modulus = p ** K
                vals = []
                for pl in places:
                    r = _lift_omega_root(field, p, pl.root, modulus)
                    z = a + b * Fraction(r)
                    vals.append(_vp_rat_bounded(z, p, K))
                # valuations must account for the full norm valuation
                if vals[0] is None:
                    vals[0] = vn - vals[1]
                if vals[1] is None:
                    vals[1] = vn - vals[0]
                assert vals[0] + vals[1] == vn, (p, vals, vn)
                for pl, v in zip(places, vals):
                    if v:
                        fin[pl] = v
        arch: Dict[Place, float] = {}
        sq = math.sqrt(abs(field.d))
        if field.d > 0:
            w0 = (t + math.sqrt(field.disc)) / 2
            w1 = (t - math.sqrt(field.disc)) / 2
            for pl, w in zip(places_above(field, INFINITY), (w0, w1)):
                arch[pl] = abs(float(a) + float(b) * w)
        else:
            pl, = places_above(field, INFINITY)
            arch[pl] = math.sqrt(float(abs(norm)))
        return Idele.make(field, fin, arch)

    if field.kind == RATFUNC:
        F = gf(field.q)
        num, den = ffpoly.ptrim(element[0]), ffpoly.ptrim(element[1])
        if not num:
            raise GlobalFieldError("the zero element has no idele")
        fin: Dict[Place, int] = {}
        _, nf = ffpoly.pfactor(F, num)
        _, df = ffpoly.pfactor(F, den)
        for pi in set(nf) | set(df):
            pl, = places_above(field, pi)
            v = nf.get(pi, 0) - df.get(pi, 0)
            if v:
                fin[pl] = v
        pl_inf, = places_above(field, INFINITY)
        v_inf = ffpoly.pdeg(den) - ffpoly.pdeg(num)
        if v_inf:
            fin[pl_inf] = v_inf
        return Idele.make(field, fin)

    raise UnsupportedField(f"principal ideles unsupported on {field.describe()}")


def _vp_rat(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _vp_rat_bounded(x: Fraction, p: int, bound: int):
    """v_p of a rational, or None when it is >= bound (unresolved lift)."""
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    while num % p == 0 and v < bound:
        num //= p
        v += 1
    return v if v < bound else None


# ---------------------------------------------------------------------------
# random ideles (seeded; used by verification suites)
# ---------------------------------------------------------------------------


def random_idele(field: GlobalFieldDesc, rng, max_val: int = 3,
                 arch_span: float = 1.5, max_places: int = 3) -> Idele:
    fin: Dict[Place, int] = {}
    if field.is_function_field:
        F = gf(field.q)
        pool = [pi for pi in ffpoly.monic_irreducibles(field.q, 2)]
        rng.shuffle(pool)
        for pi in pool[: rng.randint(0, max_places)]:
            pls = places_above(field, pi)
            pl = rng.choice(pls)
            n = rng.randint(-max_val, max_val)
            if n:
                fin[pl] = n
        if rng.random() < 0.6:
            pl = rng.choice(places_above(field, INFINITY))
            n = rng.randint(-max_val, max_val)
            if n:
                fin[pl] = n
        return Idele.make(field, fin)
    primes = [2, 3, 5, 7, 11, 13]
    rng.shuffle(primes)
    for p in primes[: rng.randint(0, max_places)]:
        pls = places_above(field, p)
        pl = rng.choice(pls)
        n = rng.randint(-max_val, max_val)
        if n:
            fin[pl] = n
    arch = {}
    for pl in archimedean_places(field):
        if rng.random() < 0.8:
            arch[pl] = math.exp(rng.uniform(-arch_span, arch_span))
    return Idele.make(field, fin, arch)


def random_idele_bounded(field: GlobalFieldDesc, rng, bound: float = 5.0,
                         max_val: int = 2, max_places: int = 2) -> Idele:
    """A random idele with |log|alpha|| <= bound.

    For number fields the archimedean components are set to steer the
    log-norm to a uniform target in [-bound, bound] (with a small jitter
    between places); function fields resample until the degree fits.
    """
    if field.is_function_field:
        for _ in range(200):
            al = random_idele(field, rng, max_val=max_val, max_places=max_places)
            if abs(float(idele_log_norm(al))) <= bound:
                return al
        raise GlobalFieldError("could not sample a bounded idele")
    al = random_idele(field, rng, max_val=max_val, max_places=max_places)
    fin = al.finite
    fin_norm = float(idele_log_norm(Idele.make(field, fin)))
    target = rng.uniform(-bound, bound)
    need = target - fin_norm
    arches = archimedean_places(field)
    jitters = [rng.uniform(-0.5, 0.5) for _ in arches]
    total_e = sum(pl.e_v for pl in arches)
    arch = {pl: math.exp(need / total_e + j)
            for pl, j in zip(arches, jitters)}
    # the jitter shifts the norm by at most sum e_v * 1/2; rescale exactly
    out = Idele.make(field, fin, arch)
    excess = float(idele_log_norm(out)) - target
    arch = {pl: a * math.exp(-excess / total_e) for pl, a in arch.items()}
    return Idele.make(field, fin, arch)
