"""Integration and Fourier transforms of step functions on local fields.

A step function is locally constant and compactly supported: it is stored
as a sparse table of exact values on cosets of pi^N O_v inside pi^(-M) O_v.
Values are :class:`CycScalar`: rational combinations of roots of unity of
p-power order times an exact positive measure factor.  With the measure
normalized by mu(O_v) = p^(-d/2) the Fourier transform is an exact
involution up to reflection, and the classical coset-integral formulas are
reproduced by honest character sums.

Scalars canonicalize in the power basis of the p^k-th cyclotomic field
(full 1/p-cycles of equal coefficients cancel), which decides vanishing of
the character sums exactly; a complex-float evaluation is kept around as a
numeric cross-check, not as the arbiter.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .localfields import (
    LocalElement,
    LocalFieldDesc,
    UnitAngle,
    _cadd,
    _clift,
    _cmul,
    _cneg,
    _expand_digits,
    _pi_power,
    _szero,
    local_measure,
    standard_character,
)
from .values import PosRealExact


class HarmonicError(Exception):
    pass


# ---------------------------------------------------------------------------
# exact scalars: rational sums of p-power roots of unity times a measure
# ---------------------------------------------------------------------------


def _reduce_terms(p: int, terms: Dict[Fraction, Fraction]) -> Dict[Fraction, Fraction]:
    """Canonical coordinates in the power basis of Q(zeta_{p^k}).

    Angles must have p-power denominators.  Exponents >= (p-1)*p^(k-1) are
    rewritten through the cyclotomic relation 1 + zeta^(p^(k-1)) + ... +
    zeta^((p-1)p^(k-1)) = 0, which cancels exactly the full 1/p-cycles.
    """
    if not terms:
        return {}
    D = 1
    for r in terms:
        den = r.denominator
        q = den
        while q % p == 0:
            q //= p
        if q != 1:
            raise HarmonicError(f"angle {r} has non-{p}-power denominator")
        D = max(D, den)
    if D == 1:
        c = terms.get(Fraction(0), Fraction(0))
        return {Fraction(0): c} if c else {}
    work: Dict[int, Fraction] = {}
    for r, c in terms.items():
        m = int(r * D)
        work[m] = work.get(m, Fraction(0)) + c
    step = D // p
    bound = (p - 1) * step
    for m in sorted(work, reverse=True):
        if m < bound:
            break
        c = work.get(m, Fraction(0))
        if not c:
            continue
        del work[m]
        for j in range(p - 1):
            mm = m - (p - 1 - j) * step
            work[mm] = work.get(mm, Fraction(0)) - c
    out: Dict[Fraction, Fraction] = {}
    for m, c in work.items():
        if c:
            out[Fraction(m, D)] = c
    return out


def _gauss_sqrt_terms(p: int) -> Dict[Fraction, Fraction]:
    """Terms of a cyclotomic expression equal to sqrt(p), when one exists
    with p-power angles: p = 2 or p = 1 mod 4."""
    if p == 2:
        return {Fraction(1, 8): Fraction(1), Fraction(7, 8): Fraction(1)}
    if p % 4 == 1:
        return {
            Fraction(a, p): (Fraction(1) if pow(a, (p - 1) // 2, p) == 1
                             else Fraction(-1))
            for a in range(1, p)
        }
    raise HarmonicError(f"sqrt({p}) is not a {p}-power cyclotomic number")


class CycScalar:
    """(sum over angles r of c_r * e^{2 pi i r}) * measure_factor, exact."""

    __slots__ = ("p", "terms", "measure_factor")

    def __init__(self, p: int, terms: Dict[Fraction, Fraction],
                 measure_factor: PosRealExact | None = None):
        self.p = p
        self.terms = {Fraction(r) % 1: Fraction(c) for r, c in terms.items() if c}
        self.measure_factor = measure_factor or PosRealExact.one()

    # -- constructors --------------------------------------------------------

    @classmethod
    def _raw(cls, p: int, terms: Dict[Fraction, Fraction],
             measure_factor: PosRealExact) -> "CycScalar":
        """Internal: terms must already be normalized (keys in [0,1), no
        zero coefficients)."""
        obj = object.__new__(cls)
        obj.p = p
        obj.terms = terms
        obj.measure_factor = measure_factor
        return obj

    @classmethod
    def _cleaned(cls, p: int, terms: Dict[Fraction, Fraction],
                 measure_factor: PosRealExact) -> "CycScalar":
        """Internal: normalized keys, but zero coefficients still present."""
        return cls._raw(p, {r: c for r, c in terms.items() if c}, measure_factor)

    @classmethod
    def zero(cls, p: int) -> "CycScalar":
        return cls(p, {})

    @classmethod
    def rational(cls, p: int, q) -> "CycScalar":
        return cls(p, {Fraction(0): Fraction(q)})

    @classmethod
    def from_posreal(cls, p: int, m: PosRealExact) -> "CycScalar":
        return cls(p, {Fraction(0): Fraction(1)}, m)

    @classmethod
    def from_angle(cls, p: int, angle: UnitAngle, coeff=1) -> "CycScalar":
        return cls(p, {angle.r: Fraction(coeff)})

    # -- canonical form ---------------------------------------------------------

    def canonical(self) -> "CycScalar":
        """Fold the rational part of the measure into the coefficients and
        reduce the angle terms in the cyclotomic power basis."""
        terms = _reduce_terms(self.p, self.terms)
        if not terms:
            return CycScalar._raw(self.p, {}, PosRealExact.one())
        ratio = Fraction(1)
        residual: Dict[int, Fraction] = {}
        for q, e in self.measure_factor.exponents.items():
            k = math.floor(e)
            ratio *= Fraction(q) ** k
            if e != k:
                residual[q] = e - k
        if ratio != 1:
            terms = {r: c * ratio for r, c in terms.items()}
        return CycScalar._raw(self.p, terms, PosRealExact(residual))

    def is_zero(self) -> bool:
        return not _reduce_terms(self.p, self.terms)

    def is_rational(self) -> bool:
        c = self.canonical()
        return (not c.terms) or set(c.terms) == {Fraction(0)}

    def as_rational(self) -> Fraction:
        """Exact rational value; raises when irrational."""
        c = self.canonical()
        if not c.terms:
            return Fraction(0)
        if set(c.terms) != {Fraction(0)} or not c.measure_factor.is_rational():
            raise HarmonicError(f"{self} is not rational")
        return c.terms[Fraction(0)] * c.measure_factor.as_fraction()

    # -- arithmetic ---------------------------------------------------------------

    def _aligned_terms(self, other: "CycScalar"):
        """Rewrite both scalars over a common measure factor, if possible."""
        if self.measure_factor == other.measure_factor:
            return self.terms, other.terms, self.measure_factor
        a, b = self.canonical(), other.canonical()
        if not a.terms:
            return {}, b.terms, b.measure_factor
        if not b.terms:
            return a.terms, {}, a.measure_factor
        ratio = (b.measure_factor / a.measure_factor).exponents
        if all(e.denominator == 1 for e in ratio.values()):
            scale = Fraction(1)
            for q, e in ratio.items():
                scale *= Fraction(q) ** int(e)
            return a.terms, {r: c * scale for r, c in b.terms.items()}, a.measure_factor
        # half-integer leftovers: try to absorb sqrt(q) as a Gauss sum
        if all(q == self.p and (2 * e).denominator == 1 for q, e in ratio.items()):
            e = ratio[self.p]
            k = math.floor(e)
            scale = Fraction(self.p) ** k
            bt = {r: c * scale for r, c in b.terms.items()}
            root = _gauss_sqrt_terms(self.p)  # may raise for p = 3 mod 4
            bt2: Dict[Fraction, Fraction] = {}
            for r, c in bt.items():
                for rr, cc in root.items():
                    key = (r + rr) % 1
                    bt2[key] = bt2.get(key, Fraction(0)) + c * cc
            return a.terms, bt2, a.measure_factor
        raise HarmonicError(
            f"incompatible measure factors {a.measure_factor} / {b.measure_factor}")

    def __add__(self, other: "CycScalar") -> "CycScalar":
        ta, tb, mf = self._aligned_terms(other)
        out = dict(ta)
        for r, c in tb.items():
            out[r] = out.get(r, Fraction(0)) + c
        return CycScalar._cleaned(self.p, out, mf)

    def __neg__(self) -> "CycScalar":
        return CycScalar._raw(self.p, {r: -c for r, c in self.terms.items()},
                              self.measure_factor)

    def __sub__(self, other: "CycScalar") -> "CycScalar":
        return self + (-other)

    def __mul__(self, other: "CycScalar") -> "CycScalar":
        out: Dict[Fraction, Fraction] = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                r = (r1 + r2) % 1
                out[r] = out.get(r, Fraction(0)) + c1 * c2
        return CycScalar._cleaned(self.p, out,
                                  self.measure_factor * other.measure_factor)

    def scale_rational(self, q) -> "CycScalar":
        q = Fraction(q)
        if q == 0:
            return CycScalar._raw(self.p, {}, PosRealExact.one())
        return CycScalar._raw(self.p, {r: c * q for r, c in self.terms.items()},
                              self.measure_factor)

    def scale_measure(self, m: PosRealExact) -> "CycScalar":
        return CycScalar._raw(self.p, self.terms, self.measure_factor * m)

    def rotate(self, angle: UnitAngle) -> "CycScalar":
        return CycScalar._raw(self.p,
                              {(r + angle.r) % 1: c for r, c in self.terms.items()},
                              self.measure_factor)

    def eq(self, other: "CycScalar") -> bool:
        try:
            ta, tb, _ = self._aligned_terms(other)
        except HarmonicError:
            # no common rewriting exists: equal only if both vanish
            return self.is_zero() and other.is_zero()
        diff = dict(ta)
        for r, c in tb.items():
            diff[r] = diff.get(r, Fraction(0)) - c
        return not _reduce_terms(self.p, diff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.eq(other)

    __hash__ = None  # type: ignore[assignment]

    def complex_value(self) -> complex:
        total = 0j
        for r, c in self.terms.items():
            arg = 2 * math.pi * float(r)
            total += complex(float(c) * math.cos(arg), float(c) * math.sin(arg))
        return total * float(self.measure_factor)

    def to_json(self) -> dict:
        c = self.canonical()
        return {
            "angles": [[r.numerator, r.denominator] for r in sorted(c.terms)],
            "coefficients": [str(c.terms[r]) for r in sorted(c.terms)],
            "measure_factor": {str(q): str(e) for q, e in
                               sorted(c.measure_factor.exponents.items())},
        }

    def __repr__(self) -> str:
        c = self.canonical()
        if not c.terms:
            return "0"
        body = " + ".join(f"({co})e({r})" for r, co in sorted(c.terms.items()))
        if c.measure_factor.is_one():
            return body
        return f"[{body}] * {c.measure_factor}"


# ---------------------------------------------------------------------------
# step functions
# ---------------------------------------------------------------------------

DigitVec = Tuple


@dataclass(frozen=True)
class StepFunction:
    """Locally constant compactly supported function on a local field.

    Supported in pi^(-M) O_v, constant on cosets of pi^N O_v.  ``values``
    maps canonical digit vectors (positions -M .. N-1, lowest lifts) to
    scalars; missing cosets are zero.
    """

    field: LocalFieldDesc
    support_bound: int
    level: int
    values: Dict[DigitVec, CycScalar] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.support_bound + self.level < 0:
            raise HarmonicError(
                f"support bound {self.support_bound} + level {self.level} < 0")

    @property
    def length(self) -> int:
        return self.support_bound + self.level

    def coset_count(self) -> int:
        return self.field.residue_card ** self.length

    def iter_cosets(self) -> Iterable[DigitVec]:
        return itertools.product(self.field.residue_reps(), repeat=self.length)

    def value_at(self, start: int, digits: DigitVec) -> CycScalar:
        """Value on the coset of the element with the given digit window."""
        M, N = self.support_bound, self.level
        zero = 0 if self.field.f == 1 else (0, 0)
        key = []
        for pos in range(-M, N):
            idx = pos - start
            key.append(digits[idx] if 0 <= idx < len(digits) else zero)
        for pos in range(start, -M):
            if digits[pos - start] != zero:
                return CycScalar.zero(self.field.p)  # outside the support
        return self.values.get(tuple(key), CycScalar.zero(self.field.p))

    def value_at_zero(self) -> CycScalar:
        zero = 0 if self.field.f == 1 else (0, 0)
        return self.values.get((zero,) * self.length, CycScalar.zero(self.field.p))

    def refine(self, M2: int, N2: int, dense_cap: int = 200_000) -> "StepFunction":
        if M2 < self.support_bound or N2 < self.level:
            raise HarmonicError("refinement must not coarsen the table")
        if M2 == self.support_bound and N2 == self.level:
            return self
        if self.field.residue_card ** (M2 + N2) > dense_cap:
            raise HarmonicError("refinement too large to enumerate")
        vals: Dict[DigitVec, CycScalar] = {}
        for vec in itertools.product(self.field.residue_reps(), repeat=M2 + N2):
            v = self.value_at(-M2, vec)
            if not v.is_zero():
                vals[vec] = v
        return StepFunction(self.field, M2, N2, vals)

    def equals(self, other: "StepFunction") -> bool:
        if self.field != other.field:
            return False
        M = max(self.support_bound, other.support_bound)
        N = max(self.level, other.level)
        a, b = self.refine(M, N), other.refine(M, N)
        keys = set(a.values) | set(b.values)
        zero = CycScalar.zero(self.field.p)
        return all(a.values.get(k, zero).eq(b.values.get(k, zero)) for k in keys)

    def __add__(self, other: "StepFunction") -> "StepFunction":
        if self.field != other.field:
            raise HarmonicError("step functions on different fields")
        M = max(self.support_bound, other.support_bound)
        N = max(self.level, other.level)
        a, b = self.refine(M, N), other.refine(M, N)
        vals = dict(a.values)
        for k, v in b.values.items():
            w = vals.get(k)
            vals[k] = v if w is None else w + v
        vals = {k: v for k, v in vals.items() if not v.is_zero()}
        return StepFunction(self.field, M, N, vals)

    def scale(self, q) -> "StepFunction":
        return StepFunction(self.field, self.support_bound, self.level,
                            {k: v.scale_rational(q) for k, v in self.values.items()})

    def coset_element(self, vec: DigitVec) -> LocalElement:
        return LocalElement.from_digits(self.field, -self.support_bound, vec,
                                        precision=math.inf)


def indicator(field: LocalFieldDesc, m: int) -> StepFunction:
    """The characteristic function of pi^m O_v (value 1)."""
    return StepFunction(field, -m, m, {(): CycScalar.rational(field.p, 1)})


def coset_measure(field: LocalFieldDesc, level: int) -> PosRealExact:
    """mu(pi^level O_v) = (#k)^(-level) * mu(O_v)."""
    return PosRealExact.prime_power(field.p, -field.f * level) * local_measure(field)


def integrate(f: StepFunction) -> CycScalar:
    """Exact integral: sum of coset values weighted by the coset measure."""
    total = CycScalar.zero(f.field.p)
    for v in f.values.values():
        total = total + v
    return total.scale_measure(coset_measure(f.field, f.level)).canonical()


def _digit_angle(field: LocalFieldDesc, digit, s: int) -> Fraction:
    """Angle of the standard character at lift(digit) * pi^s."""
    A = _kernel_angles(field, s)  # angles of chi(-c pi^s)
    if field.f == 1:
        return (-digit * A[0]) % 1
    return (-(digit[0] * A[0] + digit[1] * A[1])) % 1


def character_coset_integral(field: LocalFieldDesc, m: int) -> CycScalar:
    """The integral of the standard character over pi^m O_v.

    The character is trivial precisely on the inverse different
    pi^(-d) O_v (d the different exponent), so for m >= -d the integral is
    the measure (#k)^(-m) mu(O_v); below that the full character sum is
    assembled and cancels to exact zero in canonical form.  For d = 0 this
    is the classical closed form with threshold m >= 0.
    """
    d = field.different_exponent
    if m >= -d:
        return CycScalar.from_posreal(field.p, coset_measure(field, m)).canonical()
    # character sum over pi^m O / pi^(-d) O: the angle of a digit vector is
    # the sum of its per-position digit angles, so the distribution of
    # angles is a convolution over positions
    positions = range(m, -d)
    tables = []
    D = 1
    for s in positions:
        angs = [_digit_angle(field, dg, s) for dg in field.residue_reps()]
        for r in angs:
            D = D * r.denominator // math.gcd(D, r.denominator)
        tables.append(angs)
    hist = {0: 1}
    for angs in tables:
        new: Dict[int, int] = {}
        for base_ang, cnt in hist.items():
            for r in angs:
                k = (base_ang + int(r * D)) % D
                new[k] = new.get(k, 0) + cnt
        hist = new
    terms = {Fraction(k, D): Fraction(cnt) for k, cnt in hist.items()}
    total = CycScalar._raw(field.p, terms, PosRealExact.one())
    return total.scale_measure(coset_measure(field, -d)).canonical()


# ---------------------------------------------------------------------------
# the Fourier transform
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _kernel_angles(field: LocalFieldDesc, s: int) -> Tuple[Fraction, ...]:
    """Angles of chi(-c * pi^s) for c = 1, theta, theta^2 (only c = 1 when
    the field has degree 1)."""
    pis = _pi_power(field, s)
    if field.rel_degree == 1:
        elt = LocalElement(field, _cneg(pis))
        return (standard_character(elt).r,)
    one = (_pi_power(field, 0))
    theta = (_szero(field), _pi_power(field, 0)[0])
    theta2 = _cmul(field, theta, theta)
    out = []
    for c in (one, theta, theta2):
        elt = LocalElement(field, _cneg(_cmul(field, c, pis)))
        out.append(standard_character(elt).r)
    return tuple(out)


def _digit_pair_coeffs(field: LocalFieldDesc, a, b) -> Tuple[int, int, int]:
    """Integer coordinates of lift(a)*lift(b) on (1, theta, theta^2)."""
    if field.f == 1:
        return (a * b, 0, 0)
    return (a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1])


def transform_shape(field: LocalFieldDesc, M: int, N: int) -> Tuple[int, int]:
    """(support bound, level) of the transform of an (M, N) step function.

    The support bound grows by the different exponent; the level is the
    sharp one (the transform of a support-M function is invariant under
    translation by pi^(M-d) O_v).
    """
    d = field.different_exponent
    return (N + d, M - d)


def fourier(f: StepFunction) -> StepFunction:
    """The Fourier transform integral f(y) chi(-x y) dy, exactly.

    Linear in f; on indicators it reproduces the closed form
    (#k)^(-m) mu(O) * indicator(-m - d).
    """
    field = f.field
    p = field.p
    M, N = f.support_bound, f.level
    Mh, Nh = transform_shape(field, M, N)
    in_pos = list(range(-M, N))
    out_pos = list(range(-Mh, Nh))
    reps = field.residue_reps()

    smin = (out_pos[0] + in_pos[0]) if in_pos and out_pos else 0
    smax = (out_pos[-1] + in_pos[-1]) if in_pos and out_pos else 0
    kernels = {s: _kernel_angles(field, s) for s in range(smin, smax + 1)}

    # common denominator for all angles that can appear
    D = 1
    for angs in kernels.values():
        for r in angs:
            D = D * r.denominator // math.gcd(D, r.denominator)
    for v in f.values.values():
        for r in v.terms:
            D = D * r.denominator // math.gcd(D, r.denominator)

    kint = {s: tuple(int(r * D) % D for r in angs) for s, angs in kernels.items()}
    mu = coset_measure(field, N)

    # integer-scale the coefficients of f once: all the per-coset work below
    # is then pure integer arithmetic
    L = 1
    for val in f.values.values():
        for c in val.terms.values():
            L = L * c.denominator // math.gcd(L, c.denominator)
    items = []
    mf_of: Dict = {}
    for yvec, val in f.values.items():
        key = _mf_key(val.measure_factor)
        mf_of[key] = val.measure_factor
        terms = tuple((int(r * D) % D, int(c * L)) for r, c in val.terms.items())
        items.append((tuple(_rep_index(field, dg) for dg in yvec), key, terms))
    Linv = Fraction(1, L)

    out_values: Dict[DigitVec, CycScalar] = {}
    deg2 = field.rel_degree == 2
    for xvec in itertools.product(reps, repeat=len(out_pos)):
        # rows[j_idx][rep_idx] = angle contribution of the y-digit at position j
        rows = []
        for j in in_pos:
            row = []
            for b in reps:
                tot = 0
                for i, a in zip(out_pos, xvec):
                    n1, nw, nw2 = _digit_pair_coeffs(field, a, b)
                    A = kint[i + j]
                    tot += n1 * A[0]
                    if deg2:
                        tot += nw * A[1] + nw2 * A[2]
                row.append(tot % D)
            rows.append(row)
        # accumulate sum_y f(y) * zeta^(angle(x, y)) per measure factor
        acc: Dict = {}
        for yidx, key, terms in items:
            ang = 0
            for j_idx, ridx in enumerate(yidx):
                ang += rows[j_idx][ridx]
            ang %= D
            arr = acc.get(key)
            if arr is None:
                arr = acc[key] = [0] * D
            for m, c in terms:
                arr[(m + ang) % D] += c
        total = CycScalar.zero(p)
        for key, arr in acc.items():
            terms = {Fraction(m, D): Fraction(arr[m]) * Linv
                     for m in range(D) if arr[m]}
            total = total + CycScalar._raw(p, terms, mf_of[key])
        total = total.scale_measure(mu).canonical()
        if not total.is_zero():
            out_values[xvec] = total
    return StepFunction(field, Mh, Nh, out_values)


def _rep_index(field: LocalFieldDesc, digit) -> int:
    if field.f == 1:
        return digit
    return digit[0] * field.p + digit[1]


def _mf_key(m: PosRealExact):
    return tuple(sorted(m.exponents.items()))


@lru_cache(maxsize=200_000)
def negate_coset(field: LocalFieldDesc, start: int, vec: DigitVec) -> DigitVec:
    """Digit vector of the negative of a coset representative."""
    coords = (_szero(field), _szero(field))
    for j, d in enumerate(vec):
        coords = _cadd(coords, _cmul(field, _clift(field, d),
                                     _pi_power(field, start + j)))
    return _expand_digits(field, _cneg(coords), start, len(vec))


@dataclass
class InversionReport:
    field: LocalFieldDesc
    passed: bool
    cosets_checked: int
    witnesses: List[Tuple[DigitVec, str, str]]

    def to_json(self) -> dict:
        return {
            "field": self.field.describe(),
            "pass": self.passed,
            "cosets_checked": self.cosets_checked,
            "witnesses": [
                {"coset": list(map(str, w[0])), "lhs": w[1], "rhs": w[2]}
                for w in self.witnesses[:5]
            ],
        }


def verify_inversion(f: StepFunction,
                     double_transform: StepFunction | None = None) -> InversionReport:
    """Check f(xi) = f^^(-xi) pointwise as exact scalars.

    ``double_transform`` overrides the computed double transform (used by
    negative controls); by construction the shapes coincide with f's.
    """
    field = f.field
    g = double_transform if double_transform is not None else fourier(fourier(f))
    if (g.support_bound, g.level) != (f.support_bound, f.level):
        g = g.refine(max(g.support_bound, f.support_bound),
                     max(g.level, f.level))
        f = f.refine(g.support_bound, g.level)
    start = -f.support_bound
    keys = set(f.values)
    keys.update(negate_coset(field, start, k) for k in g.values)
    zero = CycScalar.zero(field.p)
    witnesses = []
    for k in sorted(keys):
        lhs = f.values.get(k, zero)
        rhs = g.values.get(negate_coset(field, start, k), zero)
        if not lhs.eq(rhs):
            witnesses.append((k, repr(lhs), repr(rhs)))
    return InversionReport(field, not witnesses, len(keys), witnesses)


def random_step_function(field: LocalFieldDesc, rng, max_bound: int = 2,
                         max_level: int = 2, coset_cap: int = 256,
                         max_cosets: int = 10) -> StepFunction:
    """A random sparse step function with M <= max_bound, N <= max_level.

    The coset count (#k)^(M+N) is capped so double transforms stay cheap.
    """
    R = field.residue_card
    shapes = [(m, n) for m in range(max_bound + 1) for n in range(max_level + 1)
              if R ** (m + n) <= coset_cap]
    M, N = rng.choice(shapes)
    reps = field.residue_reps()
    values: Dict[DigitVec, CycScalar] = {}
    for _ in range(rng.randint(1, max_cosets)):
        vec = tuple(rng.choice(reps) for _ in range(M + N))
        num = rng.choice([x for x in range(-9, 10) if x])
        den = rng.choice([1, 1, 2, 3, 4])
        values[vec] = CycScalar.rational(field.p, Fraction(num, den))
    return StepFunction(field, M, N, values)
