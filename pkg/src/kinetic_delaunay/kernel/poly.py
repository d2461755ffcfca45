"""Univariate integer polynomials of low degree and certified real-root isolation.

Polynomials are tuples of Python ints, lowest degree first, with no trailing
zeros; ``()`` is the zero polynomial.  Roots are reported as
:class:`IsolatedRoot` values: a rational interval that contains exactly one
real root of a square-free defining polynomial.  A degenerate interval
``lo == hi`` denotes an exact rational root.

All decisions are exact.  Floating point is used only as a filter that
proposes tight brackets (or certifies a sign with a generous error bound);
every answer that depends on it is either confirmed exactly or the exact
path is taken instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

Poly = tuple  # tuple[int, ...]

_EPS = 2.0 ** -52
# Relative slack applied to float error bounds; far above any rounding error
# a degree <= 3 evaluation can incur.
_FLOAT_SLACK = 1e-9


# ---------------------------------------------------------------------------
# basic arithmetic
# ---------------------------------------------------------------------------

def trim(coeffs: Iterable) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim((p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: Poly, c) -> Poly:
    return trim(a * c for a in p)


def deriv(p: Poly) -> Poly:
    return trim(i * p[i] for i in range(1, len(p)))


def content(p: Poly) -> int:
    g = 0
    for a in p:
        g = math.gcd(g, a)
    return g


def primitive(p: Poly) -> Poly:
    """Divide by the content and make the leading coefficient positive."""
    if not p:
        return ()
    g = content(p)
    if p[-1] < 0:
        g = -g
    return tuple(a // g for a in p)


def from_rationals(coeffs: Sequence) -> Poly:
    """Clear denominators of a rational coefficient list (sign-preserving)."""
    den = 1
    for c in coeffs:
        c = Fraction(c)
        den = den * c.denominator // math.gcd(den, c.denominator)
    return trim(int(Fraction(c) * den) for c in coeffs)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def sign(x) -> int:
    return (x > 0) - (x < 0)


def eval_homogeneous(p: Poly, num: int, den: int) -> int:
    """``den**deg * p(num/den)``: same sign as ``p(num/den)`` when ``den > 0``."""
    if not p:
        return 0
    d = len(p) - 1
    acc = 0
    dpow = 1
    npow_list = [1] * (d + 1)
    for i in range(1, d + 1):
        npow_list[i] = npow_list[i - 1] * num
    for i in range(d, -1, -1):
        acc += p[i] * npow_list[i] * dpow
        dpow *= den
    return acc


def sign_at(p: Poly, t: Fraction) -> int:
    t = Fraction(t)
    return sign(eval_homogeneous(p, t.numerator, t.denominator))


def eval_exact(p: Poly, t: Fraction) -> Fraction:
    t = Fraction(t)
    if not p:
        return Fraction(0)
    return Fraction(eval_homogeneous(p, t.numerator, t.denominator), t.denominator ** (len(p) - 1))


def eval_float(p: Poly, t: float) -> float:
    acc = 0.0
    for a in reversed(p):
        acc = acc * t + float(a)
    return acc


def sign_at_infinity(p: Poly, positive: bool = True) -> int:
    if not p:
        return 0
    s = sign(p[-1])
    if not positive and (len(p) - 1) % 2 == 1:
        s = -s
    return s


def taylor_at(p: Poly, m: Fraction) -> list:
    """Coefficients of ``p(m + h)`` in powers of ``h`` (exact)."""
    c = [Fraction(a) for a in p]
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += m * c[j + 1]
    return c


# ---------------------------------------------------------------------------
# gcd, square-free part, Sturm sequences
# ---------------------------------------------------------------------------

def _divmod_q(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        coef = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = coef
        for i, bb in enumerate(b):
            a[shift + i] -= coef * bb
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _to_int_primitive(p: Sequence) -> Poly:
    return primitive(from_rationals(p)) if p else ()


def rem(p: Poly, q: Poly) -> Poly:
    """Remainder of ``p / q`` over the rationals, as a primitive integer polynomial."""
    _, r = _divmod_q([Fraction(x) for x in p], [Fraction(x) for x in q])
    return _to_int_primitive(r)


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, r = _divmod_q([Fraction(x) for x in p], [Fraction(x) for x in q])
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _to_int_primitive(trim(quo))


def gcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd over the rationals (``()`` only if both are zero)."""
    a, b = primitive(p), primitive(q)
    while b:
        a, b = b, rem(a, b)
    return primitive(a)


def _discriminant(p: Poly) -> Optional[int]:
    d = len(p) - 1
    if d == 2:
        c, b, a = p
        return b * b - 4 * a * c
    if d == 3:
        dd, c, b, a = p
        return 18 * a * b * c * dd - 4 * b ** 3 * dd + b * b * c * c - 4 * a * c ** 3 - 27 * a * a * dd * dd
    return None


def squarefree(p: Poly) -> Poly:
    p = trim(p)
    if len(p) <= 2 or _discriminant(p):
        return primitive(p)
    g = gcd(p, deriv(p))
    if len(g) <= 1:
        return primitive(p)
    return exact_div(p, g)


def sturm_sequence(p: Poly) -> list:
    seq = [p, deriv(p)]
    while len(seq[-1]) > 1:
        _, r = _divmod_q([Fraction(x) for x in seq[-2]], [Fraction(x) for x in seq[-1]])
        if not r:
            break
        r = from_rationals(r)
        seq.append(tuple(-x for x in r))
    return [s for s in seq if s]


def _variations(signs: Iterable[int]) -> int:
    last = 0
    v = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _variations_at(seq: list, t: Optional[Fraction], positive: bool = True) -> int:
    if t is None:
        return _variations(sign_at_infinity(s, positive) for s in seq)
    return _variations(sign_at(s, t) for s in seq)


def count_roots(p: Poly, lo: Optional[Fraction], hi: Optional[Fraction], seq: Optional[list] = None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]`` (``None`` = infinite)."""
    if len(p) <= 1:
        return 0
    seq = seq if seq is not None else sturm_sequence(p)
    return _variations_at(seq, lo, positive=False) - _variations_at(seq, hi, positive=True)


def cauchy_bound(p: Poly) -> Fraction:
    lead = abs(p[-1])
    return 1 + max((Fraction(abs(a), lead) for a in p[:-1]), default=Fraction(0))


def _real_root_count_sqf(p: Poly) -> int:
    """Exact number of real roots of a square-free polynomial of degree <= 3."""
    d = len(p) - 1
    if d <= 0:
        return 0
    if d == 1:
        return 1
    if d == 2:
        return 2 if _discriminant(p) > 0 else 0
    if d == 3:
        return 3 if _discriminant(p) > 0 else 1
    return count_roots(p, None, None)


# ---------------------------------------------------------------------------
# isolated roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IsolatedRoot:
    """A real algebraic number given by a rational isolating interval.

    ``poly`` is square-free and has exactly one root in ``[lo, hi]``; when
    ``lo < hi`` neither endpoint is a root.  ``multiplicity`` refers to the
    polynomial the root was isolated from.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    float_estimate: float
    poly: Poly = field(repr=False)

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return self.float_estimate

    def contains(self, t) -> bool:
        t = Fraction(t)
        return self.lo <= t <= self.hi

    def bisect(self) -> IsolatedRoot:
        if self.is_exact:
            return self
        m = (self.lo + self.hi) / 2
        sm = sign_at(self.poly, m)
        if sm == 0:
            return IsolatedRoot(m, m, self.multiplicity, float(m), self.poly)
        if sm == sign_at(self.poly, self.lo):
            return IsolatedRoot(m, self.hi, self.multiplicity, self.float_estimate, self.poly)
        return IsolatedRoot(self.lo, m, self.multiplicity, self.float_estimate, self.poly)

    def refine(self, width) -> IsolatedRoot:
        width = Fraction(width)
        r = self
        while not r.is_exact and r.hi - r.lo > width:
            r = r.bisect()
        return r

    def rational_inside(self) -> Fraction:
        """A simple rational strictly inside the interval (the value itself if exact)."""
        if self.is_exact:
            return self.lo
        return _simplest_between(self.lo, self.hi)

    def __repr__(self) -> str:
        if self.is_exact:
            return f"IsolatedRoot({self.lo})"
        return f"IsolatedRoot(~{self.float_estimate:.12g} in [{self.lo}, {self.hi}], m={self.multiplicity})"


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational strictly between ``lo`` and ``hi`` with a small denominator."""
    if lo >= hi:
        raise ValueError("empty interval")
    width = hi - lo
    d = 1
    while Fraction(1, d) >= width:
        d *= 2
    n = math.floor(lo * d) + 1
    t = Fraction(n, d)
    if not lo < t < hi:
        t = (lo + hi) / 2
    return t


def _float_root_estimate(p: Poly, lo: Fraction, hi: Fraction) -> float:
    a, b = float(lo), float(hi)
    if a == b:
        return a
    fa = eval_float(p, a)
    for _ in range(80):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = eval_float(p, m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _make_root(p: Poly, lo: Fraction, hi: Fraction, mult: int) -> IsolatedRoot:
    est = float(lo) if lo == hi else _float_root_estimate(p, lo, hi)
    return IsolatedRoot(lo, hi, mult, est, p)


def _float_candidates(p: Poly) -> list:
    coeffs = [float(a) for a in reversed(p)]
    if len(coeffs) == 2:
        return [-coeffs[1] / coeffs[0]]
    if not all(math.isfinite(c) for c in coeffs):
        return []
    try:
        rts = np.roots(coeffs)
    except np.linalg.LinAlgError:
        return []
    out = []
    for z in rts:
        if abs(z.imag) <= 1e-7 * max(1.0, abs(z.real)):
            out.append(float(z.real))
    return sorted(out)


def _bracket(p: Poly, x: float) -> Optional[tuple[Fraction, Fraction]]:
    """Tight rational bracket around a float root guess, certified by sign change."""
    if not math.isfinite(x):
        return None
    fx = Fraction(x)
    sx = sign_at(p, fx)
    if sx == 0:
        return (fx, fx)
    delta = Fraction(max(abs(x), 1.0)) * Fraction(1, 1 << 34)
    for _ in range(4):
        lo, hi = fx - delta, fx + delta
        slo, shi = sign_at(p, lo), sign_at(p, hi)
        if slo == 0:
            return (lo, lo)
        if shi == 0:
            return (hi, hi)
        if slo != shi:
            return (lo, hi)
        delta *= 1 << 8
    return None


def _isolate_sqf_fast(p: Poly) -> Optional[list]:
    """All real roots of square-free ``p`` via float guesses + exact certification."""
    expected = _real_root_count_sqf(p)
    if expected == 0:
        return []
    brackets = []
    for x in _float_candidates(p):
        b = _bracket(p, x)
        if b is None:
            return None
        brackets.append(b)
    brackets.sort()
    for (lo1, hi1), (lo2, hi2) in zip(brackets, brackets[1:]):
        if hi1 >= lo2:
            return None
    if len(brackets) != expected:
        return None
    return brackets


def _isolate_sqf_sturm(p: Poly, lo: Fraction, hi: Fraction) -> list:
    """Bisection driven by Sturm counts on ``(lo, hi]``; ``lo`` must not be a root."""
    seq = sturm_sequence(p)
    out = []
    stack = [(lo, hi, count_roots(p, lo, hi, seq))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and sign_at(p, a) != 0:
            out.append((b, b) if sign_at(p, b) == 0 else (a, b))
            continue
        m = (a + b) / 2
        n_left = count_roots(p, a, m, seq)
        stack.append((a, m, n_left))
        stack.append((m, b, n - n_left))
    return sorted(out)


def _multiplicity(f: Poly, sqf: Poly, lo: Fraction, hi: Fraction) -> int:
    mult = 1
    g = f
    while True:
        g = gcd(g, deriv(g))
        if len(g) <= 1:
            return mult
        g_sqf = squarefree(g)
        if lo == hi:
            vanish = sign_at(g_sqf, lo) == 0
        else:
            vanish = sign_at(g_sqf, lo) != sign_at(g_sqf, hi)
        if not vanish:
            return mult
        mult += 1


def all_real_roots(f: Poly) -> list:
    """Every real root of ``f`` (not identically zero), sorted."""
    f = trim(f)
    if not f:
        raise ValueError("zero polynomial has no isolated roots")
    if len(f) == 1:
        return []
    sqf = squarefree(f)
    brackets = _isolate_sqf_fast(sqf)
    if brackets is None:
        b = cauchy_bound(sqf)
        brackets = _isolate_sqf_sturm(sqf, -b, b)
    simple = len(sqf) == len(primitive(f))
    return [_make_root(sqf, lo, hi, 1 if simple else _multiplicity(f, sqf, lo, hi)) for lo, hi in brackets]


def isolate_roots(f: Poly, window: tuple = (None, None)) -> list:
    """Real roots of ``f`` in the closed window ``[lo, hi]`` (``None`` = unbounded)."""
    lo, hi = window
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    out = []
    for r in all_real_roots(f):
        if lo is not None and compare_to_rational(r, lo) < 0:
            continue
        if hi is not None and compare_to_rational(r, hi) > 0:
            continue
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# comparisons and signs at algebraic points
# ---------------------------------------------------------------------------

def compare_to_rational(r: IsolatedRoot, t: Fraction) -> int:
    t = Fraction(t)
    while True:
        if r.hi < t:
            return -1
        if r.lo > t:
            return 1
        if r.is_exact:
            return 0
        if sign_at(r.poly, t) == 0:
            return 0
        if t == r.lo:
            return 1
        if t == r.hi:
            return -1
        s = sign_at(r.poly, t)
        if s == sign_at(r.poly, r.lo):
            return 1
        return -1


def _common_root_in(a: IsolatedRoot, b: IsolatedRoot) -> bool:
    g = gcd(a.poly, b.poly)
    if len(g) <= 1:
        return False
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo > hi:
        return False
    if lo == hi:
        return sign_at(g, lo) == 0
    slo, shi = sign_at(g, lo), sign_at(g, hi)
    if slo == 0 or shi == 0:
        return True
    return slo != shi


def compare_roots(a: IsolatedRoot, b: IsolatedRoot) -> int:
    """Exact comparison of two algebraic numbers: -1, 0 or +1."""
    if a.hi < b.lo:
        return -1
    if b.hi < a.lo:
        return 1
    if a.is_exact:
        return -compare_to_rational(b, a.lo)
    if b.is_exact:
        return compare_to_rational(a, b.lo)
    if _common_root_in(a, b):
        return 0
    while True:
        a, b = a.bisect(), b.bisect()
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if a.is_exact:
            return -compare_to_rational(b, a.lo)
        if b.is_exact:
            return compare_to_rational(a, b.lo)


def _float_certified_sign(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Sign of ``p`` on ``[lo, hi]`` if a float Taylor bound proves it constant, else 0."""
    try:
        m = float((lo + hi) / 2)
        h = float(hi - lo) * 0.5 * (1 + 1e-12) + abs(m) * _EPS
        cs = [float(a) for a in p]
    except OverflowError:
        return 0
    n = len(cs)
    if n == 0:
        return 0
    tay = list(cs)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            tay[j] += m * tay[j + 1]
    mag = 0.0
    am = abs(m) + h
    pw = 1.0
    for c in cs:
        mag += abs(c) * pw
        pw *= am
    rounding = mag * _FLOAT_SLACK
    spread = 0.0
    hp = h
    for k in range(1, n):
        spread += abs(tay[k]) * hp
        hp *= h
    g0 = tay[0]
    if not math.isfinite(g0) or not math.isfinite(spread + rounding):
        return 0
    if abs(g0) > (spread * (1 + 1e-9) + rounding):
        return 1 if g0 > 0 else -1
    return 0


def _exact_certified_sign(p: Poly, lo: Fraction, hi: Fraction) -> int:
    m = (lo + hi) / 2
    h = (hi - lo) / 2
    tay = taylor_at(p, m)
    spread = Fraction(0)
    hp = h
    for k in range(1, len(tay)):
        spread += abs(tay[k]) * hp
        hp *= h
    if abs(tay[0]) > spread:
        return sign(tay[0])
    return 0


def shares_root(p: Poly, r: IsolatedRoot) -> bool:
    if r.is_exact:
        return sign_at(p, r.lo) == 0
    g = gcd(p, r.poly)
    if len(g) <= 1:
        return False
    return sign_at(g, r.lo) != sign_at(g, r.hi)


def sign_at_root(p: Poly, r: IsolatedRoot) -> int:
    """Exact sign of ``p`` at the algebraic number ``r``."""
    p = trim(p)
    if not p:
        return 0
    if len(p) == 1:
        return sign(p[0])
    if r.is_exact:
        return sign_at(p, r.lo)
    s = _float_certified_sign(p, r.lo, r.hi)
    if s:
        return s
    if shares_root(p, r):
        return 0
    while True:
        s = _exact_certified_sign(p, r.lo, r.hi)
        if s:
            return s
        s = _float_certified_sign(p, r.lo, r.hi)
        if s:
            return s
        r = r.bisect()
        if r.is_exact:
            return sign_at(p, r.lo)


def certify_interval(root: IsolatedRoot, polys: Sequence[Poly]) -> tuple[IsolatedRoot, list]:
    """Refine ``root`` until every poly in ``polys`` has a certified constant nonzero sign.

    Returns the refined root and the signs.  A polynomial vanishing at the root
    gets sign 0 (detected exactly via a gcd).
    """
    signs = [0] * len(polys)
    pending = list(range(len(polys)))
    r = root
    zero = set()
    rounds = 0
    while pending:
        still = []
        for i in pending:
            p = polys[i]
            if r.is_exact:
                signs[i] = sign_at(p, r.lo)
                continue
            s = _float_certified_sign(p, r.lo, r.hi) or _exact_certified_sign(p, r.lo, r.hi)
            if s:
                signs[i] = s
            else:
                still.append(i)
        pending = still
        if not pending:
            break
        rounds += 1
        if rounds == 4:
            for i in list(pending):
                if shares_root(polys[i], r):
                    zero.add(i)
                    signs[i] = 0
            pending = [i for i in pending if i not in zero]
            if not pending:
                break
        r = r.bisect()
    return r, signs


def exact_root(t) -> IsolatedRoot:
    """The rational ``t`` as an exact :class:`IsolatedRoot`."""
    t = Fraction(t)
    return IsolatedRoot(t, t, 1, float(t), (-t.numerator, t.denominator))


def rational_between(a: IsolatedRoot, b: IsolatedRoot) -> Fraction:
    """A rational strictly between algebraic numbers ``a < b``."""
    if compare_roots(a, b) >= 0:
        raise ValueError("need a < b")
    while not a.hi < b.lo:
        if a.width >= b.width:
            a = a.bisect()
        else:
            b = b.bisect()
    return _simplest_between(a.hi, b.lo)
