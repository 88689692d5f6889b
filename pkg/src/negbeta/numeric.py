"""Exact arithmetic in Q(beta) with certified sign, floor and equality queries.

Two backends share one element type:

* algebraic mode -- beta is a real algebraic number given by an irreducible
  integer polynomial and an isolating interval.  Elements are polynomials in
  beta reduced modulo the minimal polynomial, so zero testing is exact.
* streamed mode -- beta is known only through a digit sequence (it is the
  root of the series equation for that sequence).  Elements are stored as
  N(beta) * beta^s / (beta+1)^e with N a rational polynomial; their values are
  enclosed by dyadic interval arithmetic on a refinable bracket of beta.
  Formal identity of the reduced representation certifies equality; any
  other equality can only be refuted.

All enclosures are rational (dyadic) and rigorous.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_PRECISION_CAP = 4096
_FIRST_BITS = 64
_ALGEBRAIC_BITS_LIMIT = 1 << 22


class NumericError(Exception):
    pass


class NotIsolating(NumericError, ValueError):
    pass


class RootNotGreaterThanOne(NumericError, ValueError):
    pass


class UndecidableAtPrecision(NumericError):
    def __init__(self, query: str, bits: int):
        super().__init__(f"undecidable at {bits} bits: {query}")
        self.query = query
        self.bits = bits


class RequiresAlgebraicMode(NumericError):
    pass


class NoSignChange(NumericError):
    pass


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient tuples lowest degree first


def _trim(c: Iterable) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n))


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim((a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_scale(a, s):
    return _trim(x * s for x in a)


def poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] / lead
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def poly_mod(a, b):
    return poly_divmod(a, b)[1]


def poly_monic(a):
    a = _trim(a)
    return tuple(Fraction(x) / a[-1] for x in a) if a else ()


def poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(a, b)
    return poly_monic(a)


def poly_derivative(a):
    return _trim(k * a[k] for k in range(1, len(a)))


def poly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def square_free(a):
    g = poly_gcd(a, poly_derivative(a))
    return poly_monic(poly_divmod(a, g)[0]) if len(g) > 1 else poly_monic(a)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p):
    seq = [poly_monic(p), poly_derivative(poly_monic(p))]
    while seq[-1] and len(seq[-1]) > 1:
        r = poly_mod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(poly_scale(r, -1))
    return [s for s in seq if s]


def _variations(seq, x) -> int:
    signs = [_sign(poly_eval(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the closed interval [lo, hi]."""
    p = square_free(p)
    if len(p) <= 1:
        return 0
    lo, hi = Fraction(lo), Fraction(hi)
    seq = sturm_sequence(p)
    n = _variations(seq, lo) - _variations(seq, hi)
    return n + (poly_eval(p, lo) == 0)


def primitive_integer(coeffs) -> tuple[int, ...]:
    """Scale rational coefficients to coprime integers with positive leading term."""
    c = _trim(Fraction(x) for x in coeffs)
    if not c:
        return ()
    den = math.lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def to_fraction(x) -> Fraction:
    """Exact conversion; floats go through their shortest decimal repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


# ---------------------------------------------------------------------------
# dyadic interval arithmetic (integers scaled by 2**-prec)


def _mul_iv(a_lo, a_hi, b_lo, b_hi, prec):
    ps = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
    return min(ps) >> prec, -((-max(ps)) >> prec)


def _div_iv(a_lo, a_hi, d_lo, d_hi, prec):
    # divisor strictly positive
    qs_lo = [(a_lo << prec) // d for d in (d_lo, d_hi)]
    qs_hi = [-((-(a_hi << prec)) // d) for d in (d_lo, d_hi)]
    return min(qs_lo), max(qs_hi)


def _horner_iv(int_coeffs, x_lo, x_hi, prec):
    """Enclose sum c_k x^k for integer c_k and 0 < x_lo <= x <= x_hi (scaled)."""
    if not int_coeffs:
        return 0, 0
    lo = hi = int_coeffs[-1] << prec
    for c in reversed(int_coeffs[:-1]):
        lo, hi = _mul_iv(lo, hi, x_lo, x_hi, prec)
        lo += c << prec
        hi += c << prec
    return lo, hi


def _dyadic_floor_ceil(x: Fraction, bits: int) -> tuple[int, int]:
    num = x.numerator << bits
    return num // x.denominator, -((-num) // x.denominator)


def _levels(start: int, cap: int | None):
    bits = start
    while cap is None or bits <= cap:
        yield bits
        if cap is not None and bits == cap:
            return
        bits = bits * 2 if cap is None else min(bits * 2, cap)


# ---------------------------------------------------------------------------
# bases


class AlgebraicReal:
    """A real algebraic number: irreducible integer polynomial + isolating interval.

    Use :func:`make_algebraic` to construct; the constructor trusts its input.
    """

    def __init__(self, minimal_polynomial: Sequence[int], isolating_interval: tuple[Fraction, Fraction]):
        self.minimal_polynomial = tuple(int(c) for c in minimal_polynomial)
        lo, hi = isolating_interval
        self.isolating_interval = (Fraction(lo), Fraction(hi))
        self._lo, self._hi = self.isolating_interval
        self._lock = threading.Lock()
        if self.degree == 1:
            c0, c1 = self.minimal_polynomial
            self._lo = self._hi = Fraction(-c0, c1)
            self.isolating_interval = (self._lo, self._lo)
        else:
            self._sign_lo = self._sign_at(self._lo)

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("beta is irrational")
        return self._lo

    def _sign_at(self, x: Fraction) -> int:
        p, q = x.numerator, x.denominator
        n = self.degree
        return _sign(sum(c * p ** k * q ** (n - k) for k, c in enumerate(self.minimal_polynomial)))

    def refine(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Shrink the isolating interval to ``width`` by exact bisection."""
        with self._lock:
            while self._hi - self._lo > width:
                mid = (self._lo + self._hi) / 2
                s = self._sign_at(mid)
                if s == 0:
                    self._lo = self._hi = mid
                elif s == self._sign_lo:
                    self._lo = mid
                else:
                    self._hi = mid
            return self._lo, self._hi

    def bracket(self, bits: int) -> tuple[int, int]:
        lo, hi = self.refine(Fraction(1, 1 << bits))
        return _dyadic_floor_ceil(lo, bits)[0], _dyadic_floor_ceil(hi, bits)[1]

    def __float__(self):
        lo, hi = self.refine(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def to_dict(self) -> dict:
        lo, hi = self.isolating_interval
        return {"minpoly": list(self.minimal_polynomial), "bracket": [str(lo), str(hi)]}

    def __eq__(self, other):
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if self.minimal_polynomial != other.minimal_polynomial:
            return False
        lo = max(self.isolating_interval[0], other.isolating_interval[0])
        hi = min(self.isolating_interval[1], other.isolating_interval[1])
        return lo <= hi and count_real_roots(self.minimal_polynomial, lo, hi) == 1

    def __hash__(self):
        return hash(self.minimal_polynomial)

    def __repr__(self):
        lo, hi = self.isolating_interval
        return f"AlgebraicReal(minpoly={list(self.minimal_polynomial)}, bracket=[{lo}, {hi}], ~{float(self):.12g})"


def make_algebraic(minpoly: Sequence, bracket: tuple) -> AlgebraicReal:
    """Build a base from an integer polynomial and a bracket isolating a root > 1.

    The polynomial is replaced by the irreducible factor that vanishes in the
    bracket, so that reduced representations are canonical.
    """
    coeffs = primitive_integer(minpoly)
    if len(coeffs) < 2:
        raise ValueError("polynomial must be nonconstant")
    lo, hi = sorted((to_fraction(bracket[0]), to_fraction(bracket[1])))
    n_roots = count_real_roots(coeffs, lo, hi)
    if n_roots != 1:
        raise NotIsolating(f"{n_roots} distinct real roots of {list(coeffs)} in [{lo}, {hi}]")
    factor = _factor_with_root(coeffs, lo, hi)
    if len(factor) == 2:
        root = Fraction(-factor[0], factor[1])
        if root <= 1:
            raise RootNotGreaterThanOne(f"root {root} is not > 1")
        return AlgebraicReal(factor, (root, root))
    if hi <= 1:
        raise RootNotGreaterThanOne(f"bracket [{lo}, {hi}] lies below 1")
    if lo <= 1:
        if count_real_roots(factor, lo, Fraction(1)) > 0:
            raise RootNotGreaterThanOne(f"root in [{lo}, 1]")
        lo = Fraction(1)
    return AlgebraicReal(factor, (lo, hi))


def largest_real_root(minpoly: Sequence) -> AlgebraicReal:
    """The largest real root, which must exceed 1, isolated by bisection on Sturm counts."""
    coeffs = primitive_integer(minpoly)
    if len(coeffs) < 2:
        raise ValueError("polynomial must be nonconstant")
    bound = 1 + max(abs(Fraction(c, coeffs[-1])) for c in coeffs[:-1])
    lo, hi = Fraction(1), Fraction(bound)
    if count_real_roots(coeffs, lo, hi) == 0 or (count_real_roots(coeffs, lo, lo) == 1
                                                  and count_real_roots(coeffs, lo, hi) == 1):
        raise RootNotGreaterThanOne(f"{list(coeffs)} has no real root > 1")
    while count_real_roots(coeffs, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_real_roots(coeffs, mid, hi) > 0:
            lo = mid
        else:
            hi = mid
    return make_algebraic(coeffs, (lo, hi))


def _factor_with_root(coeffs, lo, hi) -> tuple[int, ...]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x)
    for fac, _mult in poly.factor_list()[1]:
        fc = primitive_integer(reversed([int(c) for c in fac.all_coeffs()]))
        if count_real_roots(fc, lo, hi) == 1:
            return fc
    raise NotIsolating("no irreducible factor has a root in the bracket")


class StreamedReal:
    """beta defined as the root in [a_1, a_1+1] of

        g(beta) = sum_k a_k (-beta)^(-k) + beta/(beta+1)

    for a digit sequence a.  The bracket is refined by bisection with
    certified probe signs (truncated series + geometric tail bound).
    """

    def __init__(self, digit_source, precision_cap: int = DEFAULT_PRECISION_CAP):
        self.digit_source = digit_source
        self.precision_cap = int(precision_cap)
        a1 = digit_source.digit(1)
        if a1 < 1:
            raise ValueError("a_1 must be positive")
        self.a1 = a1
        self.bracket_initial = (Fraction(a1), Fraction(a1 + 1))
        self._lo, self._hi = self.bracket_initial
        self._ref_sign: tuple[str, int] | None = None
        self._lock = threading.RLock()
        self.digits_consulted = 0

    @property
    def a_max(self) -> int:
        return self.digit_source.alphabet_max

    def _terms_needed(self, q: Fraction, bits: int) -> int:
        qf = float(q)
        need = (bits + 8 + math.log2(max(self.a_max, 1)) - math.log2(qf - 1)) / math.log2(qf)
        return max(1, math.ceil(need) + 1)

    def g_enclosure(self, q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
        """Rigorous enclosure of g(q), with absolute error about 2**-bits."""
        q = Fraction(q)
        n_terms = self._terms_needed(q, bits)
        if n_terms > self.precision_cap:
            raise UndecidableAtPrecision(f"g({float(q):.6g}) needs {n_terms} digits", self.precision_cap)
        digits = self.digit_source.prefix(n_terms)
        self.digits_consulted = max(self.digits_consulted, n_terms)
        prec = bits + 16 + n_terms.bit_length()
        one = 1 << prec
        # y = 1/q in (0, 1)
        y_lo = (q.denominator << prec) // q.numerator
        y_hi = -((-(q.denominator << prec)) // q.numerator)
        coeffs = [0] + [(-d if k % 2 else d) for k, d in enumerate(digits, start=1)]
        s_lo, s_hi = _horner_iv(coeffs, y_lo, y_hi, prec)
        r = q / (q + 1)
        r_lo, r_hi = _dyadic_floor_ceil(r, prec)
        # tail bound a_max * y^N / (1 - y)
        pw = one
        for _ in range(n_terms):
            pw = -((-(pw * y_hi)) >> prec)
        tail = -((-(self.a_max * pw << prec)) // (one - y_hi)) + 1
        lo = s_lo + r_lo - tail
        hi = s_hi + r_hi + tail
        return Fraction(lo, one), Fraction(hi, one)

    def g_sign(self, q: Fraction, bits: int) -> int | None:
        lo, hi = self.g_enclosure(q, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        return None

    def _certified_sign(self, q: Fraction, start_bits: int) -> int | None:
        for bits in _levels(start_bits, self.precision_cap):
            try:
                s = self.g_sign(q, bits)
            except UndecidableAtPrecision:
                return None
            if s is not None:
                return s
        return None

    def _reference(self) -> tuple[str, int]:
        if self._ref_sign is None:
            s_hi = self._certified_sign(self._hi, _FIRST_BITS)
            s_lo = self._certified_sign(self._lo, _FIRST_BITS)
            if s_hi is not None and s_lo is not None and s_hi == s_lo:
                raise NoSignChange(f"g has sign {s_hi} at both ends of [{self._lo}, {self._hi}]")
            if s_hi is not None:
                self._ref_sign = ("hi", s_hi)
            elif s_lo is not None:
                self._ref_sign = ("lo", s_lo)
            else:
                raise NoSignChange("g undecidable at both bracket ends")
        return self._ref_sign

    def refine(self, width: Fraction) -> tuple[Fraction, Fraction]:
        with self._lock:
            side, ref = self._reference()
            while self._hi - self._lo > width:
                w = self._hi - self._lo
                bits = max(_FIRST_BITS, -math.floor(math.log2(w)) + 24)
                if bits > self.precision_cap:
                    raise UndecidableAtPrecision("bracket refinement", self.precision_cap)
                for probe in (self._lo + w / 2, self._lo + w * 3 / 8, self._lo + w * 5 / 8):
                    s = self._certified_sign(probe, bits)
                    if s is not None:
                        break
                else:
                    raise UndecidableAtPrecision("bisection probe sign", self.precision_cap)
                same_as_ref = (s == ref)
                if (side == "hi") == same_as_ref:
                    self._hi = probe
                else:
                    self._lo = probe
            return self._lo, self._hi

    def bracket(self, bits: int) -> tuple[int, int]:
        if bits > self.precision_cap + 64:
            raise UndecidableAtPrecision("beta bracket", self.precision_cap)
        lo, hi = self.refine(Fraction(1, 1 << bits))
        return _dyadic_floor_ceil(lo, bits)[0], _dyadic_floor_ceil(hi, bits)[1]

    @property
    def current_bracket(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    def __float__(self):
        lo, hi = self.refine(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def to_dict(self) -> dict:
        lo, hi = self.current_bracket
        return {"digits": self.digit_source.literal(), "bracket": [str(lo), str(hi)],
                "precision_cap": self.precision_cap}

    def __repr__(self):
        lo, hi = self.current_bracket
        return f"StreamedReal({self.digit_source.name or self.digit_source.kind}, ~{float(self):.15g}, width={float(hi - lo):.3g})"


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """An element of Q(beta).  Immutable; arithmetic with ints and Fractions.

    ``==`` compares canonical representations: exact equality in algebraic
    mode, formal identity in streamed mode.  Ordering operators and
    :meth:`sign` are certified and may raise :class:`UndecidableAtPrecision`
    in streamed mode.
    """

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different base contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.add(self, self.field.neg(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.add(o, self.field.neg(self))

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.mul(self, self.field.inverse(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field.mul(o, self.field.inverse(self))

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inverse(self) ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        return hash(self.rep)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def is_zero(self) -> bool:
        """Formal/exact zero test (no numerics)."""
        return self.field.is_zero_rep(self.rep)

    def sign(self) -> int:
        return self.field.sign(self)

    def floor(self) -> int:
        return self.field.floor(self)

    def enclosure(self, bits: int = _FIRST_BITS) -> tuple[Fraction, Fraction]:
        return self.field.enclosure(self, bits)

    def decimal(self, places: int = 6) -> str:
        return self.field.decimal(self, places)

    def __float__(self):
        for bits in self.field._bit_levels():
            lo, hi = self.field.enclosure(self, bits)
            if hi - lo <= Fraction(1, 1 << 60) * max(1, abs(lo)):
                break
        return float((lo + hi) / 2)

    def exact_str(self) -> str:
        return self.field.format(self)

    def __str__(self):
        return self.exact_str()

    def __repr__(self):
        return f"FieldElement({self.exact_str()} ~ {float(self):.10g})"


def _format_poly(coeffs, var="b", shift=0) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        e = k + shift
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}" + (f"*{mono}" if mono else "")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


class _FieldBase:
    mode = "?"

    def __init__(self):
        self.zero = FieldElement(self, self.zero_rep())
        self.one = self.rational(1)

    def rational(self, q) -> FieldElement:
        raise NotImplementedError

    def _wrap(self, rep):
        return FieldElement(self, rep)

    def from_digits(self, digits: Sequence[int], offset: int = 0) -> FieldElement:
        """sum_k digits[k] * (-beta)^(k + offset)."""
        raise NotImplementedError

    def sign(self, e: FieldElement) -> int:
        if self.is_zero_rep(e.rep):
            return 0
        for bits in self._bit_levels():
            lo, hi = self.enclosure(e, bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise UndecidableAtPrecision(f"sign of {self.format(e)}", self._cap)

    def floor(self, e: FieldElement) -> int:
        tried = set()
        for bits in self._bit_levels():
            lo, hi = self.enclosure(e, bits)
            fl, fh = math.floor(lo), math.floor(hi)
            if fl == fh:
                return fl
            if fh - fl > 2:
                continue
            for c in range(fl + 1, fh + 1):
                if c not in tried and self.is_zero_rep((e - c).rep):
                    return c
                tried.add(c)
        raise UndecidableAtPrecision(f"floor of {self.format(e)}", self._cap)

    def equals(self, a: FieldElement, b: FieldElement) -> bool:
        if a.rep == b.rep:
            return True
        if self.mode == "algebraic":
            return False
        d = a - b
        for bits in self._bit_levels():
            lo, hi = self.enclosure(d, bits)
            if lo > 0 or hi < 0:
                return False
        raise UndecidableAtPrecision(f"equality {self.format(a)} = {self.format(b)}", self._cap)

    def decimal(self, e: FieldElement, places: int) -> str:
        need = math.ceil((places + 3) * math.log2(10))
        for bits in self._bit_levels(max(_FIRST_BITS, need)):
            lo, hi = self.enclosure(e, bits)
            if hi - lo < Fraction(1, 10 ** (places + 3)):
                break
        mid = (lo + hi) / 2
        scaled = round(mid * 10 ** places)
        sign = "-" if scaled < 0 else ""
        scaled = abs(scaled)
        if places == 0:
            return f"{sign}{scaled}"
        s = str(scaled).rjust(places + 1, "0")
        return f"{sign}{s[:-places]}.{s[-places:]}"


class AlgebraicField(_FieldBase):
    """Q(beta) = Q[x]/(m) for the minimal polynomial m of an AlgebraicReal."""

    mode = "algebraic"

    def __init__(self, base: AlgebraicReal):
        self.base = base
        self.modulus = poly_monic([Fraction(c) for c in base.minimal_polynomial])
        self.degree = len(self.modulus) - 1
        self._cap = None
        super().__init__()
        self.beta = self._wrap(self._reduce((Fraction(0), Fraction(1))))

    def _bit_levels(self, start=_FIRST_BITS):
        for bits in _levels(start, None):
            if bits > _ALGEBRAIC_BITS_LIMIT:
                break
            yield bits

    def zero_rep(self):
        return ()

    def is_zero_rep(self, rep) -> bool:
        return not rep

    def _reduce(self, coeffs):
        c = _trim(Fraction(x) for x in coeffs)
        if len(c) > self.degree:
            c = poly_mod(c, self.modulus)
        return c

    def rational(self, q) -> FieldElement:
        q = to_fraction(q)
        return self._wrap((q,) if q else ())

    def element(self, coeffs) -> FieldElement:
        """sum_k coeffs[k] beta^k."""
        return self._wrap(self._reduce(coeffs))

    def from_digits(self, digits, offset=0):
        acc = self.zero
        mb = -self.beta
        for d in reversed(list(digits)):
            acc = acc * mb + d
        return acc * mb ** offset if offset else acc

    def add(self, a, b):
        return self._wrap(poly_add(a.rep, b.rep))

    def neg(self, a):
        return self._wrap(tuple(-c for c in a.rep))

    def mul(self, a, b):
        return self._wrap(self._reduce(poly_mul(a.rep, b.rep)))

    def inverse(self, a):
        if not a.rep:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: s*a + t*m = 1
        r0, r1 = self.modulus, a.rep
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
        return self._wrap(self._reduce(poly_scale(s1, 1 / r1[0])))

    def enclosure(self, e, bits):
        rep = e.rep
        if not rep:
            return Fraction(0), Fraction(0)
        if self.base.is_rational:
            v = poly_eval(rep, self.base.rational_value)
            return v, v
        den = math.lcm(*(c.denominator for c in rep))
        ints = [int(c * den) for c in rep]
        prec = bits + 16
        b_lo, b_hi = self.base.bracket(prec)
        lo, hi = _horner_iv(ints, b_lo, b_hi, prec)
        scale = den << prec
        return Fraction(lo, scale), Fraction(hi, scale)

    def format(self, e):
        if self.base.is_rational:
            return str(e.rep[0]) if e.rep else "0"
        return _format_poly(e.rep)


class StreamedField(_FieldBase):
    """Elements N(beta) beta^s / (beta+1)^e for a streamed beta.

    The representation is normalised (no common factor beta or beta+1 between
    numerator and denominator), hence unique for a given rational function.
    """

    mode = "streamed"

    def __init__(self, base: StreamedReal):
        self.base = base
        self._cap = base.precision_cap
        super().__init__()
        self.beta = self._wrap(self._normalise((Fraction(1),), 1, 0))

    def _bit_levels(self, start=_FIRST_BITS):
        return _levels(min(start, self._cap), self._cap)

    def zero_rep(self):
        return ((), 0, 0)

    def is_zero_rep(self, rep) -> bool:
        return not rep[0]

    @staticmethod
    def _normalise(coeffs, shift, den):
        c = list(_trim(Fraction(x) for x in coeffs))
        if not c:
            return ((), 0, 0)
        while c[0] == 0:
            c.pop(0)
            shift += 1
        c = tuple(c)
        while den > 0 and poly_eval(c, -1) == 0:
            c, _ = poly_divmod(c, (Fraction(1), Fraction(1)))
            den -= 1
        while den < 0:
            c = poly_mul(c, (Fraction(1), Fraction(1)))
            den += 1
        return (tuple(c), shift, den)

    def rational(self, q):
        q = to_fraction(q)
        return self._wrap(self._normalise((q,), 0, 0))

    def element(self, coeffs, shift=0, den=0):
        return self._wrap(self._normalise(coeffs, shift, den))

    def from_digits(self, digits, offset=0):
        coeffs = [Fraction((-1) ** k * d) for k, d in enumerate(digits)]
        sign = -1 if offset % 2 else 1
        return self._wrap(self._normalise([sign * c for c in coeffs], offset, 0))

    def add(self, a, b):
        (ca, sa, ea), (cb, sb, eb) = a.rep, b.rep
        if not ca:
            return b
        if not cb:
            return a
        e = max(ea, eb)
        for _ in range(e - ea):
            ca = poly_mul(ca, (1, 1))
        for _ in range(e - eb):
            cb = poly_mul(cb, (1, 1))
        s = min(sa, sb)
        ca = (0,) * (sa - s) + tuple(ca)
        cb = (0,) * (sb - s) + tuple(cb)
        return self._wrap(self._normalise(poly_add(ca, cb), s, e))

    def neg(self, a):
        c, s, e = a.rep
        return self._wrap((tuple(-x for x in c), s, e))

    def mul(self, a, b):
        (ca, sa, ea), (cb, sb, eb) = a.rep, b.rep
        return self._wrap(self._normalise(poly_mul(ca, cb), sa + sb, ea + eb))

    def inverse(self, a):
        c, s, e = a.rep
        if not c:
            raise ZeroDivisionError("inverse of zero")
        r = 0
        while len(c) > 1 and poly_eval(c, -1) == 0:
            c, _ = poly_divmod(c, (Fraction(1), Fraction(1)))
            r += 1
        if len(c) != 1:
            raise RequiresAlgebraicMode("general division needs an exact base")
        num = (1 / Fraction(c[0]),)
        for _ in range(e):
            num = poly_mul(num, (1, 1))
        return self._wrap(self._normalise(num, -s, r))

    def enclosure(self, e, bits):
        c, s, den_pow = e.rep
        if not c:
            return Fraction(0), Fraction(0)
        qden = math.lcm(*(x.denominator for x in c))
        ints = [int(x * qden) for x in c]
        guard = 16 + 2 * len(ints).bit_length()
        prec = bits + guard
        b_lo, b_hi = self.base.bracket(prec)
        lo, hi = _horner_iv(ints, b_lo, b_hi, prec)
        one = 1 << prec
        if s > 0:
            for _ in range(s):
                lo, hi = _mul_iv(lo, hi, b_lo, b_hi, prec)
        elif s < 0:
            for _ in range(-s):
                lo, hi = _div_iv(lo, hi, b_lo, b_hi, prec)
        for _ in range(den_pow):
            lo, hi = _div_iv(lo, hi, b_lo + one, b_hi + one, prec)
        scale = qden << prec
        return Fraction(lo, scale), Fraction(hi, scale)

    def format(self, e):
        c, s, den = e.rep
        if not c:
            return "0"
        num = _format_poly(c, shift=s)
        if den == 0:
            return num
        d = "(b + 1)" if den == 1 else f"(b + 1)^{den}"
        return f"({num})/{d}"


def make_field(base):
    if isinstance(base, AlgebraicReal):
        return AlgebraicField(base)
    if isinstance(base, StreamedReal):
        return StreamedField(base)
    raise TypeError(f"unsupported base {type(base).__name__}")


def sign(e: FieldElement) -> int:
    return e.sign()


def floor_of(e) -> int:
    if isinstance(e, (int, Fraction)):
        return math.floor(e)
    return e.floor()


def equals(e1: FieldElement, e2: FieldElement) -> bool:
    return e1.field.equals(e1, e2)
