"""Exact arithmetic on sums of square roots of rationals.

A value is kept as sum(coef_m * sqrt(m)) over integer radicands m >= 1,
with rational coefficients and m = 1 holding the rational part.  Radicands
are reduced toward squarefree form on construction (perfect-square test
plus trial division by small primes), so two sums representing the same
real number normally reduce to the identical term multiset and equality
becomes a dictionary comparison.  That is what lets comparisons certify
*equality* exactly, where interval refinement alone could never terminate.

Sign determination for a provably-nonzero mixed-sign sum falls back to
interval evaluation at escalating precision.  If a huge radicand sneaks a
square factor past the reduction, a true zero can masquerade as a nonzero
sum; the escalation then hits the precision cap and raises
PrecisionExhausted rather than returning a wrong sign.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import PrecisionExhausted, max_bits_cap
from .exactgeom import Interval, sqrt_interval

_TRIAL_PRIME_BOUND = 4096


def _sieve(bound):
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if flags[i]:
            flags[i * i:: i] = bytearray(len(flags[i * i:: i]))
    return [i for i in range(bound + 1) if flags[i]]

_PRIMES = _sieve(_TRIAL_PRIME_BOUND)


def _reduce_radicand(m: int) -> tuple[int, int]:
    """Split m = s^2 * m0 with m0 free of detectable square factors."""
    if m <= 0:
        raise ValueError("radicand must be positive")
    root = isqrt(m)
    if root * root == m:
        return 1, root
    s = 1
    for p in _PRIMES:
        p2 = p * p
        if p2 > m:
            break
        while m % p2 == 0:
            m //= p2
            s *= p
    root = isqrt(m)
    if root * root == m:
        return 1, s * root
    return m, s


class SqrtSum:
    """Immutable exact sum of square roots with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction]):
        self._terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def zero(cls) -> "SqrtSum":
        return cls({})

    @classmethod
    def rational(cls, value) -> "SqrtSum":
        return cls({1: Fraction(value)})

    @classmethod
    def sqrt_of(cls, radicand, coef=1) -> "SqrtSum":
        """coef * sqrt(radicand) for a nonnegative rational radicand."""
        r = Fraction(radicand)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        if r == 0:
            return cls.zero()
        # sqrt(p/q) = sqrt(p*q) / q
        m, s = _reduce_radicand(r.numerator * r.denominator)
        return cls({m: Fraction(coef) * Fraction(s, r.denominator)})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(m == 1 for m in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("sum has irrational terms")
        return self._terms.get(1, Fraction(0))

    def __add__(self, other: "SqrtSum") -> "SqrtSum":
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return SqrtSum(terms)

    def __neg__(self) -> "SqrtSum":
        return SqrtSum({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "SqrtSum") -> "SqrtSum":
        return self + (-other)

    def scale(self, factor) -> "SqrtSum":
        f = Fraction(factor)
        if f == 0:
            return SqrtSum.zero()
        return SqrtSum({m: c * f for m, c in self._terms.items()})

    def __mul__(self, other: "SqrtSum") -> "SqrtSum":
        out: dict[int, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m0, s = _reduce_radicand(m1 * m2)
                key_coef = c1 * c2 * s
                out[m0] = out.get(m0, Fraction(0)) + key_coef
        return SqrtSum(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SqrtSum) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "SqrtSum(0)"
        parts = []
        for m in sorted(self._terms):
            c = self._terms[m]
            parts.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return f"SqrtSum({' + '.join(parts)})"

    def eval_interval(self, bits: int) -> Interval:
        lo = Fraction(0)
        hi = Fraction(0)
        for m, c in self._terms.items():
            if m == 1:
                lo += c
                hi += c
                continue
            enc = sqrt_interval(Fraction(m), bits)
            if c >= 0:
                lo += c * enc.lo
                hi += c * enc.hi
            else:
                lo += c * enc.hi
                hi += c * enc.lo
        return Interval(lo, hi, bits)

    def sign(self, *, start_bits: int = 64, cap: int | None = None) -> int:
        """Certified sign in {-1, 0, +1}.

        Zero is recognized exactly through the canonical form; a nonzero
        value is separated from zero by interval refinement.
        """
        if not self._terms:
            return 0
        coefs = list(self._terms.values())
        if all(c > 0 for c in coefs):
            return 1
        if all(c < 0 for c in coefs):
            return -1
        limit = max_bits_cap() if cap is None else cap
        bits = start_bits
        while True:
            enc = self.eval_interval(bits)
            if enc.lo > 0:
                return 1
            if enc.hi < 0:
                return -1
            if bits >= limit:
                raise PrecisionExhausted(
                    f"sign of {self!r} undecided at {bits} bits",
                    bits=bits, context=self)
            bits = min(2 * bits, limit)


def compare_sums(a: SqrtSum, b: SqrtSum, **kw) -> int:
    """Sign of a - b; exact zero detection through the canonical form."""
    return (a - b).sign(**kw)
