"""Exact arithmetic in Q(zeta_p) extended by a formal square root of p.

Values of the canonical character live in the cyclotomic field Q(zeta_p)
with p prime.  Filter normalizations and dyadic-style dilations additionally
need q^{1/2} = p^{c/2}, which is irrational over Q(zeta_p) whenever c is odd,
so the working ring is

    Q(zeta_p)[s] / (s^2 - p),        s standing for sqrt(p) > 0.

An element is stored as two coordinate vectors of exact rationals over the
Q-basis {1, zeta, ..., zeta^{p-2}} (the relation 1 + zeta + ... + zeta^{p-1}
= 0 is applied eagerly, so the pure part has a unique representation):

    value = a_0 + a_1 zeta + ... + a_{p-2} zeta^{p-2}
            + s * (b_0 + b_1 zeta + ... + b_{p-2} zeta^{p-2}).

For p ≡ 1 (mod 4) the real field Q(zeta_p) already contains sqrt(p), hence
equality of these formal pairs is finer than equality of complex numbers.
All checks in this library compare values produced by identical ring
operations, where formal equality is the right notion; no general division
is provided (the extension ring is not a field in that case).

Text form: terms "num/den", "num/den*z^k", "num/den*s", "num/den*s*z^k"
joined by " + " (negative numerators carry the sign); zero is "0".
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Sequence, Union

_F0 = Fraction(0)
_F1 = Fraction(1)

Rational = Union[int, Fraction]

__all__ = ["CycNum", "cyc_arith", "root_of_unity", "to_complex"]


def _as_fraction_tuple(coords: Iterable[Rational], n: int) -> tuple[Fraction, ...]:
    out = tuple(Fraction(x) for x in coords)
    if len(out) != n:
        raise ValueError(f"expected {n} coordinates, got {len(out)}")
    return out


def _mul_block(p: int, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    # Polynomial product in zeta with exponents reduced mod p, then the
    # fold zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
    raw = [_F0] * p
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    raw[(i + j) % p] += ui * vj
    top = raw[p - 1]
    if top:
        return tuple(raw[i] - top for i in range(p - 1))
    return tuple(raw[: p - 1])


def _rot_block(p: int, u: Sequence[Fraction], e: int) -> tuple[Fraction, ...]:
    # Multiply the pure block by zeta^e; same fold as in _mul_block.
    e %= p
    if e == 0:
        return tuple(u)
    raw = [_F0] * p
    for i, ui in enumerate(u):
        if ui:
            raw[(i + e) % p] += ui
    top = raw[p - 1]
    if top:
        return tuple(raw[i] - top for i in range(p - 1))
    return tuple(raw[: p - 1])


def _conj_block(p: int, u: Sequence[Fraction]) -> tuple[Fraction, ...]:
    # zeta^k -> zeta^{p-k}; image of the basis needs the same fold.
    raw = [_F0] * p
    for i, ui in enumerate(u):
        if ui:
            raw[(p - i) % p] += ui
    top = raw[p - 1]
    if top:
        return tuple(raw[i] - top for i in range(p - 1))
    return tuple(raw[: p - 1])


class CycNum:
    """An element of Q(zeta_p)[sqrt(p)], immutable and exact."""

    __slots__ = ("p", "a", "b")

    def __init__(self, p: int, a: Iterable[Rational] | None = None,
                 b: Iterable[Rational] | None = None):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p
        n = p - 1
        self.a = _as_fraction_tuple(a, n) if a is not None else (_F0,) * n
        if b is not None:
            bt = _as_fraction_tuple(b, n)
            self.b = bt if any(bt) else None
        else:
            self.b = None

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "CycNum":
        return cls(p)

    @classmethod
    def one(cls, p: int) -> "CycNum":
        return cls.from_rational(p, _F1)

    @classmethod
    def from_rational(cls, p: int, r: Rational) -> "CycNum":
        coords = [Fraction(r)] + [_F0] * (p - 2)
        return cls(p, coords)

    @classmethod
    def root_of_unity(cls, p: int, k: int) -> "CycNum":
        """zeta_p^{k mod p}."""
        k %= p
        if k < p - 1:
            coords = [_F0] * (p - 1)
            coords[k] = _F1
            return cls(p, coords)
        # zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        return cls(p, [-_F1] * (p - 1))

    @classmethod
    def sqrt_p(cls, p: int) -> "CycNum":
        b = [_F1] + [_F0] * (p - 2)
        return cls(p, None, b)

    @classmethod
    def half_power(cls, p: int, m: int) -> "CycNum":
        """p^{m/2} for any integer m, as an exact ring element."""
        if m % 2 == 0:
            return cls.from_rational(p, Fraction(p) ** (m // 2))
        coeff = Fraction(p) ** ((m - 1) // 2)
        b = [coeff] + [_F0] * (p - 2)
        return cls(p, None, b)

    # ---- ring structure ------------------------------------------------

    def _check(self, other: "CycNum") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed cyclotomic orders {self.p} and {other.p}")

    def __add__(self, other: "CycNum") -> "CycNum":
        if not isinstance(other, CycNum):
            return NotImplemented
        self._check(other)
        a = tuple(x + y for x, y in zip(self.a, other.a))
        if self.b is None and other.b is None:
            b = None
        elif self.b is None:
            b = other.b
        elif other.b is None:
            b = self.b
        else:
            b = tuple(x + y for x, y in zip(self.b, other.b))
        out = CycNum.__new__(CycNum)
        out.p = self.p
        out.a = a
        out.b = b if (b is not None and any(b)) else None
        return out

    def __neg__(self) -> "CycNum":
        out = CycNum.__new__(CycNum)
        out.p = self.p
        out.a = tuple(-x for x in self.a)
        out.b = None if self.b is None else tuple(-x for x in self.b)
        return out

    def __sub__(self, other: "CycNum") -> "CycNum":
        if not isinstance(other, CycNum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: object) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        self._check(other)
        p = self.p
        aa = _mul_block(p, self.a, other.a)
        out = CycNum.__new__(CycNum)
        out.p = p
        if self.b is None and other.b is None:
            out.a = aa
            out.b = None
            return out
        # (a1 + s b1)(a2 + s b2) = a1 a2 + p b1 b2 + s (a1 b2 + b1 a2)
        if self.b is not None and other.b is not None:
            bb = _mul_block(p, self.b, other.b)
            a = tuple(x + p * y for x, y in zip(aa, bb))
        else:
            a = aa
        cross = [_F0] * (p - 1)
        if other.b is not None:
            for i, x in enumerate(_mul_block(p, self.a, other.b)):
                cross[i] += x
        if self.b is not None:
            for i, x in enumerate(_mul_block(p, self.b, other.a)):
                cross[i] += x
        out.a = a
        out.b = tuple(cross) if any(cross) else None
        return out

    __rmul__ = __mul__

    def scale(self, r: Rational) -> "CycNum":
        r = Fraction(r)
        out = CycNum.__new__(CycNum)
        out.p = self.p
        out.a = tuple(x * r for x in self.a)
        out.b = None if (self.b is None or not r) else tuple(x * r for x in self.b)
        return out

    def __truediv__(self, r: Rational) -> "CycNum":
        if not isinstance(r, (int, Fraction)):
            return NotImplemented
        return self.scale(_F1 / Fraction(r))

    def mul_zeta(self, e: int) -> "CycNum":
        """Multiply by zeta^e (cheap coordinate rotation)."""
        e %= self.p
        if e == 0:
            return self
        out = CycNum.__new__(CycNum)
        out.p = self.p
        out.a = _rot_block(self.p, self.a, e)
        out.b = None if self.b is None else _rot_block(self.p, self.b, e)
        return out

    def conj(self) -> "CycNum":
        """Complex conjugation: zeta -> zeta^{-1}, sqrt(p) fixed."""
        out = CycNum.__new__(CycNum)
        out.p = self.p
        out.a = _conj_block(self.p, self.a)
        out.b = None if self.b is None else _conj_block(self.p, self.b)
        return out

    def abs_sq(self) -> "CycNum":
        """self * conj(self); real and nonnegative as a complex number."""
        return self * self.conj()

    # ---- predicates and extraction --------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.b is None and not any(self.a)

    @property
    def is_rational(self) -> bool:
        return self.b is None and not any(self.a[1:])

    def as_rational(self) -> Fraction:
        """The value as an exact Fraction.

        Raises ValueError when the canonical coordinates are not rational;
        callers that may legitimately see irrational reals (p = 5 norms)
        must compare CycNum values instead.
        """
        if not self.is_rational:
            raise ValueError(f"not a rational value: {self!r}")
        return self.a[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.p)
        acc = 0j
        pw = 1 + 0j
        for k in range(self.p - 1):
            if self.a[k]:
                acc += float(self.a[k]) * pw
            pw *= z
        if self.b is not None:
            sacc = 0j
            pw = 1 + 0j
            for k in range(self.p - 1):
                if self.b[k]:
                    sacc += float(self.b[k]) * pw
                pw *= z
            acc += (self.p ** 0.5) * sacc
        return acc

    # ---- equality, hashing, text ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.p == other.p and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.p, self.a, self.b))

    def to_text(self) -> str:
        terms: list[str] = []
        for k, x in enumerate(self.a):
            if x:
                if k == 0:
                    terms.append(str(x))
                elif k == 1:
                    terms.append(f"{x}*z")
                else:
                    terms.append(f"{x}*z^{k}")
        if self.b is not None:
            for k, x in enumerate(self.b):
                if x:
                    if k == 0:
                        terms.append(f"{x}*s")
                    elif k == 1:
                        terms.append(f"{x}*s*z")
                    else:
                        terms.append(f"{x}*s*z^{k}")
        return " + ".join(terms) if terms else "0"

    @classmethod
    def from_text(cls, p: int, text: str) -> "CycNum":
        a = [_F0] * (p - 1)
        b = [_F0] * (p - 1)
        text = text.strip()
        if text != "0":
            for term in text.split(" + "):
                parts = term.strip().split("*")
                coeff = Fraction(parts[0])
                power = 0
                has_s = False
                for piece in parts[1:]:
                    if piece == "s":
                        has_s = True
                    elif piece == "z":
                        power = 1
                    elif piece.startswith("z^"):
                        power = int(piece[2:])
                    else:
                        raise ValueError(f"bad term {term!r}")
                if not 0 <= power <= p - 2:
                    raise ValueError(f"exponent out of range in {term!r}")
                if has_s:
                    b[power] += coeff
                else:
                    a[power] += coeff
        return cls(p, a, b)

    def __repr__(self) -> str:
        return f"CycNum(p={self.p}, {self.to_text()!r})"


def cyc_arith(a: CycNum, b: CycNum) -> tuple[CycNum, CycNum, CycNum]:
    """(a + b, a * b, conj(a)); operands must share p."""
    return a + b, a * b, a.conj()


def root_of_unity(p: int, k: int) -> CycNum:
    return CycNum.root_of_unity(p, k)


def to_complex(a: CycNum) -> complex:
    return a.to_complex()
