"""Exact arithmetic in GF(q) and in the local field K = F_q((t)).

GF(q), q = p^c, is realized as GF(p)[x]/(modulus) with the polynomial basis
eps_j = x^j.  An element is identified with its integer code

    code = gamma_0 + gamma_1 p + ... + gamma_{c-1} p^{c-1},

i.e. the base-p digits of the code are the coordinates in the eps basis.
Addition of codes is carry-free digitwise addition mod p; multiplication is
polynomial multiplication reduced by the modulus.  Full q x q tables are
precomputed at construction, so digit arithmetic on Laurent series is table
lookup.

K is modeled by finite Laurent polynomials over GF(q): a KElem stores the
valuation v of its lowest term and the digit codes for t^v, t^{v+1}, ...
(leading and trailing zero digits stripped; zero is the empty digit vector).
This is exact and closed under +, -, * since all objects handled here
(prime-element powers, coset representatives, step function supports) are
finitely supported.

The coset index map sends n = sum b_i q^i (base-q digits b_i) to

    u(n) = sum_i (element with code b_i) * t^{-i-1},

so u is a bijection from the naturals onto the finitely supported tails,
u(0) = 0, and u(r q^k + s) = u(r) t^{-k} + u(s).

The canonical additive character chi reads the t^{-1} digit of its argument,
takes that digit's first eps coordinate gamma_0 and returns zeta_p^{gamma_0}.
It is trivial on the ring of integers (v >= 0) and has order p on t^{-1}.

Text form of a KElem: "v:d_v,d_{v+1},..." with integer digit codes, e.g.
"-1:1" is t^{-1} and "0:" is zero.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import NamedTuple

from .cyclotomic import CycNum

__all__ = [
    "FieldParams",
    "GFElem",
    "KElem",
    "PRESETS",
    "preset",
    "gf_arith",
    "k_arith",
    "valuation_abs",
    "u_index",
    "u_digit_length",
    "u_oplus",
    "chi",
    "chi_exponent",
    "chi_at",
    "chi_n",
]

# name -> (p, c, modulus coefficients low-to-high)
PRESETS: dict[str, tuple[int, int, tuple[int, ...]]] = {
    "q2": (2, 1, (0, 1)),
    "q3": (3, 1, (0, 1)),
    "q4": (2, 2, (1, 1, 1)),   # x^2 + x + 1
    "q5": (5, 1, (0, 1)),
    "q9": (3, 2, (1, 0, 1)),   # x^2 + 1
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_from_code(code: int, p: int) -> list[int]:
    digits = []
    while code:
        code, r = divmod(code, p)
        digits.append(r)
    return digits


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # Remainder of polynomial division over GF(p); den is monic.
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        lead = num[-1]
        shift = len(num) - 1 - dd
        for i, coef in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * coef) % p
    while num and num[-1] == 0:
        num.pop()
    return num


class FieldParams:
    """Parameters of GF(q) and of K = F_q((t)); immutable, hashable.

    Attributes
    ----------
    p, c, q : int
        Characteristic, extension degree, q = p^c.
    modulus : tuple[int, ...]
        Monic irreducible polynomial over GF(p), coefficients low-to-high,
        degree c.  Irreducibility is verified at construction by trial
        division against all monic polynomials of degree <= c/2.
    """

    __slots__ = ("p", "c", "q", "modulus", "_add", "_mul", "_neg", "_inv",
                 "_chi_exp", "_hash")

    def __init__(self, p: int, c: int, modulus: tuple[int, ...] | list[int]):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if c < 1:
            raise ValueError("c must be >= 1")
        modulus = tuple(int(x) % p for x in modulus)
        if len(modulus) != c + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree c")
        self.p = p
        self.c = c
        self.q = p ** c
        self.modulus = modulus
        self._verify_irreducible()
        self._build_tables()
        self._hash = hash((p, c, modulus))

    def _verify_irreducible(self) -> None:
        p, c = self.p, self.c
        den = list(self.modulus)
        for deg in range(1, c // 2 + 1):
            for code in range(p ** deg):
                trial = _poly_from_code(code, p) + [0] * (deg - len(_poly_from_code(code, p)))
                trial = (trial + [0] * deg)[:deg] + [1]  # monic of degree deg
                if not _poly_mod(den, trial, p):
                    raise ValueError(
                        f"modulus {self.modulus} is reducible (divisible by {tuple(trial)})")

    def _build_tables(self) -> None:
        p, c, q = self.p, self.c, self.q
        mod = list(self.modulus)

        def code_digits(n: int) -> list[int]:
            out = []
            for _ in range(c):
                n, r = divmod(n, p)
                out.append(r)
            return out

        add = []
        mul = []
        for a in range(q):
            da = code_digits(a)
            arow_add = []
            arow_mul = []
            for b in range(q):
                db = code_digits(b)
                s = 0
                for k in range(c - 1, -1, -1):
                    s = s * p + (da[k] + db[k]) % p
                arow_add.append(s)
                conv = [0] * (2 * c - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            conv[i + j] = (conv[i + j] + x * y) % p
                rem = _poly_mod(conv, mod, p)
                m = 0
                for k in range(len(rem) - 1, -1, -1):
                    m = m * p + rem[k]
                arow_mul.append(m)
            add.append(tuple(arow_add))
            mul.append(tuple(arow_mul))
        self._add = tuple(add)
        self._mul = tuple(mul)
        self._neg = tuple(next(b for b in range(q) if self._add[a][b] == 0) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)
        self._inv = tuple(inv)
        # chi exponent of a product of two digit codes: gamma_0 of a*b.
        self._chi_exp = tuple(tuple(m % p for m in row) for row in self._mul)

    # digit-code arithmetic -------------------------------------------------

    def add_code(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul_code(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg_code(self, a: int) -> int:
        return self._neg[a]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self._inv[a]

    def chi_exp_table(self) -> tuple[tuple[int, ...], ...]:
        """T[a][b] = first eps coordinate of (code a)*(code b); q x q."""
        return self._chi_exp

    # element / serialization ------------------------------------------------

    def element(self, code: int) -> "GFElem":
        return GFElem(self, code)

    def zero_elem(self) -> "GFElem":
        return GFElem(self, 0)

    def one_elem(self) -> "GFElem":
        return GFElem(self, 1)

    def to_json_dict(self) -> dict:
        return {"p": self.p, "c": self.c, "modulus": list(self.modulus)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "FieldParams":
        return cls(int(d["p"]), int(d["c"]), tuple(int(x) for x in d["modulus"]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldParams):
            return NotImplemented
        return (self.p, self.c, self.modulus) == (other.p, other.c, other.modulus)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FieldParams(p={self.p}, c={self.c}, modulus={self.modulus})"


@functools.lru_cache(maxsize=None)
def preset(name: str) -> FieldParams:
    """Built-in field configuration by name (q2, q3, q4, q5, q9).

    Cached: FieldParams is immutable, and the arithmetic tables are worth
    sharing across callers.
    """
    try:
        p, c, mod = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return FieldParams(p, c, mod)


class GFElem:
    """An element of GF(q), identified by its integer code."""

    __slots__ = ("params", "code")

    def __init__(self, params: FieldParams, code: int):
        if not 0 <= code < params.q:
            raise ValueError(f"code {code} out of range for q = {params.q}")
        self.params = params
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coordinates in the eps basis (base-p digits of the code)."""
        p, c = self.params.p, self.params.c
        n = self.code
        out = []
        for _ in range(c):
            n, r = divmod(n, p)
            out.append(r)
        return tuple(out)

    def _check(self, other: "GFElem") -> None:
        if self.params != other.params:
            raise ValueError("mixed field parameters")

    def __add__(self, other: "GFElem") -> "GFElem":
        self._check(other)
        return GFElem(self.params, self.params.add_code(self.code, other.code))

    def __sub__(self, other: "GFElem") -> "GFElem":
        self._check(other)
        return GFElem(self.params,
                      self.params.add_code(self.code, self.params.neg_code(other.code)))

    def __mul__(self, other: "GFElem") -> "GFElem":
        self._check(other)
        return GFElem(self.params, self.params.mul_code(self.code, other.code))

    def __neg__(self) -> "GFElem":
        return GFElem(self.params, self.params.neg_code(self.code))

    def inverse(self) -> "GFElem":
        return GFElem(self.params, self.params.inv_code(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GFElem):
            return NotImplemented
        return self.params == other.params and self.code == other.code

    def __hash__(self) -> int:
        return hash((self.params, self.code))

    def __repr__(self) -> str:
        return f"GFElem(code={self.code}, coeffs={self.coeffs})"


class GFArith(NamedTuple):
    sum: GFElem
    product: GFElem
    inverse_of_a: GFElem


def gf_arith(a: GFElem, b: GFElem) -> GFArith:
    """Sum, product and the inverse of `a`; inverting zero is a domain error."""
    return GFArith(a + b, a * b, a.inverse())


class KElem:
    """A finitely supported element of K = F_q((t)).

    Normal form: `digits[0]` (the t^v coefficient) and `digits[-1]` are
    nonzero; zero is the empty digit vector with v = 0.
    """

    __slots__ = ("params", "v", "digits")

    def __init__(self, params: FieldParams, v: int, digits: tuple[int, ...] | list[int]):
        digits = list(digits)
        lead = 0
        while lead < len(digits) and digits[lead] == 0:
            lead += 1
        digits = digits[lead:]
        v += lead
        while digits and digits[-1] == 0:
            digits.pop()
        for d in digits:
            if not 0 <= d < params.q:
                raise ValueError(f"digit code {d} out of range")
        self.params = params
        if not digits:
            self.v = 0
            self.digits = ()
        else:
            self.v = v
            self.digits = tuple(digits)

    # ---- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, params: FieldParams) -> "KElem":
        return cls(params, 0, ())

    @classmethod
    def one(cls, params: FieldParams) -> "KElem":
        return cls(params, 0, (1,))

    @classmethod
    def prime(cls, params: FieldParams, k: int = 1) -> "KElem":
        """t^k, the k-th power of the prime element."""
        return cls(params, k, (1,))

    # ---- structure --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.digits

    @property
    def is_integral(self) -> bool:
        """Whether the element lies in the ring of integers (v >= 0)."""
        return self.is_zero or self.v >= 0

    def valuation(self) -> int | float:
        return math.inf if self.is_zero else self.v

    def abs_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.params.q) ** (-self.v)

    def digit_at(self, e: int) -> int:
        """Digit code of t^e."""
        if self.is_zero or not self.v <= e < self.v + len(self.digits):
            return 0
        return self.digits[e - self.v]

    def shift(self, k: int) -> "KElem":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return KElem(self.params, self.v + k, self.digits)

    # ---- field operations ---------------------------------------------------

    def _check(self, other: "KElem") -> None:
        if self.params != other.params:
            raise ValueError("mixed field parameters")

    def __add__(self, other: "KElem") -> "KElem":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        add = self.params.add_code
        lo = min(self.v, other.v)
        hi = max(self.v + len(self.digits), other.v + len(other.digits))
        out = [0] * (hi - lo)
        for i, d in enumerate(self.digits):
            out[self.v - lo + i] = d
        for i, d in enumerate(other.digits):
            j = other.v - lo + i
            out[j] = add(out[j], d)
        return KElem(self.params, lo, out)

    def __neg__(self) -> "KElem":
        neg = self.params.neg_code
        return KElem(self.params, self.v, tuple(neg(d) for d in self.digits))

    def __sub__(self, other: "KElem") -> "KElem":
        return self + (-other)

    def __mul__(self, other: "KElem") -> "KElem":
        self._check(other)
        if self.is_zero or other.is_zero:
            return KElem.zero(self.params)
        add = self.params.add_code
        mul = self.params.mul_code
        out = [0] * (len(self.digits) + len(other.digits) - 1)
        for i, d in enumerate(self.digits):
            if d:
                for j, e in enumerate(other.digits):
                    if e:
                        out[i + j] = add(out[i + j], mul(d, e))
        return KElem(self.params, self.v + other.v, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KElem):
            return NotImplemented
        return (self.params == other.params and self.v == other.v
                and self.digits == other.digits)

    def __hash__(self) -> int:
        return hash((self.params, self.v, self.digits))

    # ---- text form ------------------------------------------------------------

    def to_text(self) -> str:
        return f"{self.v}:" + ",".join(str(d) for d in self.digits)

    @classmethod
    def from_text(cls, params: FieldParams, text: str) -> "KElem":
        head, _, tail = text.partition(":")
        v = int(head)
        digits = tuple(int(x) for x in tail.split(",")) if tail else ()
        return cls(params, v, digits)

    def __repr__(self) -> str:
        return f"KElem({self.to_text()!r})"


class KArith(NamedTuple):
    sum: KElem
    product: KElem


def k_arith(x: KElem, y: KElem) -> KArith:
    return KArith(x + y, x * y)


def valuation_abs(x: KElem) -> tuple[int | float, Fraction]:
    """(valuation, absolute value); (inf, 0) for the zero element."""
    return x.valuation(), x.abs_value()


def u_digit_length(params: FieldParams, n: int) -> int:
    """Number of base-q digits of n, i.e. |u(n)| = q^this; 0 for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = params.q
    length = 0
    while n:
        n //= q
        length += 1
    return length


def _digits_base_q(n: int, q: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, q)
        out.append(r)
    return out


def u_index(params: FieldParams, n: int) -> KElem:
    """The canonical coset representative u(n).

    Base-q digit b_i of n becomes the GF(q) element with code b_i placed at
    t^{-i-1}; in particular u(n) for 0 < n < q is (element code n) * t^{-1}.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = _digits_base_q(n, params.q)
    if not b:
        return KElem.zero(params)
    # digits are stored from t^v upward with v = -len(b)
    return KElem(params, -len(b), tuple(reversed(b)))


def u_oplus(params: FieldParams, m: int, n: int) -> int:
    """The index l with u(l) = u(m) + u(n) (digitwise carry-free addition)."""
    q = params.q
    dm = _digits_base_q(m, q)
    dn = _digits_base_q(n, q)
    if len(dm) < len(dn):
        dm, dn = dn, dm
    out = list(dm)
    for i, d in enumerate(dn):
        out[i] = params.add_code(out[i], d)
    val = 0
    for d in reversed(out):
        val = val * q + d
    return val


def chi_exponent(x: KElem) -> int:
    """gamma_0 of the t^{-1} digit of x, i.e. chi(x) = zeta_p^this."""
    return x.digit_at(-1) % x.params.p


def chi(x: KElem) -> CycNum:
    """The canonical character: trivial on the integers, order p on t^{-1}."""
    return CycNum.root_of_unity(x.params.p, chi_exponent(x))


def chi_at(y: KElem, x: KElem) -> CycNum:
    """chi_y(x) = chi(y x)."""
    return chi(y * x)


def chi_n(params: FieldParams, n: int, x: KElem) -> CycNum:
    """chi_{u(n)}(x)."""
    return chi_at(u_index(params, n), x)
