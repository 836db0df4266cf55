"""Compactly supported locally constant functions on K, with exact analysis.

A StepFn is determined by a window (J, k), J, k >= 0, and one CycNum value
per coset of P^k inside P^{-J}:

    support  f  is contained in  P^{-J},
    f is constant on cosets of P^k,
    number of cells M = q^{J+k}, each of Haar measure q^{-k}  (|D| = 1).

Cell order is frozen (it defines the file format): a cell is named by its
digit string (c_{-J}, ..., c_{k-1}), c_e the GF(q) digit code of t^e in the
representative, listed most significant first, and cells are enumerated
lexicographically; equivalently the cell index is the integer with those
base-q digits.  The canonical representative of a cell truncates all digits
at t^{k-1}.

Construction canonicalizes: outer all-zero shells are stripped (J minimal)
and all-equal refinements are merged (k minimal), so equality of StepFn
values is structural equality.

The Fourier transform maps a window-(J, k) function to a window-(k, J)
function exactly:

    fhat(xi) = q^{-k} * sum_cells f(a) * conj(chi(xi a)),

and the t^e digit of the cell representative pairs with the t^{-1-e} digit
of xi, which makes the sum a separable radix-q butterfly.  The butterfly
runs on an int64 numerator array (one common denominator) when an a-priori
growth bound certifies that int64 cannot overflow, and otherwise on exact
ring elements; a naive O(M^2) character sum, evaluated through Laurent
multiplication and independent of the digit-pairing argument, serves as the
oracle the fast path is validated against.

File format (JSON): {"params": {...}, "window": {"J": J, "k": k},
"values": [CycNum text, ...]} in frozen cell order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._kernel import vc_transform
from .cyclotomic import CycNum
from .localfield import (FieldParams, KElem, chi_exponent, u_digit_length,
                         u_index)

__all__ = [
    "Window",
    "StepFn",
    "make_step",
    "indicator",
    "dilate_translate",
    "translate",
    "inner_product",
    "norm_sq",
    "gram",
    "fourier",
    "inverse_fourier",
    "fourier_naive",
    "fourier_coeff_D",
    "bracket",
    "bracket_bound",
    "orthonormality_criterion",
    "char_on_D",
    "character_gram",
    "reps_of_D_mod",
]

_INT64_LIMIT = 2 ** 62


@dataclass(frozen=True)
class Window:
    """Support exponent J (support in P^{-J}) and constancy exponent k."""

    J: int
    k: int

    def __post_init__(self) -> None:
        if self.J < 0 or self.k < 0:
            raise ValueError("window exponents must be nonnegative")

    @property
    def length(self) -> int:
        return self.J + self.k


def coset_rep(params: FieldParams, window: Window, m: int) -> KElem:
    """Canonical representative of cell m of the window."""
    L = window.length
    q = params.q
    if not 0 <= m < q ** L:
        raise ValueError(f"cell index {m} out of range")
    digits = []
    for i in range(L):
        digits.append((m // q ** (L - 1 - i)) % q)
    return KElem(params, -window.J, digits)


def coset_index(params: FieldParams, window: Window, x: KElem) -> int | None:
    """Cell index of x, or None when x lies outside P^{-J}."""
    if not x.is_zero and x.v < -window.J:
        return None
    m = 0
    for e in range(-window.J, window.k):
        m = m * params.q + x.digit_at(e)
    return m


def reps_of_D_mod(params: FieldParams, k: int) -> list[KElem]:
    """All q^k canonical representatives of D / P^k."""
    win = Window(0, k)
    return [coset_rep(params, win, m) for m in range(params.q ** k)]


class StepFn:
    """An exact step function on K; immutable, canonical, hashable."""

    __slots__ = ("params", "window", "values")

    def __init__(self, params: FieldParams, window: Window,
                 values: Sequence[CycNum]):
        q = params.q
        J, k = window.J, window.k
        vals = list(values)
        if len(vals) != q ** (J + k):
            raise ValueError(
                f"table length {len(vals)} does not match window {window}")
        for v in vals:
            if v.p != params.p:
                raise ValueError("value field does not match p")
        # strip all-zero outer shells: cells with leading digit != 0
        while J > 0:
            head = q ** (J + k - 1)
            if any(not v.is_zero for v in vals[head:]):
                break
            vals = vals[:head]
            J -= 1
        # merge all-equal refinements: blocks over the last digit
        while k > 0:
            blocks_equal = all(
                vals[i] == vals[i - i % q] for i in range(len(vals)))
            if not blocks_equal:
                break
            vals = vals[::q]
            k -= 1
        self.params = params
        self.window = Window(J, k)
        self.values = tuple(vals)

    # ---- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, params: FieldParams) -> "StepFn":
        return cls(params, Window(0, 0), (CycNum.zero(params.p),))

    @classmethod
    def constant(cls, params: FieldParams, value: CycNum) -> "StepFn":
        """value on D, zero elsewhere."""
        return cls(params, Window(0, 0), (value,))

    # ---- basic structure -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.window == Window(0, 0) and self.values[0].is_zero

    def eval(self, x: KElem) -> CycNum:
        idx = coset_index(self.params, self.window, x)
        if idx is None:
            return CycNum.zero(self.params.p)
        return self.values[idx]

    def refine_values(self, window: Window) -> list[CycNum]:
        """Table of this function on a finer/larger window."""
        J, k = self.window.J, self.window.k
        J2, k2 = window.J, window.k
        if J2 < J or k2 < k:
            raise ValueError("refinement window must contain the current one")
        q = self.params.q
        L = J + k
        zero = CycNum.zero(self.params.p)
        out = []
        shell = q ** (L + k2 - k)      # strips the J2-J leading digits
        tail = q ** (k2 - k)           # strips the k2-k trailing digits
        for m2 in range(q ** (J2 + k2)):
            if m2 // shell != 0:
                out.append(zero)
            else:
                out.append(self.values[(m2 % shell) // tail])
        return out

    def integral(self) -> CycNum:
        acc = CycNum.zero(self.params.p)
        for v in self.values:
            acc = acc + v
        return acc.scale(Fraction(1, self.params.q ** self.window.k))

    # ---- linear structure -----------------------------------------------------

    def _common(self, other: "StepFn") -> tuple[Window, list[CycNum], list[CycNum]]:
        if self.params != other.params:
            raise ValueError("mixed field parameters")
        win = Window(max(self.window.J, other.window.J),
                     max(self.window.k, other.window.k))
        return win, self.refine_values(win), other.refine_values(win)

    def __add__(self, other: "StepFn") -> "StepFn":
        win, a, b = self._common(other)
        return StepFn(self.params, win, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: "StepFn") -> "StepFn":
        win, a, b = self._common(other)
        return StepFn(self.params, win, [x - y for x, y in zip(a, b)])

    def __neg__(self) -> "StepFn":
        return StepFn(self.params, self.window, [-v for v in self.values])

    def scale(self, c: CycNum | Fraction | int) -> "StepFn":
        if isinstance(c, CycNum):
            vals = [v * c for v in self.values]
        else:
            vals = [v.scale(c) for v in self.values]
        return StepFn(self.params, self.window, vals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepFn):
            return NotImplemented
        return (self.params == other.params and self.window == other.window
                and self.values == other.values)

    def __hash__(self) -> int:
        return hash((self.params, self.window, self.values))

    def __repr__(self) -> str:
        return (f"StepFn(window=({self.window.J},{self.window.k}), "
                f"{len(self.values)} cells)")

    # ---- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "window": {"J": self.window.J, "k": self.window.k},
            "values": [v.to_text() for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "StepFn":
        params = FieldParams.from_json_dict(d["params"])
        win = Window(int(d["window"]["J"]), int(d["window"]["k"]))
        vals = [CycNum.from_text(params.p, t) for t in d["values"]]
        return cls(params, win, vals)

    def csv_rows(self) -> list[tuple[str, float, float]]:
        """One row per cell: digit string, real part, imaginary part."""
        L = self.window.length
        q = self.params.q
        rows = []
        for m, v in enumerate(self.values):
            digits = ",".join(str((m // q ** (L - 1 - i)) % q) for i in range(L))
            z = v.to_complex()
            rows.append((digits, z.real, z.imag))
        return rows


def make_step(params: FieldParams, window: Window,
              values: Sequence[CycNum]) -> StepFn:
    """Construct (and canonicalize) a step function from a full cell table."""
    return StepFn(params, window, values)


def indicator(params: FieldParams, k: int, shift: KElem | None = None) -> StepFn:
    """Characteristic function of shift + P^k (shift defaults to 0).

    k may be negative: indicator(params, -1) is the characteristic function
    of P^{-1}.
    """
    J = max(0, -k)
    if shift is not None and not shift.is_zero:
        J = max(J, -shift.v)
    win = Window(J, max(0, k))
    one = CycNum.one(params.p)
    zero = CycNum.zero(params.p)
    vals = []
    for m in range(params.q ** win.length):
        x = coset_rep(params, win, m)
        if shift is not None:
            x = x - shift
        vals.append(one if (x.is_zero or x.v >= k) else zero)
    return StepFn(params, win, vals)


def dilate_translate(f: StepFn, j: int, k: int) -> StepFn:
    """q^{j/2} f(t^{-j} x - u(k)): dilation by j levels, translation by u(k)."""
    if k < 0:
        raise ValueError("translation index must be nonnegative")
    params = f.params
    uk = u_index(params, k)
    Lk = u_digit_length(params, k)
    win = Window(max(0, f.window.J - j, Lk - j), max(0, f.window.k + j))
    amp = CycNum.half_power(params.p, params.c * j)
    vals = []
    for m in range(params.q ** win.length):
        x = coset_rep(params, win, m)
        y = x.shift(-j) - uk
        vals.append(amp * f.eval(y))
    return StepFn(params, win, vals)


def translate(f: StepFn, k: int) -> StepFn:
    """f(x - u(k))."""
    return dilate_translate(f, 0, k)


def inner_product(f: StepFn, g: StepFn) -> CycNum:
    """Exact L^2 inner product (conjugate-linear in g)."""
    win, a, b = f._common(g)
    acc = CycNum.zero(f.params.p)
    for x, y in zip(a, b):
        if not (x.is_zero or y.is_zero):
            acc = acc + x * y.conj()
    return acc.scale(Fraction(1, f.params.q ** win.k))


def norm_sq(f: StepFn) -> Fraction:
    """<f, f> as an exact rational.

    Raises ValueError when the norm is irrational in Q(zeta_p) coordinates
    (possible for p = 5); compare CycNum values in that case.
    """
    return inner_product(f, f).as_rational()


# ---------------------------------------------------------------------------
# exact int64 packing shared by the butterfly and the Gram fast path


def _pack_numerators(tables: Sequence[Sequence[CycNum]], p: int,
                     with_s: bool) -> tuple[list[list[list[int]]], int, int]:
    """Scale all coordinates to a common denominator.

    Returns (numerators[table][cell][coord], denominator, max abs numerator).
    """
    n = p - 1
    den = 1
    for tab in tables:
        for v in tab:
            for x in v.a:
                den = math.lcm(den, x.denominator)
            if v.b is not None:
                for x in v.b:
                    den = math.lcm(den, x.denominator)
    big = 0
    out = []
    for tab in tables:
        rows = []
        for v in tab:
            row = [x.numerator * (den // x.denominator) for x in v.a]
            if with_s:
                if v.b is None:
                    row += [0] * n
                else:
                    row += [x.numerator * (den // x.denominator) for x in v.b]
            for y in row:
                if abs(y) > big:
                    big = abs(y)
            rows.append(row)
        out.append(rows)
    return out, den, big


def _cyc_from_int_row(p: int, row: Sequence[int], den: int, with_s: bool) -> CycNum:
    n = p - 1
    a = [Fraction(int(row[i]), den) for i in range(n)]
    b = [Fraction(int(row[n + i]), den) for i in range(n)] if with_s else None
    return CycNum(p, a, b)


def _rotation_matrix(p: int, e: int) -> list[list[int]]:
    """Coordinate matrix of multiplication by zeta^e on the pure block."""
    e %= p
    R = [[0] * (p - 1) for _ in range(p - 1)]
    for src in range(p - 1):
        dst = (src + e) % p
        if dst <= p - 2:
            R[dst][src] += 1
        else:
            for i in range(p - 1):
                R[i][src] -= 1
    return R


_STAGE_CACHE: dict[tuple[FieldParams, int, bool], np.ndarray] = {}


def _stage_tensor(params: FieldParams, sign: int, with_s: bool) -> np.ndarray:
    key = (params, sign, with_s)
    cached = _STAGE_CACHE.get(key)
    if cached is not None:
        return cached
    p, q = params.p, params.q
    n = p - 1
    W = 2 * n if with_s else n
    T = params.chi_exp_table()
    rots = [np.array(_rotation_matrix(p, e), dtype=np.int64) for e in range(p)]
    stage = np.zeros((q, q, W, W), dtype=np.int64)
    for w in range(q):
        for d in range(q):
            R = rots[(sign * T[w][d]) % p]
            stage[w, d, :n, :n] = R
            if with_s:
                stage[w, d, n:, n:] = R
    _STAGE_CACHE[key] = stage
    return stage


def _object_butterfly(values: Sequence[CycNum], params: FieldParams,
                      sign: int, L: int) -> list[CycNum]:
    """Exact butterfly on ring elements; same layout as the int64 kernel."""
    q = params.q
    p = params.p
    T = params.chi_exp_table()
    vals = list(values)
    M = len(vals)
    pre = 1
    for _ in range(L):
        post = M // (pre * q)
        nxt = [None] * M
        for ai in range(pre):
            for bi in range(post):
                base = ai * q * post + bi
                ins = [vals[base + d * post] for d in range(q)]
                for w in range(q):
                    acc = CycNum.zero(p)
                    for d in range(q):
                        if not ins[d].is_zero:
                            acc = acc + ins[d].mul_zeta(sign * T[w][d])
                    nxt[base + w * post] = acc
        vals = nxt
        pre *= q
    out = [None] * M
    for m in range(M):
        r, t = 0, m
        for _ in range(L):
            r = r * q + t % q
            t //= q
        out[r] = vals[m]
    return out


def _transform(f: StepFn, sign: int) -> StepFn:
    params = f.params
    p, q = params.p, params.q
    J, k = f.window.J, f.window.k
    L = J + k
    if L == 0:
        return StepFn(params, Window(0, 0), (f.values[0],))
    with_s = any(v.b is not None for v in f.values)
    nums, den, big = _pack_numerators([f.values], p, with_s)
    growth = (q if p == 2 else 2 * q) ** L
    out_den = den * q ** k
    if big and big * growth < _INT64_LIMIT:
        arr = np.array(nums[0], dtype=np.int64)
        res = vc_transform(arr, q, L, _stage_tensor(params, sign, with_s))
        vals = [_cyc_from_int_row(p, row, out_den, with_s) for row in res.tolist()]
    else:
        scale = Fraction(1, q ** k)
        vals = [v.scale(scale) for v in _object_butterfly(f.values, params, sign, L)]
    return StepFn(params, Window(k, J), vals)


def fourier(f: StepFn) -> StepFn:
    """fhat(xi) = integral of f(x) conj(chi(xi x)) dx, exactly."""
    return _transform(f, -1)


def inverse_fourier(F: StepFn) -> StepFn:
    """Inverse transform; inverse_fourier(fourier(f)) == f exactly."""
    return _transform(F, +1)


def fourier_naive(f: StepFn, sign: int = -1) -> StepFn:
    """O(M^2) character-sum transform through Laurent multiplication.

    Independent of the digit-pairing argument behind the fast butterfly;
    kept as the validation oracle.
    """
    params = f.params
    J, k = f.window.J, f.window.k
    out_win = Window(k, J)
    scale = Fraction(1, params.q ** k)
    reps_in = [coset_rep(params, f.window, m)
               for m in range(len(f.values))]
    vals = []
    for n in range(params.q ** out_win.length):
        xi = coset_rep(params, out_win, n)
        acc = CycNum.zero(params.p)
        for a, v in zip(reps_in, f.values):
            if not v.is_zero:
                acc = acc + v.mul_zeta(sign * chi_exponent(xi * a))
        vals.append(acc.scale(scale))
    return StepFn(params, out_win, vals)


def fourier_coeff_D(f: StepFn, n: int) -> CycNum:
    """n-th Fourier coefficient of a function supported in D.

    coeff(n) = integral over D of f(x) conj(chi_n(x)) dx; coefficients vanish
    for n >= q^k by local constancy.
    """
    if f.window.J != 0:
        raise ValueError("function must be supported in the ring of integers")
    params = f.params
    un = u_index(params, n)
    # chi_n is constant on cosets of P^len(n) only; integrate on the finer grid
    win = Window(0, max(f.window.k, u_digit_length(params, n)))
    acc = CycNum.zero(params.p)
    for m, v in enumerate(f.refine_values(win)):
        if not v.is_zero:
            a = coset_rep(params, win, m)
            acc = acc + v.mul_zeta(-chi_exponent(un * a))
    return acc.scale(Fraction(1, params.q ** win.k))


def bracket_bound(f: StepFn, g: StepFn, xi: KElem) -> int:
    """Provable truncation index for the periodized correlation sum."""
    kmax = max(f.window.k, g.window.k)
    if not xi.is_zero:
        kmax = max(kmax, -xi.v)
    return f.params.q ** kmax


def bracket(f: StepFn, g: StepFn, xi: KElem, n_max: int) -> CycNum:
    """[f, g](xi) = sum over l of fhat(xi + u(l)) conj(ghat(xi + u(l))).

    The sum is finite; n_max must be at least the provable bound (the exact
    bound is always used for the summation itself).
    """
    bound = bracket_bound(f, g, xi)
    if n_max < bound:
        raise ValueError(f"n_max = {n_max} below provable bound {bound}")
    fh = fourier(f)
    gh = fourier(g)
    params = f.params
    acc = CycNum.zero(params.p)
    for l in range(bound):
        pt = xi + u_index(params, l)
        a = fh.eval(pt)
        if a.is_zero:
            continue
        b = gh.eval(pt)
        if b.is_zero:
            continue
        acc = acc + a * b.conj()
    return acc


def orthonormality_criterion(phi: StepFn, n_max: int | None = None
                             ) -> tuple[bool, KElem | None]:
    """Whether the u(n)-translates of phi are orthonormal.

    Checks sum over l of |phihat(xi + u(l))|^2 == 1 at every representative
    xi of the quotient on which the sum is constant; returns the first
    failing xi as witness.
    """
    params = phi.params
    ph = fourier(phi)
    terms = params.q ** ph.window.J
    if n_max is not None and n_max < terms:
        raise ValueError(f"n_max = {n_max} below provable bound {terms}")
    one = CycNum.one(params.p)
    for xi in reps_of_D_mod(params, ph.window.k):
        acc = CycNum.zero(params.p)
        for l in range(terms):
            val = ph.eval(xi + u_index(params, l))
            if not val.is_zero:
                acc = acc + val.abs_sq()
        if acc != one:
            return False, xi
    return True, None


# ---------------------------------------------------------------------------
# characters as step functions, and exact Gram matrices


def char_on_D(params: FieldParams, n: int) -> StepFn:
    """chi_n restricted to D, as a step function."""
    L = u_digit_length(params, n)
    win = Window(0, L)
    q = params.q
    T = params.chi_exp_table()
    ndig = []
    nn = n
    for _ in range(L):
        nn, r = divmod(nn, q)
        ndig.append(r)
    vals = []
    for m in range(q ** L):
        e = 0
        for i in range(L):
            e += T[ndig[i]][(m // q ** (L - 1 - i)) % q]
        vals.append(CycNum.root_of_unity(params.p, e))
    return StepFn(params, win, vals)


def _cyc_from_zeta_counts(p: int, counts: Sequence[int], den: int) -> CycNum:
    """sum over g < p of counts[g] zeta^g, divided by den."""
    coords = [Fraction(int(c), den) for c in counts[: p - 1]]
    top = counts[p - 1] if len(counts) > p - 1 else 0
    if top:
        t = Fraction(int(top), den)
        coords = [x - t for x in coords]
    return CycNum(p, coords)


def character_gram(params: FieldParams, count: int) -> list[list[CycNum]]:
    """Exact Gram matrix [<chi_m, chi_n>_D] for m, n < count.

    Computed by integer histograms of character-exponent differences (exact;
    validated against the generic inner product on sub-blocks in the tests).
    """
    q, p = params.q, params.p
    L = u_digit_length(params, max(count - 1, 0))
    M = q ** L
    T = np.array(params.chi_exp_table(), dtype=np.int16)
    dig_n = np.empty((count, max(L, 1)), dtype=np.int16)
    dig_m = np.empty((M, max(L, 1)), dtype=np.int16)
    for i in range(L):
        dig_n[:, i] = (np.arange(count) // q ** i) % q
        dig_m[:, i] = (np.arange(M) // q ** (L - 1 - i)) % q
    E = np.zeros((count, M), dtype=np.int16)
    for i in range(L):
        E += T[dig_n[:, i][:, None], dig_m[:, i][None, :]]
    E %= p
    diff = (E[:, None, :] - E[None, :, :]) % p
    counts = np.stack([(diff == g).sum(axis=2) for g in range(p)], axis=-1)
    out = []
    for mrow in counts:
        out.append([_cyc_from_zeta_counts(p, crow, M) for crow in mrow])
    return out


def gram(fns: Sequence[StepFn], others: Sequence[StepFn] | None = None
         ) -> list[list[CycNum]]:
    """Exact (cross-)Gram matrix [<fns[i], others[j]>].

    Uses a common-denominator int64 tensor contraction when an a-priori
    bound certifies no overflow, and falls back to the generic inner
    product otherwise; both routes are exact.
    """
    if others is None:
        others = fns
    if not fns or not others:
        return [[] for _ in fns]
    params = fns[0].params
    p = params.p
    win = Window(max(f.window.J for f in list(fns) + list(others)),
                 max(f.window.k for f in list(fns) + list(others)))
    A = [f.refine_values(win) for f in fns]
    B = [g.refine_values(win) for g in others]
    M = params.q ** win.length
    with_s = any(v.b is not None for row in A + B for v in row)
    n1 = p - 1
    W = 2 * n1 if with_s else n1
    nums_a, den_a, big_a = _pack_numerators(A, p, with_s)
    nums_b, den_b, big_b = _pack_numerators(B, p, with_s)
    den = den_a * den_b * params.q ** win.k
    if big_a and big_b and M * W * W * p * big_a * big_b < _INT64_LIMIT:
        X = np.array(nums_a, dtype=np.int64)
        Y = np.array(nums_b, dtype=np.int64)
        basis = ([CycNum.root_of_unity(p, e) for e in range(n1)]
                 + ([CycNum.root_of_unity(p, e) * CycNum.sqrt_p(p)
                     for e in range(n1)] if with_s else []))
        C = np.zeros((W, W), dtype=np.int64)
        S = np.zeros((W, W, W), dtype=np.int64)
        for j, ej in enumerate(basis):
            cj = ej.conj()
            C[:n1, j] = [x.numerator for x in cj.a]
            if with_s:
                C[n1:, j] = [x.numerator for x in cj.b] if cj.b else 0
        for i, ei in enumerate(basis):
            for j, ej in enumerate(basis):
                prod = ei * ej
                S[i, j, :n1] = [x.numerator for x in prod.a]
                if with_s:
                    S[i, j, n1:] = [x.numerator for x in prod.b] if prod.b else 0
        Yc = Y @ C.T
        G2 = np.einsum("ami,bmj->abij", X, Yc)
        G = np.tensordot(G2, S, axes=([2, 3], [0, 1]))
        return [[_cyc_from_int_row(p, row, den, with_s) for row in mat]
                for mat in G.tolist()]
    return [[inner_product(f, g) for g in others] for f in fns]
