"""Filter banks, the splitting criterion, and wavelet packets.

A FilterBank holds q finitely supported filter rows h^l = (h^l_k), k < q^s,
with exact CycNum taps.  Row l defines the symbol

    m_l(xi) = q^{-1/2} sum_k h^l_k conj(chi_k(xi)),

which is integral-periodic and constant on cosets of P^s.  The modulation
matrix M(xi) = (m_l(t xi + t u(k)))_{l,k} is unitary for a.e. xi exactly
when the u(n)-translates of the q split outputs are orthonormal; since all
entries are constant on cosets of P^{max(s,1)}, unitarity is decided by
checking finitely many representatives.

The canonical bank is the character bank ("Haar"): h^l_k = q^{-1/2}
chi(u(l) t u(k)) with s = 1, for which M(xi) is exactly the identity at
every representative.  More generally, any constant-modulus scaling row
h^0 with |h^0_k|^2 = 1/q extends to a unitary bank by tap modulation,
h^l_k = chi(u(l) t u(k)) h^0_k (`modulated_bank`).

Wavelet packets are generated from a scaling function by applying all q
filters recursively,

    w_0 = phi,     w_{r+qm}(x) = sum_k h^r_k q^{1/2} w_m(t^{-1} x - u(k)),

and indexed by base-q digit strings; on the transform side the packet with
index n = mu_1 + mu_2 q + ... + mu_j q^{j-1} factors into the product
m_{mu_1}(t xi) ... m_{mu_j}(t^j xi) phihat(t^j xi), which this module
evaluates independently of the recursion as a cross-check.

FilterBank JSON: {"params": {...}, "s": s, "h": [[CycNum text, ...], ...]}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import _mat
from .cyclotomic import CycNum
from .localfield import FieldParams, KElem, chi_exponent, u_index
from .stepspace import (StepFn, Window, dilate_translate, fourier,
                        inner_product, reps_of_D_mod, translate)

__all__ = [
    "FilterBank",
    "haar_filterbank",
    "modulated_bank",
    "symbol_eval",
    "modulation_matrix",
    "check_unitary",
    "split",
    "PacketSystem",
    "packet_fourier_product",
    "basis_enumerate",
    "analyze",
    "synthesize",
]


class FilterBank:
    """q filter rows of length q^s over CycNum; immutable."""

    __slots__ = ("params", "s", "h")

    def __init__(self, params: FieldParams, s: int,
                 h: Sequence[Sequence[CycNum]]):
        if s < 0:
            raise ValueError("support exponent must be nonnegative")
        rows = tuple(tuple(row) for row in h)
        if len(rows) != params.q or any(len(r) != params.q ** s for r in rows):
            raise ValueError("bank must have q rows of length q^s")
        for row in rows:
            for tap in row:
                if tap.p != params.p:
                    raise ValueError("tap field does not match p")
        self.params = params
        self.s = s
        self.h = rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilterBank):
            return NotImplemented
        return (self.params, self.s, self.h) == (other.params, other.s, other.h)

    def __hash__(self) -> int:
        return hash((self.params, self.s, self.h))

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "s": self.s,
            "h": [[tap.to_text() for tap in row] for row in self.h],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "FilterBank":
        params = FieldParams.from_json_dict(d["params"])
        h = [[CycNum.from_text(params.p, t) for t in row] for row in d["h"]]
        return cls(params, int(d["s"]), h)


def haar_filterbank(params: FieldParams) -> FilterBank:
    """The character bank h^l_k = q^{-1/2} chi(u(l) t u(k)), s = 1."""
    p, q, c = params.p, params.q, params.c
    norm = CycNum.half_power(p, -c)
    T = params.chi_exp_table()
    h = [[norm.mul_zeta(T[l][k]) for k in range(q)] for l in range(q)]
    return FilterBank(params, 1, h)


def modulated_bank(params: FieldParams, h0: Sequence[CycNum]) -> FilterBank:
    """Extend a constant-modulus scaling row to a unitary bank.

    Requires s = 1 (len(h0) == q) and |h0_k|^2 == 1/q exactly for every k;
    rows are h^l_k = chi(u(l) t u(k)) h0_k.  With the constant row
    h0_k = q^{-1/2} this reproduces `haar_filterbank`.
    """
    q = params.q
    if len(h0) != q:
        raise ValueError("scaling row must have length q")
    target = CycNum.from_rational(params.p, Fraction(1, q))
    for k, tap in enumerate(h0):
        if tap.abs_sq() != target:
            raise ValueError(f"|h0_{k}|^2 != 1/q; tap modulation needs a "
                             "constant-modulus scaling row")
    T = params.chi_exp_table()
    h = [[h0[k].mul_zeta(T[l][k]) for k in range(q)] for l in range(q)]
    return FilterBank(params, 1, h)


def symbol_eval(bank: FilterBank, l: int, xi: KElem) -> CycNum:
    """m_l(xi), exact; periodic under shifts of xi in P^s."""
    params = bank.params
    if not 0 <= l < params.q:
        raise ValueError(f"row index {l} out of range")
    acc = CycNum.zero(params.p)
    for k, tap in enumerate(bank.h[l]):
        if not tap.is_zero:
            e = chi_exponent(u_index(params, k) * xi)
            acc = acc + tap.mul_zeta(-e)
    return acc * CycNum.half_power(params.p, -params.c)


def modulation_matrix(bank: FilterBank, xi: KElem) -> list[list[CycNum]]:
    """M(xi) = (m_l(t xi + t u(k)))_{l,k}, a q x q CycNum matrix."""
    params = bank.params
    q = params.q
    args = [(xi + u_index(params, k)).shift(1) for k in range(q)]
    return [[symbol_eval(bank, l, arg) for arg in args] for l in range(q)]


def check_unitary(bank: FilterBank) -> tuple[bool, KElem | None]:
    """Exact unitarity of M(xi) at all representatives of D / P^{max(s,1)}.

    Returns (True, None) or (False, first failing representative).
    """
    params = bank.params
    for xi in reps_of_D_mod(params, max(bank.s, 1)):
        M = modulation_matrix(bank, xi)
        if not _mat.is_identity(_mat.mat_mul(M, _mat.conj_transpose(M))):
            return False, xi
    return True, None


def _apply_filter(f: StepFn, taps: Sequence[CycNum]) -> StepFn:
    """sum_k taps[k] q^{1/2} f(t^{-1} x - u(k))."""
    acc = StepFn.zero(f.params)
    for k, tap in enumerate(taps):
        if not tap.is_zero:
            acc = acc + dilate_translate(f, 1, k).scale(tap)
    return acc


def split(f: StepFn, bank: FilterBank) -> list[StepFn]:
    """One filter-bank step: the q functions psi_l driven by the rows of h.

    In the transform domain psi_l satisfies
    fourier(psi_l)(xi) = m_l(t xi) * fourier(f)(t xi).
    """
    return [_apply_filter(f, bank.h[l]) for l in range(bank.params.q)]


class PacketSystem:
    """Memoized wavelet-packet generator over a bank and scaling function."""

    def __init__(self, bank: FilterBank, phi: StepFn):
        if bank.params != phi.params:
            raise ValueError("bank and scaling function disagree on the field")
        self.bank = bank
        self.phi = phi
        self._cache: dict[int, StepFn] = {0: phi}
        self._phi_hat: StepFn | None = None

    def packet(self, n: int) -> StepFn:
        """w_n by the filter recursion on the base-q digits of n."""
        if n < 0:
            raise ValueError("packet index must be nonnegative")
        got = self._cache.get(n)
        if got is not None:
            return got
        m, r = divmod(n, self.bank.params.q)
        out = _apply_filter(self.packet(m), self.bank.h[r])
        self._cache[n] = out
        return out

    def phi_hat(self) -> StepFn:
        if self._phi_hat is None:
            self._phi_hat = fourier(self.phi)
        return self._phi_hat


def packet_fourier_product(sys: PacketSystem, n: int, xi: KElem) -> CycNum:
    """fourier(w_n)(xi) evaluated through the symbol product over the
    base-q digits of n (no recursion); the independent route."""
    if n < 0:
        raise ValueError("packet index must be nonnegative")
    params = sys.bank.params
    q = params.q
    acc = CycNum.one(params.p)
    i = 0
    while n:
        n, mu = divmod(n, q)
        i += 1
        acc = acc * symbol_eval(sys.bank, mu, xi.shift(i))
    return acc * sys.phi_hat().eval(xi.shift(i))


def basis_enumerate(sys: PacketSystem, j: int, window_translates: int
                    ) -> list[StepFn]:
    """{w_n(. - u(k)) : n < q^j, k < window_translates}, n-major order."""
    if j < 0 or window_translates < 0:
        raise ValueError("arguments must be nonnegative")
    q = sys.bank.params.q
    out = []
    for n in range(q ** j):
        wn = sys.packet(n)
        for k in range(window_translates):
            out.append(wn if k == 0 else translate(wn, k))
    return out


def _required_translates(sys: PacketSystem, f: StepFn, j: int) -> int:
    params = sys.bank.params
    Jmax = f.window.J
    for n in range(params.q ** j):
        Jmax = max(Jmax, sys.packet(n).window.J)
    return params.q ** Jmax


def analyze(sys: PacketSystem, f: StepFn, j: int,
            translate_bound: int | None = None) -> dict[tuple[int, int], CycNum]:
    """Coefficients <f, w_n(. - u(k))> for n < q^j, k < translate_bound.

    The bound must cover every translate whose support can meet supp(f); it
    is computed from the windows when omitted and validated otherwise.
    """
    params = sys.bank.params
    required = _required_translates(sys, f, j)
    if translate_bound is None:
        translate_bound = required
    elif translate_bound < required:
        raise ValueError(
            f"translate_bound {translate_bound} insufficient; need {required}")
    coeffs: dict[tuple[int, int], CycNum] = {}
    for n in range(params.q ** j):
        wn = sys.packet(n)
        for k in range(translate_bound):
            coeffs[(n, k)] = inner_product(
                f, wn if k == 0 else translate(wn, k))
    return coeffs


def synthesize(sys: PacketSystem, coeffs: dict[tuple[int, int], CycNum],
               j: int) -> StepFn:
    """sum of coeffs[n, k] w_n(. - u(k)); indices must satisfy n < q^j."""
    params = sys.bank.params
    acc = StepFn.zero(params)
    for (n, k), c in sorted(coeffs.items()):
        if n >= params.q ** j:
            raise ValueError(f"coefficient index n = {n} outside level {j}")
        if not c.is_zero:
            wn = sys.packet(n)
            acc = acc + (wn if k == 0 else translate(wn, k)).scale(c)
    return acc
