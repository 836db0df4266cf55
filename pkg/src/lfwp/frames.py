"""Wavelet frame packets: matrix assembly, frame bounds, and the recursion.

A FrameFilterSet holds the coefficients h^r_{ljk} (r < q; l, j < N; k < q^s)
driving the first-generation split of N generators phi_1..phi_N,

    psi^r_l(x) = q^{1/2} sum_j sum_k h^r_{ljk} phi_j(t^{-1} x - u(k)),

and, by iterating on the base-q digits of n (n = s + q r splits psi^r with
filter index s), the frame-packet families psi^n_l.  Unlike the orthonormal
recursion there is no identification of psi^0 with phi: index 0 is already
a first-generation split.

Three qN x qN matrices control the frame behaviour:

    E(xi):  blocks (r, s), entries delta_{lj} q^{-1/2} conj(chi(u(r)(xi + t u(s))));
            exactly unitary (rows are the character sums of Lemma-type (i)).
    H(xi):  blocks (r, s) = (h^r_{lj}(xi + t u(s)))_{lj} with the symbols
            h^r_{lj}(xi) = q^{-1/2} sum_k h^r_{ljk} conj(chi_k(xi)).
    P(xi):  polyphase blocks p^{rs}_{lj}(xi) = sum_k h^r_{lj,qk+s} conj(chi_k(xi))
            (no q^{-1/2}; the two normalizations sit in E and in the symbols).

They satisfy H(xi) = P(t^{-1} xi) E(xi) identically; `check_factorization`
verifies this at every representative of D / P^{s+1}, where all entries are
constant.  Frame bounds are the extreme eigenvalues of H*(xi)H(xi) over the
same representatives: lambda = min of the smallest, Lambda = max of the
largest, so that lambda I <= H*H <= Lambda I holds.  Matrix assembly and all
inner products stay exact; floats enter only through the eigenvalue solver.

FrameFilterSet JSON: {"params": {...}, "N": N, "s": s,
"h": [[[[CycNum text, ...], ...], ...], ...]} indexed [r][l][j][k].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _mat
from ._rand import random_stepfn, rng_from_seed
from .cyclotomic import CycNum
from .localfield import FieldParams, KElem, chi_exponent, u_index
from .packets import haar_filterbank
from .stepspace import (StepFn, dilate_translate, indicator, inner_product,
                        reps_of_D_mod, translate)

__all__ = [
    "FrameFilterSet",
    "GeneratorSet",
    "FramePacketSystem",
    "haar_frame_filter_set",
    "random_frame_filter_set",
    "standard_generators",
    "char_sum_delta",
    "e_matrix",
    "h_matrix",
    "p_matrix",
    "check_factorization",
    "frame_bounds",
    "frame_packet",
    "frame_energy_sums",
    "frame_inequality_test",
]


class FrameFilterSet:
    """Coefficients h[r][l][j][k], r < q, l,j < N, k < q^s; immutable."""

    __slots__ = ("params", "N", "s", "h")

    def __init__(self, params: FieldParams, N: int, s: int,
                 h: Sequence[Sequence[Sequence[Sequence[CycNum]]]]):
        if N < 1:
            raise ValueError("need at least one generator")
        if s < 0:
            raise ValueError("support exponent must be nonnegative")
        q = params.q
        rows = tuple(tuple(tuple(tuple(col) for col in ljrow) for ljrow in rblock)
                     for rblock in h)
        if (len(rows) != q
                or any(len(rb) != N for rb in rows)
                or any(len(lj) != N for rb in rows for lj in rb)
                or any(len(col) != q ** s for rb in rows for lj in rb for col in lj)):
            raise ValueError("filter array must have shape q x N x N x q^s")
        self.params = params
        self.N = N
        self.s = s
        self.h = rows

    def symbol(self, r: int, l: int, j: int, xi: KElem) -> CycNum:
        """h^r_{lj}(xi) = q^{-1/2} sum_k h^r_{ljk} conj(chi_k(xi))."""
        params = self.params
        acc = CycNum.zero(params.p)
        for k, tap in enumerate(self.h[r][l][j]):
            if not tap.is_zero:
                acc = acc + tap.mul_zeta(-chi_exponent(u_index(params, k) * xi))
        return acc * CycNum.half_power(params.p, -params.c)

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "N": self.N,
            "s": self.s,
            "h": [[[[tap.to_text() for tap in col] for col in lj] for lj in rb]
                  for rb in self.h],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "FrameFilterSet":
        params = FieldParams.from_json_dict(d["params"])
        h = [[[[CycNum.from_text(params.p, t) for t in col] for col in lj]
              for lj in rb] for rb in d["h"]]
        return cls(params, int(d["N"]), int(d["s"]), h)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrameFilterSet):
            return NotImplemented
        return (self.params, self.N, self.s, self.h) == \
            (other.params, other.N, other.s, other.h)


class GeneratorSet:
    """N generators phi_1..phi_N with optional certified bounds."""

    __slots__ = ("phi", "C1", "C2")

    def __init__(self, phi: Sequence[StepFn], C1: float | None = None,
                 C2: float | None = None):
        if not phi:
            raise ValueError("need at least one generator")
        if C1 is not None and C2 is not None and C1 > C2:
            raise ValueError("C1 must not exceed C2")
        self.phi = tuple(phi)
        self.C1 = C1
        self.C2 = C2


def standard_generators(params: FieldParams, N: int) -> GeneratorSet:
    """N copies of the unit indicator of D (an exact orthonormal family
    of translates per generator); frame bounds 1 for each copy."""
    return GeneratorSet([indicator(params, 0) for _ in range(N)], 1.0, 1.0)


def haar_frame_filter_set(params: FieldParams, N: int) -> FrameFilterSet:
    """Block-diagonal character filters: h^r_{ljk} = delta_{lj} h^r_k."""
    bank = haar_filterbank(params)
    q = params.q
    zero = CycNum.zero(params.p)
    h = [[[[bank.h[r][k] if l == j else zero for k in range(q)]
           for j in range(N)] for l in range(N)] for r in range(q)]
    return FrameFilterSet(params, N, 1, h)


def random_frame_filter_set(params: FieldParams, N: int,
                            rng: np.random.Generator) -> FrameFilterSet:
    """Character filters with rational perturbations of magnitude <= 1/4.

    The perturbation sits inside the q^{-1/2} normalization, i.e.
    h^r_{ljk} = q^{-1/2} (chi(u(r) t u(k)) delta_{lj} + pert), which keeps
    all packet values in the pure cyclotomic block and stays close to the
    unitary regime so the lower frame bound remains positive in practice.
    """
    p, q, c = params.p, params.q, params.c
    norm = CycNum.half_power(p, -c)
    T = params.chi_exp_table()
    h = []
    for r in range(q):
        rb = []
        for l in range(N):
            lj = []
            for j in range(N):
                col = []
                for k in range(q):
                    base = (CycNum.root_of_unity(p, T[r][k]) if l == j
                            else CycNum.zero(p))
                    pert = Fraction(int(rng.integers(-4, 5)), 16)
                    col.append(norm * (base + CycNum.from_rational(p, pert)))
                lj.append(col)
            rb.append(lj)
        h.append(rb)
    return FrameFilterSet(params, N, 1, h)


def char_sum_delta(params: FieldParams, r: int, s: int) -> Fraction:
    """(1/q) sum over t < q of chi((u(r) - u(s)) t u(t)); equals delta_{rs}."""
    q = params.q
    d = u_index(params, r) - u_index(params, s)
    acc = CycNum.zero(params.p)
    for t in range(q):
        acc = acc + CycNum.root_of_unity(
            params.p, chi_exponent(d * u_index(params, t).shift(1)))
    return acc.scale(Fraction(1, q)).as_rational()


def e_matrix(params: FieldParams, N: int, xi: KElem) -> list[list[CycNum]]:
    """The qN x qN splitting matrix E(xi); exactly unitary."""
    q = params.q
    norm = CycNum.half_power(params.p, -params.c)
    zero = CycNum.zero(params.p)
    out = [[zero] * (q * N) for _ in range(q * N)]
    for r in range(q):
        ur = u_index(params, r)
        for s in range(q):
            arg = ur * (xi + u_index(params, s).shift(1))
            entry = norm.mul_zeta(-chi_exponent(arg))
            for l in range(N):
                out[r * N + l][s * N + l] = entry
    return out


def h_matrix(ffs: FrameFilterSet, xi: KElem) -> list[list[CycNum]]:
    """H(xi): block (r, s) is the symbol matrix at xi + t u(s)."""
    params = ffs.params
    q, N = params.q, ffs.N
    out = [[CycNum.zero(params.p)] * (q * N) for _ in range(q * N)]
    for s in range(q):
        arg = xi + u_index(params, s).shift(1)
        for r in range(q):
            for l in range(N):
                for j in range(N):
                    out[r * N + l][s * N + j] = ffs.symbol(r, l, j, arg)
    return out


def p_matrix(ffs: FrameFilterSet, xi: KElem) -> list[list[CycNum]]:
    """P(xi): polyphase blocks p^{rs}_{lj}(xi) = sum_k h^r_{lj,qk+s} conj(chi_k(xi))."""
    params = ffs.params
    q, N = params.q, ffs.N
    support = q ** ffs.s
    out = [[CycNum.zero(params.p)] * (q * N) for _ in range(q * N)]
    for r in range(q):
        for s in range(q):
            for l in range(N):
                for j in range(N):
                    acc = CycNum.zero(params.p)
                    k = 0
                    while q * k + s < support:
                        tap = ffs.h[r][l][j][q * k + s]
                        if not tap.is_zero:
                            acc = acc + tap.mul_zeta(
                                -chi_exponent(u_index(params, k) * xi))
                        k += 1
                    out[r * N + l][s * N + j] = acc
    return out


def check_factorization(ffs: FrameFilterSet) -> tuple[bool, KElem | None]:
    """H(xi) == P(t^{-1} xi) E(xi) at all representatives of D / P^{s+1}."""
    params = ffs.params
    for xi in reps_of_D_mod(params, ffs.s + 1):
        H = h_matrix(ffs, xi)
        PE = _mat.mat_mul(p_matrix(ffs, xi.shift(-1)), e_matrix(params, ffs.N, xi))
        if not _mat.mat_eq(H, PE):
            return False, xi
    return True, None


def frame_bounds(ffs: FrameFilterSet
                 ) -> tuple[float, float, list[tuple[KElem, list[float]]]]:
    """(lambda, Lambda, per-representative eigenvalues of H*(xi)H(xi)).

    lambda is the min of the smallest eigenvalues, Lambda the max of the
    largest, so lambda I <= H*H <= Lambda I on the sampled set; raises
    ArithmeticError when the solver returns an eigenvalue below -1e-10.
    """
    params = ffs.params
    lam = None
    big = None
    table = []
    for xi in reps_of_D_mod(params, ffs.s + 1):
        H = _mat.to_complex_matrix(h_matrix(ffs, xi))
        try:
            eigs = np.linalg.eigvalsh(H.conj().T @ H)
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise ArithmeticError(f"eigenvalue solver failed at {xi.to_text()}: {exc}")
        evs = [float(e) for e in eigs]
        if evs[0] < -1e-10:
            raise ArithmeticError(
                f"H*H not positive semidefinite at {xi.to_text()}: {evs[0]}")
        table.append((xi, evs))
        lam = evs[0] if lam is None else min(lam, evs[0])
        big = evs[-1] if big is None else max(big, evs[-1])
    return lam, big, table


class FramePacketSystem:
    """Memoized frame-packet generator psi^n = (psi^n_1..psi^n_N)."""

    def __init__(self, ffs: FrameFilterSet, gens: GeneratorSet):
        if len(gens.phi) != ffs.N:
            raise ValueError("generator count does not match N")
        for f in gens.phi:
            if f.params != ffs.params:
                raise ValueError("generators disagree with the filter field")
        self.ffs = ffs
        self.gens = gens
        self._cache: dict[int, tuple[StepFn, ...]] = {}

    def packet(self, n: int) -> tuple[StepFn, ...]:
        if n < 0:
            raise ValueError("packet index must be nonnegative")
        got = self._cache.get(n)
        if got is not None:
            return got
        ffs = self.ffs
        params = ffs.params
        r, s = divmod(n, params.q)
        prev = self.gens.phi if n < params.q else self.packet(r)
        out = []
        for l in range(ffs.N):
            acc = StepFn.zero(params)
            for j in range(ffs.N):
                for k, tap in enumerate(ffs.h[s][l][j]):
                    if not tap.is_zero:
                        acc = acc + dilate_translate(prev[j], 1, k).scale(tap)
            out.append(acc)
        res = tuple(out)
        self._cache[n] = res
        return res


def frame_packet(ffs: FrameFilterSet, gens: GeneratorSet, n: int
                 ) -> list[StepFn]:
    """The N frame packets psi^n_l (one-shot; use FramePacketSystem to reuse
    the recursion cache across indices)."""
    return list(FramePacketSystem(ffs, gens).packet(n))


def frame_energy_sums(sys: FramePacketSystem, g: StepFn, j: int
                      ) -> tuple[CycNum, CycNum]:
    """Exact quadratic forms at level j for a test function g.

    Returns (A, Mid) as exact ring elements (real, nonnegative):
      A   = sum_{l,k} |<g, q^{j/2} phi_l(t^{-j} . - u(k))>|^2
      Mid = sum_{n<q^j} sum_{l,k} |<g, psi^n_l(. - u(k))>|^2
    with the translate sums truncated at their provable support bounds
    (a translate past the bound cannot meet supp g).
    """
    ffs = sys.ffs
    params = ffs.params
    q = params.q
    A = CycNum.zero(params.p)
    for phi_l in sys.gens.phi:
        bound = q ** max(j + g.window.J, phi_l.window.J)
        for k in range(bound):
            val = inner_product(g, dilate_translate(phi_l, j, k))
            if not val.is_zero:
                A = A + val.abs_sq()
    mid = CycNum.zero(params.p)
    for n in range(q ** j):
        for psi in sys.packet(n):
            bound = q ** max(g.window.J, psi.window.J)
            for k in range(bound):
                val = inner_product(g, psi if k == 0 else translate(psi, k))
                if not val.is_zero:
                    mid = mid + val.abs_sq()
    return A, mid


def _real_value(x: CycNum) -> float:
    """Float value of an exact real quantity (rational for p <= 3; the
    complex embedding's real part otherwise)."""
    if x.is_rational:
        return float(x.as_rational())
    return x.to_complex().real


def frame_inequality_test(ffs: FrameFilterSet, gens: GeneratorSet, j: int,
                          trials: int, seed: int, slack: float = 1e-9) -> dict:
    """Check lambda^j A <= Mid <= Lambda^j A on seeded random step functions.

    Both quadratic forms are computed exactly; lambda/Lambda enter as floats
    with the given relative slack.  Returns a report dict with the bounds,
    any violations, and the worst observed ratio.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    lam, big, _ = frame_bounds(ffs)
    sysm = FramePacketSystem(ffs, gens)
    rng = rng_from_seed(seed)
    violations = []
    worst = 0.0
    for t in range(trials):
        g = random_stepfn(rng, ffs.params, J=1, k=1)
        A_c, mid_c = frame_energy_sums(sysm, g, j)
        A = _real_value(A_c)
        lo = (lam ** j) * A
        hi = (big ** j) * A
        fm = _real_value(mid_c)
        tol = slack * max(1.0, abs(hi), abs(fm))
        if fm < lo - tol or fm > hi + tol:
            violations.append({"trial": t, "lower": lo, "middle": fm, "upper": hi})
        if fm > 0 and hi > 0:
            worst = max(worst, lo / fm, fm / hi)
    return {
        "lambda": lam,
        "Lambda": big,
        "level": j,
        "trials": trials,
        "violations": violations,
        "worst_ratio": worst,
    }
