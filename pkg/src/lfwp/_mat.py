"""Tiny dense-matrix helpers over CycNum (exact) plus a complex embedding."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .cyclotomic import CycNum

Matrix = list[list[CycNum]]


def identity(p: int, n: int) -> Matrix:
    one = CycNum.one(p)
    zero = CycNum.zero(p)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[CycNum]], B: Sequence[Sequence[CycNum]]) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    p = A[0][0].p
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = CycNum.zero(p)
            for t in range(k):
                a = A[i][t]
                if not a.is_zero:
                    b = B[t][j]
                    if not b.is_zero:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def conj_transpose(A: Sequence[Sequence[CycNum]]) -> Matrix:
    return [[A[i][j].conj() for i in range(len(A))] for j in range(len(A[0]))]


def mat_sub(A: Sequence[Sequence[CycNum]], B: Sequence[Sequence[CycNum]]) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_eq(A: Sequence[Sequence[CycNum]], B: Sequence[Sequence[CycNum]]) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def is_identity(A: Sequence[Sequence[CycNum]]) -> bool:
    p = A[0][0].p
    one = CycNum.one(p)
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            if v != (one if i == j else CycNum.zero(p)):
                return False
    return True


def to_complex_matrix(A: Sequence[Sequence[CycNum]]) -> np.ndarray:
    return np.array([[v.to_complex() for v in row] for row in A], dtype=complex)


def to_text_matrix(A: Sequence[Sequence[CycNum]]) -> list[list[str]]:
    return [[v.to_text() for v in row] for row in A]
