"""Pure numpy implementation of the radix-q character-transform kernel.

Contract shared with the compiled twin `lfwp._vc`:

    vc_transform(arr, q, L, stage) -> int64 array, same shape as arr

`arr` has shape (q**L, W): one row of W integer coordinates per input cell,
rows ordered lexicographically by the L base-q digits (most significant
first).  `stage` has shape (q, q, W, W); stage[w, d] is the integer matrix
acting on the coordinate vector of a cell with digit d that contributes to
output digit w.  The kernel applies the stage along every digit axis in turn
and finally reverses the digit order, which realigns the output rows to the
lexicographic order of the dual digits.

Callers guarantee that no intermediate value overflows int64.
"""

import numpy as np

IMPL = "numpy"


def vc_transform(arr, q, L, stage):
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    if L == 0:
        return arr.copy()
    W = arr.shape[1]
    x = arr.reshape((q,) * L + (W,))
    for ax in range(L):
        x = np.moveaxis(x, ax, 0)
        x = np.einsum("wdij,d...j->w...i", stage, x)
        x = np.moveaxis(x, 0, ax)
    x = x.transpose(tuple(range(L - 1, -1, -1)) + (L,))
    return np.ascontiguousarray(x.reshape(arr.shape))
