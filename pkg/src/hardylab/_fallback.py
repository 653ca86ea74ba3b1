"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np

_CHUNK = 1 << 16


def scan_strategies(n, alpha_masks, beta_masks, f_w, x_w, y_w, start, stop):
    full = (1 << n) - 1
    best_value, best_index, counterexample = 0, -1, -1
    for lo in range(start, stop, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, stop), dtype=np.int64)
        a = idx & full
        b = idx >> n
        cnt_a = np.zeros(idx.shape, dtype=np.int64)
        for s in alpha_masks:
            cnt_a += ((b & s) == s) & ((a | s) == full)
        cnt_b = np.zeros(idx.shape, dtype=np.int64)
        for s in beta_masks:
            cnt_b += ((b & s) == 0) & ((a | s) == full)
        a_all = (a == full).astype(np.int64)
        values = f_w * a_all - x_w * cnt_a - y_w * cnt_b
        k = int(np.argmax(values))
        if best_index < 0 or values[k] > best_value:
            best_value, best_index = int(values[k]), int(idx[k])
        if counterexample < 0:
            hits = np.flatnonzero((a_all == 1) & (cnt_a == 0) & (cnt_b == 0))
            if hits.size:
                counterexample = int(idx[hits[0]])
    return best_value, best_index, counterexample


def grid_argmax(cos_table, f, x, y, alpha, beta, row_start, row_stop):
    table = np.asarray(cos_table, dtype=np.float64)
    N = table.shape[0]
    shift = (beta * (N // 2)) % N
    i = np.arange(row_start, row_stop)[:, None]
    j = np.arange(N)[None, :]
    values = (f * (1.0 + table[i])
              - x * (1.0 + table[(i + alpha * j) % N])
              - y * (1.0 + table[(i + beta * j + shift) % N]))
    k = int(np.argmax(values))
    bi, bj = divmod(k, N)
    return float(values.flat[k]), row_start + bi, bj
