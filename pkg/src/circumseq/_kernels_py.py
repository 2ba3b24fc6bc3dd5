"""Pure-numpy kernel for iterating the circumcenter map.

Behavioral twin of the compiled extension in circumseq._speedups: same
signature, status codes, and stop semantics.  The only intended difference
is the mechanism of the degeneracy test (LAPACK exception plus equidistance
residual here, an elimination pivot floor plus the same residual there), so
borderline near-flat windows may be classified differently by the two
backends; healthy and clearly degenerate inputs agree.

iterate_circumcenters(seed, n_steps, rel_eps, seg_floor, coord_ceiling, ref)
    seed          (d+1, d) float array, the current window in order
    n_steps       number of points to append
    rel_eps       relative tolerance for the equidistance drift guard
    seg_floor     absolute length: stop (STATUS_UNDERFLOW) before appending a
                  point closer than this to its predecessor
    coord_ceiling absolute length: stop (STATUS_OVERFLOW) before appending a
                  point farther than this from ref in any coordinate
    ref           (d,) reference point for the overflow check

Returns (points, status, count): a buffer whose first ``count`` rows are the
seed plus the appended points, and one of the STATUS_* codes.  On
STATUS_DEGENERATE the failing step is count - d, 1-based.
"""

import numpy as np

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_OVERFLOW = 2
STATUS_DEGENERATE = 3


def iterate_circumcenters(seed, n_steps, rel_eps, seg_floor, coord_ceiling, ref):
    seed = np.ascontiguousarray(seed, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    m, d = seed.shape
    out = np.empty((m + int(n_steps), d))
    out[:m] = seed
    count = m
    for _ in range(int(n_steps)):
        window = out[count - m : count]
        q = window[1:] - window[0]
        sv = np.linalg.svd(q, compute_uv=False)
        if sv[0] <= 0.0 or sv[-1] <= rel_eps * sv[0]:
            return out, STATUS_DEGENERATE, count
        try:
            y = np.linalg.solve(2.0 * q, np.einsum("ij,ij->i", q, q))
        except np.linalg.LinAlgError:
            return out, STATUS_DEGENERATE, count
        center = window[0] + y
        r0 = float(np.linalg.norm(y))
        dists = np.linalg.norm(center - window, axis=1)
        if r0 <= 0.0 or float(dists.max() - dists.min()) > rel_eps * r0:
            return out, STATUS_DEGENERATE, count
        if float(np.linalg.norm(center - window[-1])) < seg_floor:
            return out, STATUS_UNDERFLOW, count
        if float(np.abs(center - ref).max()) > coord_ceiling:
            return out, STATUS_OVERFLOW, count
        out[count] = center
        count += 1
    return out, STATUS_OK, count
