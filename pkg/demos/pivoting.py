"""Why double permutation matrices need two independent permutations.

Run with ``python3 demos/pivoting.py``.
"""

import numpy as np

from splitlinalg.decompositions import qr_components
from splitlinalg.errors import PivotFailure
from splitlinalg.matrices import DoubleMatrix
from splitlinalg.pivoted import bkp_double, lup_general, lup_restricted, rrqr_double

I2 = np.eye(2)
SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
M = DoubleMatrix(I2, SWAP)

print("restricted LUP of [I, swap]:", lup_restricted(M))
res = lup_general(M)
print("general LUP uses [P, Q] =", res.perm.P.tolist(), res.perm.Q.tolist(),
      "| unitary:", res.perm.is_unitary(), "| residual:", (res.reconstruct() - M).norm())

try:
    qr_components(M)
except PivotFailure as exc:
    print("unpivoted QR fails:", exc)
rr = rrqr_double(M)
print("pivoted QR residual:", (rr.reconstruct() - M).norm())

A = np.array([[1.0, 2.0], [2.0, 4.0]])
bkp = bkp_double(DoubleMatrix(A, A))
print("complete-pivot LDU of a rank-1 Hermitian pair: D =", np.diag(bkp.D.A).tolist(), "rank", bkp.rank)
