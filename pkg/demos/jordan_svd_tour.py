"""A walk through the Jordan SVD of a double matrix.

Run with ``python3 demos/jordan_svd_tour.py``.
"""

import numpy as np

from splitlinalg import jordan_svd, pinv, penrose_check, uniqueness_probe
from splitlinalg.jordan_svd import polar_from_jordan_svd
from splitlinalg.matrices import DoubleMatrix, is_unitary

np.set_printoptions(precision=4, suppress=True)

# A double matrix is a pair [A, B]; its "singular values" are square roots of
# the eigenvalues of A B, and A B may well be defective.
T = np.array([[2.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
AB = T @ np.array([[4.0, 1.0, 0.0], [0.0, 4.0, 0.0], [0.0, 0.0, -9.0]]) @ np.linalg.inv(T)
B = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 1.0]])
A = AB @ np.linalg.inv(B)
M = DoubleMatrix(A, B)

s = jordan_svd(M.complexify())
print("Jordan blocks of the middle factor (eigenvalue, size):")
for lam, k in s.blocks:
    print(f"  {lam:.4f}  x{k}")
print("J =\n", s.J)
print("reconstruction error:", (s.reconstruct() - M).norm())
print("U, V unitary:", is_unitary(s.U, 1e-8), is_unitary(s.V, 1e-8))

# The block structure survives the square root, and the half-plane branch
# makes J unique: other branches normalize back to the same blocks.
print("branch-independent J:", uniqueness_probe(M.complexify()))

# Polar form falls out directly.
Un, P = polar_from_jordan_svd(s)
print("|Un P - M| =", (Un @ P - M).norm())

# Pseudoinverse of a singular pair with equal ranks.
X = np.array([[1.0, 0.0], [2.0, 1.0], [0.0, 1.0]])
S = DoubleMatrix(X @ np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]]), np.array([[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]]) @ X.T)
Sp = pinv(S)
print("Penrose identities for a rank-2 pair:", penrose_check(S, Sp, 1e-8).as_dict())
