from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.models.algebra import LieType, RootSystem


@dataclass(frozen=True, eq=False)
class CompactLieAlgebra:
    """
    Compact simple Lie algebra in a basis x_a orthonormal for the basic
    inner product. The first ``rank`` basis vectors span the Cartan
    subalgebra t. [x_a, x_b] = sum_c f_abc x_c.

    ``matrices`` is a faithful matrix realization with
    B(X, Y) = -trace_scale * Re tr(XY). ``root_pairings[r, i]`` is the
    number a with ad(x_i) v = i a v on the r-th root vector v.
    """

    lie_type: LieType
    rank: int
    matrices: np.ndarray
    structure_constants: np.ndarray
    trace_scale: float
    root_pairings: np.ndarray
    root_system: RootSystem

    @property
    def name(self) -> str:
        return f"{self.lie_type.value}{self.rank}"

    @property
    def dim(self) -> int:
        return self.structure_constants.shape[0]

    @property
    def matrix_size(self) -> int:
        return self.matrices.shape[1]

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("a,b,abc->c", x, y, self.structure_constants)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad_x on coordinate vectors: (ad_x)[c, b] = sum_a x_a f_abc."""
        return np.einsum("a,abc->cb", x, self.structure_constants)

    def inner(self, x: np.ndarray, y: np.ndarray) -> float:
        return x @ y

    @property
    def killing_form(self) -> np.ndarray:
        f = self.structure_constants
        return np.einsum("adc,bcd->ab", f, f)

    def to_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self.matrices, axes=1)

    def to_coords(self, X: np.ndarray) -> np.ndarray:
        """Coordinates of a matrix (or stack of matrices) by orthogonal projection."""
        products = np.einsum("...ij,aji->...a", X, self.matrices)
        return -self.trace_scale * products.real

    def cartan_element(self, coords) -> np.ndarray:
        x = np.zeros(self.dim)
        x[: self.rank] = coords
        return x
