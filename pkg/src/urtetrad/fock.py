"""Truncated 4-mode bosonic Fock space, sparse ladder operators, and the
second-quantized tetrad.

The second quantization promotes the four bispinor components to bosonic
modes, u_r -> a_r and u_r* -> a_r^+, with canonical commutation relations
[a_r, a_s^+] = delta_rs.  On the basis truncated at a total-quanta cutoff
the canonical relation holds exactly on states below the cutoff and is
violated only on the top shell, where creation leaves the space.

Every operator built here is the projection of the untruncated operator
onto the truncated basis.  For the symmetrized bilinears
tau_rs = (1/2){a_r^+, a_s} that distinction matters: the literal product
of truncated factors would corrupt the top shell, so the bilinears are
assembled in normal-ordered form, which is shell-preserving and therefore
projects exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .spinor import GroupElement

__all__ = [
    "N_MODES",
    "MAX_STATES",
    "TETRAD_BILINEARS",
    "CutoffTooLargeError",
    "BadModeError",
    "TruncationTooLossyError",
    "DimensionMismatchError",
    "SparseOperator",
    "FockSpace",
    "BispinorAmplitudes",
    "OperatorTetrad",
    "tetrad_component",
    "operator_tetrad",
    "coherent_state",
    "coherent_bilinear_value",
    "expectation",
]

N_MODES = 4
MAX_STATES = 10**6


class CutoffTooLargeError(ValueError):
    """Requested cutoff would exceed the configured state-count bound."""


class BadModeError(ValueError):
    """Mode index outside 1..4."""


class TruncationTooLossyError(ValueError):
    """Coherent amplitudes too large for the cutoff; norm deficit above bound."""


class DimensionMismatchError(ValueError):
    """Operator and state dimensions disagree."""


class SparseOperator:
    """Immutable complex sparse matrix over a Fock basis.

    Stored in canonical CSR form (sorted, deduplicated, no explicit
    zeros) so the triplet listing is deterministic.
    """

    __slots__ = ("_mat",)

    def __init__(self, matrix):
        mat = sparse.csr_array(matrix, dtype=complex)
        if mat.shape[0] != mat.shape[1]:
            raise ValueError("operator matrix must be square")
        mat.sum_duplicates()
        mat.eliminate_zeros()
        mat.data.setflags(write=False)
        object.__setattr__(self, "_mat", mat)

    def __setattr__(self, name, value):
        raise AttributeError("SparseOperator is immutable")

    @classmethod
    def from_triplets(cls, dimension: int, entries) -> "SparseOperator":
        """Build from (row, col, value) entries; duplicate positions are rejected."""
        rows, cols, vals = [], [], []
        seen = set()
        for r, c, v in entries:
            if not (0 <= r < dimension and 0 <= c < dimension):
                raise ValueError(f"entry ({r}, {c}) outside dimension {dimension}")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            seen.add((r, c))
            rows.append(r)
            cols.append(c)
            vals.append(v)
        mat = sparse.csr_array(
            (np.asarray(vals, dtype=complex), (rows, cols)),
            shape=(dimension, dimension),
        )
        return cls(mat)

    @classmethod
    def identity(cls, dimension: int) -> "SparseOperator":
        return cls(sparse.eye_array(dimension, dtype=complex, format="csr"))

    @classmethod
    def zero(cls, dimension: int) -> "SparseOperator":
        return cls(sparse.csr_array((dimension, dimension), dtype=complex))

    @classmethod
    def from_diagonal(cls, values) -> "SparseOperator":
        values = np.asarray(values, dtype=complex)
        return cls(sparse.diags_array(values, format="csr"))

    @property
    def dimension(self) -> int:
        return self._mat.shape[0]

    @property
    def nnz(self) -> int:
        return self._mat.nnz

    @property
    def matrix(self):
        """The underlying CSR array (read-only data buffer)."""
        return self._mat

    def triplets(self):
        """Row-major list of (row, col, value) for all stored entries."""
        coo = self._mat.tocoo()
        return [
            (int(r), int(c), complex(v))
            for r, c, v in zip(coo.row, coo.col, coo.data)
        ]

    def to_dense(self) -> np.ndarray:
        return self._mat.toarray()

    def diagonal(self) -> np.ndarray:
        return self._mat.diagonal()

    def dagger(self) -> "SparseOperator":
        return SparseOperator(self._mat.conj().T)

    def hermiticity_defect(self) -> float:
        diff = self._mat - self._mat.conj().T
        return float(np.abs(diff.data).max()) if diff.nnz else 0.0

    def max_abs(self, columns=None) -> float:
        """Largest entry magnitude, optionally restricted to a column subset."""
        mat = self._mat if columns is None else self._mat[:, columns]
        return float(np.abs(mat.data).max()) if mat.nnz else 0.0

    def __matmul__(self, other):
        if isinstance(other, SparseOperator):
            return SparseOperator(self._mat @ other._mat)
        return self._mat @ np.asarray(other, dtype=complex)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self._mat + other._mat)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self._mat - other._mat)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(-self._mat)

    def __mul__(self, scalar) -> "SparseOperator":
        return SparseOperator(self._mat * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"SparseOperator(dimension={self.dimension}, nnz={self.nnz})"


def _mode_index(r: int) -> int:
    if r not in (1, 2, 3, 4):
        raise BadModeError(f"mode index {r!r} outside 1..{N_MODES}")
    return r - 1


def _enumerate_basis(cutoff: int):
    # total-quanta-major, then lexicographic in (n1, n2, n3, n4)
    basis = []
    for total in range(cutoff + 1):
        for n1 in range(total + 1):
            for n2 in range(total - n1 + 1):
                for n3 in range(total - n1 - n2 + 1):
                    basis.append((n1, n2, n3, total - n1 - n2 - n3))
    return basis


class FockSpace:
    """Occupation basis of 4 bosonic modes with total quanta <= cutoff.

    The basis order (total-quanta-major, then lexicographic) is part of the
    CLI output contract; the dimension is binomial(cutoff + 4, 4).
    """

    def __init__(self, cutoff: int, max_states: int = MAX_STATES):
        cutoff = int(cutoff)
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        dimension = math.comb(cutoff + N_MODES, N_MODES)
        if dimension > max_states:
            raise CutoffTooLargeError(
                f"cutoff {cutoff} gives {dimension} states, above the bound {max_states}"
            )
        self.cutoff = cutoff
        self.dimension = dimension
        self.basis = tuple(_enumerate_basis(cutoff))
        self.occupations = np.array(self.basis, dtype=np.int64)
        self.occupations.setflags(write=False)
        self._index = {state: i for i, state in enumerate(self.basis)}

    def index_of(self, state) -> int:
        """Basis position of an occupation tuple."""
        return self._index[tuple(int(n) for n in state)]

    def safe_indices(self) -> np.ndarray:
        """Indices of states with total quanta below the cutoff.

        On this subspace the canonical commutators are exact; the top
        shell feels the truncation of the creation operators.
        """
        return np.flatnonzero(self.occupations.sum(axis=1) < self.cutoff)

    def identity(self) -> SparseOperator:
        return SparseOperator.identity(self.dimension)

    def total_quanta(self) -> SparseOperator:
        """Diagonal operator counting total occupation."""
        return SparseOperator.from_diagonal(self.occupations.sum(axis=1).astype(float))

    def annihilator(self, r: int) -> SparseOperator:
        """a_r: maps |.. n_r ..> to sqrt(n_r) |.. n_r - 1 ..>."""
        k = _mode_index(r)
        rows, cols, vals = [], [], []
        for i, state in enumerate(self.basis):
            n = state[k]
            if n:
                lowered = state[:k] + (n - 1,) + state[k + 1 :]
                rows.append(self._index[lowered])
                cols.append(i)
                vals.append(math.sqrt(n))
        if not vals:
            return SparseOperator.zero(self.dimension)
        mat = sparse.csr_array(
            (np.asarray(vals, dtype=complex), (rows, cols)),
            shape=(self.dimension, self.dimension),
        )
        return SparseOperator(mat)

    def creator(self, r: int) -> SparseOperator:
        """a_r^+, the adjoint of a_r.  Annihilates the top total-quanta shell."""
        return self.annihilator(r).dagger()

    def tau(self, r: int, s: int) -> SparseOperator:
        """Symmetrized bilinear (1/2){a_r^+, a_s} projected to the truncated basis.

        Built in normal-ordered form: a_r^+ a_s plus 1/2 on the diagonal
        when r == s.  The normal-ordered product preserves the total-quanta
        shell, so composing the truncated factors already equals the
        projection of the untruncated operator; the diagonal case is
        written out directly so its entries are exact halves.
        """
        _mode_index(r)
        _mode_index(s)
        if r == s:
            occ = self.occupations[:, r - 1].astype(float) + 0.5
            return SparseOperator.from_diagonal(occ)
        return self.creator(r) @ self.annihilator(s)


@dataclass(frozen=True)
class BispinorAmplitudes:
    """The four bispinor components (u_1, u_2, u_3, u_4) with phase attached."""

    u1: complex
    u2: complex
    u3: complex
    u4: complex

    @classmethod
    def from_element(cls, g: GroupElement) -> "BispinorAmplitudes":
        """(a, -b*, b, a*) times e^(i*phi), the mode amplitudes of a group element."""
        ph = cmath.exp(1j * g.phi)
        return cls(g.a * ph, -g.b.conjugate() * ph, g.b * ph, g.a.conjugate() * ph)

    def as_array(self) -> np.ndarray:
        return np.array([self.u1, self.u2, self.u3, self.u4])


# Spatial tetrad components as combinations of tau_rs; the time component
# is the full zero-point-shifted number operator.  Each combination is
# Hermitian because conj(coefficient of tau_rs) equals the coefficient of
# tau_sr; in every spatial entry the diagonal 1/2 terms cancel.
TETRAD_BILINEARS = {
    "t0": ((1.0, 1, 1), (1.0, 2, 2), (1.0, 3, 3), (1.0, 4, 4)),
    "z1": ((-0.5, 1, 2), (-0.5, 2, 1), (0.5, 3, 4), (0.5, 4, 3)),
    "z2": ((0.5j, 1, 2), (-0.5j, 2, 1), (-0.5j, 3, 4), (0.5j, 4, 3)),
    "z3": ((-0.5, 1, 1), (0.5, 2, 2), (0.5, 3, 3), (-0.5, 4, 4)),
    "x1": ((0.5, 1, 4), (0.5, 4, 1), (0.5, 2, 3), (0.5, 3, 2)),
    "x2": ((-0.5j, 1, 4), (0.5j, 4, 1), (0.5j, 2, 3), (-0.5j, 3, 2)),
    "x3": ((0.5, 1, 3), (0.5, 3, 1), (-0.5, 2, 4), (-0.5, 4, 2)),
    "y1": ((-0.5j, 1, 4), (0.5j, 4, 1), (-0.5j, 2, 3), (0.5j, 3, 2)),
    "y2": ((-0.5, 1, 4), (-0.5, 4, 1), (0.5, 2, 3), (0.5, 3, 2)),
    "y3": ((-0.5j, 1, 3), (0.5j, 3, 1), (0.5j, 2, 4), (-0.5j, 4, 2)),
}


def _bilinear_combination(space: FockSpace, terms) -> SparseOperator:
    acc = None
    for coeff, r, s in terms:
        op = space.tau(r, s) * coeff
        acc = op if acc is None else acc + op
    return acc


def tetrad_component(space: FockSpace, name: str) -> SparseOperator:
    """One named component of the operator tetrad (t0, z1..z3, x1..x3, y1..y3)."""
    try:
        terms = TETRAD_BILINEARS[name]
    except KeyError:
        raise ValueError(f"unknown tetrad component {name!r}") from None
    return _bilinear_combination(space, terms)


@dataclass(frozen=True, eq=False)
class OperatorTetrad:
    """The four operator-valued 4-vectors; every component is Hermitian.

    The time components of z_hat, x_hat, y_hat and the spatial components
    of t_hat are explicit zero operators.
    """

    t_hat: tuple
    z_hat: tuple
    x_hat: tuple
    y_hat: tuple

    def components(self):
        """Yield (label, operator) over all 16 components."""
        for label, vec in (("t", self.t_hat), ("z", self.z_hat), ("x", self.x_hat), ("y", self.y_hat)):
            for mu, op in enumerate(vec):
                yield f"{label}{mu}", op


def operator_tetrad(space: FockSpace) -> OperatorTetrad:
    """Quantized tetrad: t_hat = (n_hat, 0, 0, 0) plus the spatial combinations."""
    zero = SparseOperator.zero(space.dimension)
    comp = {name: tetrad_component(space, name) for name in TETRAD_BILINEARS}
    return OperatorTetrad(
        t_hat=(comp["t0"], zero, zero, zero),
        z_hat=(zero, comp["z1"], comp["z2"], comp["z3"]),
        x_hat=(zero, comp["x1"], comp["x2"], comp["x3"]),
        y_hat=(zero, comp["y1"], comp["y2"], comp["y3"]),
    )


def _sqrt_factorials(n: int) -> np.ndarray:
    return np.sqrt(np.cumprod(np.concatenate(([1.0], np.arange(1.0, n + 1.0)))))


def coherent_state(
    space: FockSpace,
    amps: BispinorAmplitudes,
    scale: float,
    max_deficit: float = 1e-8,
) -> np.ndarray:
    """Normalized truncated coherent state with mode amplitudes scale * u_r.

    The weight the truncation discards from the untruncated state is the
    Poisson tail of the total intensity sum_r |alpha_r|^2; if that deficit
    exceeds max_deficit the state is refused as TruncationTooLossyError.
    """
    alphas = float(scale) * amps.as_array()
    sq = _sqrt_factorials(space.cutoff)
    powers = np.arange(space.cutoff + 1)
    tables = [alpha**powers / sq for alpha in alphas]
    occ = space.occupations
    coeffs = (
        tables[0][occ[:, 0]]
        * tables[1][occ[:, 1]]
        * tables[2][occ[:, 2]]
        * tables[3][occ[:, 3]]
    )
    norm_sq = float(np.vdot(coeffs, coeffs).real)
    intensity = float(np.sum(np.abs(alphas) ** 2))
    deficit = 1.0 - norm_sq * math.exp(-intensity)
    if deficit > max_deficit:
        raise TruncationTooLossyError(
            f"truncation discards {deficit:.3e} of the state weight, above {max_deficit}"
        )
    state = coeffs / math.sqrt(norm_sq)
    state.setflags(write=False)
    return state


def coherent_bilinear_value(amps: BispinorAmplitudes, scale: float, terms) -> complex:
    """Analytic coherent-state expectation of a tau combination.

    For coherent amplitudes alpha_r, <tau_rs> = conj(alpha_r) alpha_s plus
    the zero-point 1/2 on the diagonal; truncation error is not included.
    """
    alphas = float(scale) * amps.as_array()
    total = 0.0 + 0.0j
    for coeff, r, s in terms:
        total += coeff * (np.conj(alphas[r - 1]) * alphas[s - 1] + (0.5 if r == s else 0.0))
    return complex(total)


def expectation(op: SparseOperator, state) -> complex:
    """<state| op |state>; real up to rounding when op is Hermitian."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (op.dimension,):
        raise DimensionMismatchError(
            f"state shape {state.shape} does not match operator dimension {op.dimension}"
        )
    return complex(np.vdot(state, op @ state))
