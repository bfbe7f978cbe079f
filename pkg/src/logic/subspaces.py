import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.config import get_settings, resolve_rank_tolerance, resolve_tolerance
from src.exceptions.subspaces import (
    AmbientDimensionMismatchError,
    BaseSubspaceError,
    NonCommutingCandidatesError,
    StateOutsideCandidatesError,
)
from src.simulation.states import StateVector, reduced_density_matrix


logger = logging.getLogger(__name__)


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


def _as_vector(value) -> np.ndarray:
    if isinstance(value, StateVector):
        return value.amplitudes
    return np.asarray(value, dtype=complex).reshape(-1)


class Subspace(BaseModel):
    """
    A closed subspace held as an orthonormal basis, one column per vector.
    Bases are not canonical; compare subspaces with subspaces_equal.
    """
    ambient_dimension: int
    basis: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("basis", mode="before")
    @classmethod
    def validate_basis(cls, value) -> np.ndarray:
        array = _readonly(value)
        if array.ndim != 2:
            raise ValueError("Basis must be a matrix with one column per vector")
        return array

    @model_validator(mode="after")
    def validate_orthonormal(self) -> "Subspace":
        if self.ambient_dimension < 1:
            raise ValueError("Ambient dimension must be positive")
        if self.basis.shape[0] != self.ambient_dimension:
            raise AmbientDimensionMismatchError(self.ambient_dimension, self.basis.shape[0])
        if self.basis.shape[1] > self.ambient_dimension:
            raise BaseSubspaceError(
                f"{self.basis.shape[1]} basis vectors cannot be independent "
                f"in dimension {self.ambient_dimension}"
            )
        if self.orthonormality_error() > get_settings().NORM_TOLERANCE:
            raise BaseSubspaceError(
                f"Basis is not orthonormal (error {self.orthonormality_error():.3e})"
            )
        return self

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def orthonormality_error(self) -> float:
        if self.dimension == 0:
            return 0.0
        gram = self.basis.conj().T @ self.basis
        return float(np.max(np.abs(gram - np.eye(self.dimension))))

    def project(self, vector: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ vector)


class Projector(BaseModel):
    matrix: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("matrix", mode="before")
    @classmethod
    def validate_matrix(cls, value) -> np.ndarray:
        array = _readonly(value)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError("Projector must be a square matrix")
        guard = get_settings().NORM_TOLERANCE
        if np.max(np.abs(array - array.conj().T), initial=0.0) > guard:
            raise ValueError("Projector is not Hermitian")
        if np.max(np.abs(array @ array - array), initial=0.0) > guard:
            raise ValueError("Projector is not idempotent")
        return array

    @property
    def rank(self) -> int:
        return int(round(float(np.trace(self.matrix).real)))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))

    def idempotence_error(self) -> float:
        return float(np.max(np.abs(self.matrix @ self.matrix - self.matrix), initial=0.0))


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dimension != b.ambient_dimension:
        raise AmbientDimensionMismatchError(a.ambient_dimension, b.ambient_dimension)


def zero_subspace(ambient_dimension: int) -> Subspace:
    return Subspace(
        ambient_dimension=ambient_dimension,
        basis=np.zeros((ambient_dimension, 0), dtype=complex),
    )


def full_space(ambient_dimension: int) -> Subspace:
    return Subspace(
        ambient_dimension=ambient_dimension,
        basis=np.eye(ambient_dimension, dtype=complex),
    )


def span(
        vectors: Iterable,
        ambient_dimension: int,
        rank_tolerance: float | None = None
) -> Subspace:
    """
    Orthonormal basis of the linear span, by modified Gram-Schmidt with one
    re-orthogonalization pass. Vectors are taken in input order; a vector
    whose residual is at most rank_tolerance times its norm is dropped.
    """
    rank_tolerance = resolve_rank_tolerance(rank_tolerance)
    columns: List[np.ndarray] = []
    for value in vectors:
        vector = _as_vector(value).copy()
        if vector.size != ambient_dimension:
            raise AmbientDimensionMismatchError(ambient_dimension, vector.size)
        original_norm = np.linalg.norm(vector)
        if original_norm == 0:
            continue
        for _ in range(2):
            for column in columns:
                vector -= np.vdot(column, vector) * column
        residual = np.linalg.norm(vector)
        if residual <= rank_tolerance * original_norm:
            continue
        columns.append(vector / residual)
        if len(columns) == ambient_dimension:
            break
    if not columns:
        return zero_subspace(ambient_dimension)
    return Subspace(ambient_dimension=ambient_dimension, basis=np.column_stack(columns))


def ray(vector) -> Subspace:
    vector = _as_vector(vector)
    return span([vector], vector.size)


def projector(sub: Subspace) -> Projector:
    return Projector(matrix=sub.basis @ sub.basis.conj().T)


def meet(
        a: Subspace,
        b: Subspace,
        rank_tolerance: float | None = None
) -> Subspace:
    """
    Intersection of two subspaces: the directions of a that b's projector
    leaves unchanged, i.e. eigenvectors of P_a P_b P_a with eigenvalue 1.
    Computed in a's coordinates as A^dagger P_b A.
    """
    _check_ambient(a, b)
    rank_tolerance = resolve_rank_tolerance(rank_tolerance)
    if a.dimension == 0 or b.dimension == 0:
        return zero_subspace(a.ambient_dimension)
    overlap = b.basis.conj().T @ a.basis
    compressed = overlap.conj().T @ overlap
    eigenvalues, eigenvectors = np.linalg.eigh(compressed)
    keep = eigenvalues >= 1.0 - rank_tolerance
    candidates = a.basis @ eigenvectors[:, keep]
    return span(candidates.T, a.ambient_dimension, rank_tolerance)


def join(
        a: Subspace,
        b: Subspace,
        rank_tolerance: float | None = None
) -> Subspace:
    """Span of the union of the two bases."""
    _check_ambient(a, b)
    vectors = list(a.basis.T) + list(b.basis.T)
    return span(vectors, a.ambient_dimension, rank_tolerance)


def orthocomplement(a: Subspace, rank_tolerance: float | None = None) -> Subspace:
    identity = np.eye(a.ambient_dimension, dtype=complex)
    extended = span(list(a.basis.T) + list(identity), a.ambient_dimension, rank_tolerance)
    return Subspace(
        ambient_dimension=a.ambient_dimension,
        basis=extended.basis[:, a.dimension:],
    )


def commutes(a: Subspace, b: Subspace, tolerance: float | None = None) -> bool:
    _check_ambient(a, b)
    tolerance = resolve_tolerance(tolerance)
    p_a = projector(a).matrix
    p_b = projector(b).matrix
    return float(np.max(np.abs(p_a @ p_b - p_b @ p_a))) <= tolerance


def contains(a: Subspace, v, tolerance: float | None = None) -> bool:
    """True when ||P_a v - v|| <= tolerance."""
    tolerance = resolve_tolerance(tolerance)
    vector = _as_vector(v)
    if vector.size != a.ambient_dimension:
        raise AmbientDimensionMismatchError(a.ambient_dimension, vector.size)
    return float(np.linalg.norm(a.project(vector) - vector)) <= tolerance


def includes(a: Subspace, b: Subspace, tolerance: float | None = None) -> bool:
    """True when b is a subspace of a."""
    _check_ambient(a, b)
    return all(contains(a, column, tolerance) for column in b.basis.T)


def subspaces_equal(a: Subspace, b: Subspace, tolerance: float | None = None) -> bool:
    return a.dimension == b.dimension and includes(a, b, tolerance) and includes(b, a, tolerance)


def subspace_distinguisher(
        candidates: Sequence[Subspace],
        v,
        tolerance: float | None = None
) -> Optional[int]:
    """
    Index of the only candidate containing v, or None when v lies in the meet
    of several candidates and the test is inconclusive.

    v may be a state vector or a Subspace (for instance the support of a
    reduced state), in which case containment means inclusion.
    """
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            if not commutes(candidates[i], candidates[j], tolerance):
                raise NonCommutingCandidatesError(i, j)
    if isinstance(v, Subspace):
        holding = [i for i, candidate in enumerate(candidates) if includes(candidate, v, tolerance)]
    else:
        holding = [i for i, candidate in enumerate(candidates) if contains(candidate, v, tolerance)]
    if not holding:
        raise StateOutsideCandidatesError()
    if len(holding) == 1:
        return holding[0]
    logger.debug(f"Inconclusive: state lies in candidates {holding}")
    return None


def reduced_support(
        state: StateVector,
        register_index: int,
        rank_tolerance: float | None = None
) -> Subspace:
    """Support of the reduced density matrix of one register."""
    rank_tolerance = resolve_rank_tolerance(rank_tolerance)
    density = reduced_density_matrix(state, register_index)
    eigenvalues, eigenvectors = np.linalg.eigh(density)
    keep = eigenvalues > rank_tolerance
    return span(eigenvectors[:, keep].T, density.shape[0], rank_tolerance)


def coordinate_subspace(labels: Iterable[int], ambient_dimension: int) -> Subspace:
    """Span of the computational basis vectors |label>."""
    ordered = list(dict.fromkeys(int(label) for label in labels))
    for label in ordered:
        if not 0 <= label < ambient_dimension:
            raise BaseSubspaceError(f"Basis label {label} is outside dimension {ambient_dimension}")
    basis = np.zeros((ambient_dimension, len(ordered)), dtype=complex)
    for column, label in enumerate(ordered):
        basis[label, column] = 1.0
    return Subspace(ambient_dimension=ambient_dimension, basis=basis)


def basis_labels(sub: Subspace, tolerance: float | None = None) -> Optional[List[int]]:
    """Sorted labels when sub is spanned by computational basis vectors, else None."""
    tolerance = resolve_tolerance(tolerance)
    weights = np.sum(np.abs(sub.basis) ** 2, axis=1)
    labels = [int(i) for i in np.flatnonzero(weights > 1.0 - tolerance)]
    if len(labels) != sub.dimension:
        return None
    return labels
