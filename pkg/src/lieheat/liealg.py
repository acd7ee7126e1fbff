"""Catalog Lie algebras with an Ad-invariant inner product.

Every algebra is expressed in a basis that is orthonormal for the scaled
inner product ``s * <X, Y>_0`` where ``<X, Y>_0 = -trace(XY)`` in the defining
representation (the standard dot product for the torus).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, GroupSpecError

FAMILIES = ("torus", "su2", "so3", "su3")

# Below this angle sin(x/2)/(x/2) is replaced by its Taylor polynomial.
SMALL_ANGLE = 1e-4
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GroupSpec:
    family: str
    torus_rank: Optional[int] = None
    metric_scale: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GroupSpecError(f"unknown group family {self.family!r}")
        if not (self.metric_scale > 0 and math.isfinite(self.metric_scale)):
            raise GroupSpecError(f"metric scale must be positive, got {self.metric_scale}")
        if self.family == "torus":
            if self.torus_rank is None or int(self.torus_rank) != self.torus_rank or self.torus_rank < 1:
                raise GroupSpecError(f"torus rank must be a positive integer, got {self.torus_rank}")
        elif self.torus_rank is not None:
            raise GroupSpecError(f"{self.family} takes no rank")

    @property
    def label(self) -> str:
        base = f"torus:{self.torus_rank}" if self.family == "torus" else self.family
        if self.metric_scale != 1.0:
            base += f"@{self.metric_scale:g}"
        return base

    def with_scale(self, scale: float) -> "GroupSpec":
        return GroupSpec(self.family, self.torus_rank, scale)


_SPEC_RE = re.compile(r"^\s*(torus)\s*:\s*(\d+)\s*$|^\s*(su2|so3|su3)\s*$", re.IGNORECASE)


def parse_group_spec(text: str, scale: float = 1.0) -> GroupSpec:
    """Parse ``torus:<rank>``, ``su2``, ``so3`` or ``su3``."""
    m = _SPEC_RE.match(text)
    if m is None:
        raise GroupSpecError(f"cannot parse group spec {text!r} (expected torus:<rank>, su2, so3, su3)")
    try:
        scale = float(scale)
    except (TypeError, ValueError):
        raise GroupSpecError(f"bad metric scale {scale!r}") from None
    if m.group(1):
        return GroupSpec("torus", int(m.group(2)), scale)
    return GroupSpec(m.group(3).lower(), None, scale)


@dataclass(frozen=True, eq=False)
class StructuredLieAlgebra:
    n: int
    basis_labels: tuple
    c: np.ndarray  # c[i, j, k] = k-th coefficient of [e_i, e_j]
    cartan_indices: tuple
    lattice_basis: np.ndarray  # rows: character-lattice generators in t
    spec: GroupSpec
    # Defining-representation matrices of the orthonormal basis (None for tori).
    rep_matrices: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan_indices)

    @property
    def is_abelian(self) -> bool:
        return not np.any(self.c)

    def embed_cartan(self, h) -> np.ndarray:
        """Coefficient vector of the Cartan element with coordinates ``h``."""
        h = np.asarray(h, dtype=float).reshape(-1)
        if h.shape[0] != self.rank:
            raise ValueError(f"expected {self.rank} Cartan coordinates, got {h.shape[0]}")
        x = np.zeros(self.n)
        x[list(self.cartan_indices)] = h
        return x


@dataclass(frozen=True)
class AlgebraInvariants:
    casimir_trace: float
    scalar_curvature_from_trace: float
    dim: int


def _pauli():
    return np.array(
        [
            [[0, 1], [1, 0]],
            [[0, -1j], [1j, 0]],
            [[1, 0], [0, -1]],
        ],
        dtype=complex,
    )


def _so3_generators():
    eps = np.zeros((3, 3, 3))
    for (i, j, k), sgn in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                           (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
        eps[i, j, k] = sgn
    # (L_k)_{ij} = -eps_{kij}, so [L_1, L_2] = L_3 cyclically
    return np.array([-eps[k] for k in range(3)], dtype=complex)


def _gell_mann():
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / math.sqrt(3)
    return lam


def _trace_form(a, b, s):
    return s * float(np.real(-np.trace(a @ b)))


def _gram_schmidt(mats, s):
    out = []
    for m in mats:
        v = m.copy()
        for u in out:
            v = v - _trace_form(v, u, s) * u
        out.append(v / math.sqrt(_trace_form(v, v, s)))
    return np.array(out)


def _joint_weights(mats, cartan_indices):
    """Weights of the defining representation as vectors in Cartan coordinates."""
    hs = [mats[a] for a in cartan_indices]
    coeffs = [1.0, math.sqrt(2.0) / 3.0, math.pi / 7.0][: len(hs)]
    generic = sum(w * h for w, h in zip(coeffs, hs))
    # generic is anti-Hermitian; 1j*generic is Hermitian
    _, vecs = np.linalg.eigh(1j * generic)
    weights = []
    for v in vecs.T:
        weights.append([float(np.real(np.vdot(v, h @ v) / 1j)) for h in hs])
    return np.array(weights)


def build_algebra(spec: GroupSpec) -> StructuredLieAlgebra:
    """Structure constants of the catalog algebra in an orthonormal basis."""
    if not isinstance(spec, GroupSpec):
        raise GroupSpecError(f"expected a GroupSpec, got {type(spec).__name__}")
    s = spec.metric_scale
    if spec.family == "torus":
        r = spec.torus_rank
        return StructuredLieAlgebra(
            n=r,
            basis_labels=tuple(f"x{k + 1}" for k in range(r)),
            c=np.zeros((r, r, r)),
            cartan_indices=tuple(range(r)),
            lattice_basis=np.eye(r) / math.sqrt(s),
            spec=spec,
        )

    if spec.family == "su2":
        mats = -1j * _pauli() / math.sqrt(2.0 * s)
        labels, cartan = ("e1", "e2", "e3"), (2,)
    elif spec.family == "so3":
        mats = _so3_generators() / math.sqrt(2.0 * s)
        labels, cartan = ("L1", "L2", "L3"), (2,)
    else:
        mats = _gram_schmidt(-1j * _gell_mann(), s)
        labels, cartan = tuple(f"g{k + 1}" for k in range(8)), (2, 7)

    n = len(mats)
    c = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            for k in range(n):
                c[i, j, k] = _trace_form(comm, mats[k], s)
    c[np.abs(c) < 1e-15] = 0.0

    return StructuredLieAlgebra(
        n=n,
        basis_labels=labels,
        c=c,
        cartan_indices=cartan,
        lattice_basis=_joint_weights(mats, cartan),
        spec=spec,
        rep_matrices=mats,
    )


def _check_vec(alg: StructuredLieAlgebra, x, name="X") -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (alg.n,):
        raise ValueError(f"{name} must have length {alg.n}, got shape {x.shape}")
    return x


def bracket(alg: StructuredLieAlgebra, X, Y) -> np.ndarray:
    X = _check_vec(alg, X, "X")
    Y = _check_vec(alg, Y, "Y")
    return np.einsum("ijk,i,j->k", alg.c, X, Y)


def ad_matrix(alg: StructuredLieAlgebra, X) -> np.ndarray:
    """Matrix of ``Y -> [X, Y]`` acting on coefficient vectors."""
    X = _check_vec(alg, X)
    return np.einsum("ijk,i->kj", alg.c, X)


def casimir_trace(alg: StructuredLieAlgebra) -> float:
    """Trace of the Casimir element in the adjoint representation."""
    total = 0.0
    for i in range(alg.n):
        ad = ad_matrix(alg, np.eye(alg.n)[i])
        total += float(np.trace(ad @ ad))
    return total


def algebra_invariants(alg: StructuredLieAlgebra) -> AlgebraInvariants:
    tr = casimir_trace(alg)
    return AlgebraInvariants(casimir_trace=tr, scalar_curvature_from_trace=-0.25 * tr, dim=alg.n)


def ad_angles(alg: StructuredLieAlgebra, X) -> np.ndarray:
    """Rotation angles of ``ad_X``: square roots of the eigenvalues of ``-ad_X^2``."""
    ad = ad_matrix(alg, X)
    mu = np.linalg.eigvalsh(-(ad @ ad))
    return np.sqrt(np.clip(mu, 0.0, None))


def sinc_half(theta: float) -> float:
    """``sin(theta/2) / (theta/2)`` with a Taylor branch near zero."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 - t2 / 24.0 + t2 * t2 / 1920.0
    return math.sin(theta / 2.0) / (theta / 2.0)


def check_chart_domain(alg: StructuredLieAlgebra, X) -> np.ndarray:
    angles = ad_angles(alg, X)
    if angles.size and angles.max() >= TWO_PI:
        raise DomainError(
            f"point outside the exponential chart: largest ad-angle {angles.max():.6g} >= 2*pi"
        )
    return angles


def j_function(alg: StructuredLieAlgebra, X) -> float:
    """``det^{1/2}(sinh(ad_X/2) / (ad_X/2))`` on the injectivity domain."""
    angles = check_chart_domain(alg, X)
    out = 1.0
    for theta in angles:
        out *= math.sqrt(sinc_half(float(theta)))
    return out


def cartan_representative(alg: StructuredLieAlgebra, X) -> np.ndarray:
    """Cartan coordinates of an element conjugate to ``X`` (unique up to the Weyl group)."""
    X = _check_vec(alg, X)
    if alg.rep_matrices is None:
        return X.copy()
    s = alg.spec.metric_scale
    mat = np.einsum("a,aij->ij", X, alg.rep_matrices)
    # mat is anti-Hermitian: eigenvalues i*theta
    thetas = np.linalg.eigvalsh(1j * mat) * -1.0
    if alg.spec.family == "so3":
        # eigenvalues {0, +-theta}; the Cartan generator has eigenvalues {0, +-kappa}
        kappa = np.linalg.eigvalsh(1j * alg.rep_matrices[alg.cartan_indices[0]]).max()
        return np.array([thetas.max() / kappa])
    diag = np.diag(1j * thetas)
    return np.array([_trace_form(diag, alg.rep_matrices[a], s) for a in alg.cartan_indices])
