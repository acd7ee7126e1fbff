"""Root systems, dominant weights, Weyl dimensions and characters.

Roots are extracted numerically from the adjoint action of a generic Cartan
element; t* is identified with t through the inner product, so every weight is
a vector of Cartan coordinates.  Which weights are admissible is global data
carried by ``StructuredLieAlgebra.lattice_basis`` (SU(2) and SO(3) share an
algebra but not a spectrum).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, LieHeatError, WeylSingularError
from .liealg import StructuredLieAlgebra, ad_matrix

WEYL_SINGULAR_TOL = 1e-10
_MAX_ATTEMPTS = 8


@dataclass(frozen=True, eq=False)
class RootSystem:
    rank: int
    roots: np.ndarray  # (m, r)
    positive_roots: np.ndarray
    simple_roots: np.ndarray
    rho: np.ndarray
    fundamental_weights: np.ndarray  # (r, r), row i is omega_i
    weyl_group: tuple  # r x r orthogonal matrices
    weyl_signs: np.ndarray
    lattice_basis: np.ndarray  # (r, r) integer basis in fundamental-weight coordinates
    abelian: bool = False

    @property
    def rho_norm2(self) -> float:
        return float(self.rho @ self.rho)


@dataclass(frozen=True, eq=False)
class IrrepDatum:
    weight: np.ndarray
    coords: tuple  # integer coordinates (fundamental weights, or the torus lattice)
    dim: int
    casimir: float


def _generic_cartan(rank: int, attempt: int) -> np.ndarray:
    base = np.array([1.0, math.sqrt(2.0) - 0.5, math.pi / 5.0, math.e / 7.0])
    shift = np.array([math.sqrt(3.0), math.sqrt(5.0), math.sqrt(7.0), math.sqrt(11.0)])
    v = base[:rank] + attempt * shift[:rank] % 1.0
    return v / np.linalg.norm(v)


def _extract_roots(alg: StructuredLieAlgebra, h: np.ndarray):
    eye = np.eye(alg.n)
    hs = [ad_matrix(alg, eye[a]) for a in alg.cartan_indices]
    adh = sum(w * m for w, m in zip(h, hs))
    vals, vecs = np.linalg.eig(adh)
    roots = []
    n_zero = 0
    scale = max(1.0, float(np.abs(vals).max()))
    for val, v in zip(vals, vecs.T):
        if abs(val) < 1e-9 * scale:
            n_zero += 1
            continue
        alpha = []
        for m in hs:
            mv = m @ v
            coef = np.vdot(v, mv) / (1j * np.vdot(v, v))
            if np.linalg.norm(mv - 1j * coef * v) > 1e-8 * scale:
                return None  # v is not a joint eigenvector
            alpha.append(coef.real)
        roots.append(alpha)
    if n_zero != alg.rank:
        return None
    return np.array(roots).reshape(-1, alg.rank)


def _reflection(alpha: np.ndarray) -> np.ndarray:
    return np.eye(len(alpha)) - 2.0 * np.outer(alpha, alpha) / (alpha @ alpha)


def _close_group(gens, tol=1e-9):
    r = gens[0].shape[0]
    elems = [np.eye(r)]
    frontier = [np.eye(r)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                cand = s @ g
                if not any(np.allclose(cand, e, atol=tol) for e in elems):
                    elems.append(cand)
                    nxt.append(cand)
        frontier = nxt
        if len(elems) > 10000:
            raise InternalConsistencyError("Weyl group closure did not terminate")
    return elems


def _hermite_basis(gens: np.ndarray) -> np.ndarray:
    """Row-style Hermite normal form basis of the integer span of ``gens``."""
    rows = [list(map(int, g)) for g in gens]
    r = len(rows[0])
    basis = []
    for col in range(r):
        rows = [row for row in rows if any(row)]
        pivots = [row for row in rows if row[col] != 0]
        others = [row for row in rows if row[col] == 0]
        while len(pivots) > 1:
            pivots.sort(key=lambda row: abs(row[col]))
            p = pivots[0]
            reduced = [p]
            for row in pivots[1:]:
                q = row[col] // p[col]
                new = [a - q * b for a, b in zip(row, p)]
                (reduced if new[col] != 0 else others).append(new)
            pivots = reduced
        if pivots:
            p = pivots[0]
            if p[col] < 0:
                p = [-a for a in p]
            basis.append(p)
        rows = others
    if len(basis) != r:
        raise InternalConsistencyError("character lattice is not of full rank")
    return np.array(basis, dtype=np.int64)


def root_system(alg: StructuredLieAlgebra) -> RootSystem:
    """Roots, rho, fundamental weights and Weyl group of ``alg``."""
    r = alg.rank
    if alg.is_abelian:
        return RootSystem(
            rank=r,
            roots=np.zeros((0, r)),
            positive_roots=np.zeros((0, r)),
            simple_roots=np.zeros((0, r)),
            rho=np.zeros(r),
            fundamental_weights=np.eye(r),
            weyl_group=(np.eye(r),),
            weyl_signs=np.array([1.0]),
            # fundamental_weights is the identity, so "coordinates" are plain t-coordinates
            lattice_basis=np.eye(r, dtype=np.int64),
            abelian=True,
        )

    roots = None
    for attempt in range(_MAX_ATTEMPTS):
        roots = _extract_roots(alg, _generic_cartan(r, attempt))
        if roots is not None:
            break
    if roots is None:
        raise LieHeatError(f"could not separate root spaces after {_MAX_ATTEMPTS} attempts")

    xi = _generic_cartan(r, 0) + 1e-3 * np.arange(1, r + 1)
    positive = np.array([a for a in roots if a @ xi > 0])
    positive = positive[np.lexsort(positive.T[::-1])]
    simple = []
    for a in positive:
        decomposable = any(
            np.allclose(a, b + c, atol=1e-9) for b, c in itertools.combinations(positive, 2)
        )
        if not decomposable:
            simple.append(a)
    simple = np.array(simple)
    if len(simple) != r:
        raise InternalConsistencyError(f"found {len(simple)} simple roots for rank {r}")

    coroots = 2.0 * simple / np.sum(simple * simple, axis=1)[:, None]
    # rows omega_i with <omega_i, coroot_j> = delta_ij
    fundamental = np.linalg.inv(coroots).T
    rho = 0.5 * positive.sum(axis=0)
    weyl = _close_group([_reflection(a) for a in simple])
    signs = np.array([round(np.linalg.det(w)) for w in weyl], dtype=float)

    gens = list(np.rint(alg.lattice_basis @ coroots.T)) + list(np.rint(roots @ coroots.T))
    lattice = _hermite_basis(np.array(gens))

    return RootSystem(
        rank=r,
        roots=roots,
        positive_roots=positive,
        simple_roots=simple,
        rho=rho,
        fundamental_weights=fundamental,
        weyl_group=tuple(weyl),
        weyl_signs=signs,
        lattice_basis=lattice,
    )


def _admissible(rs: RootSystem, coords) -> bool:
    sol = np.linalg.solve(rs.lattice_basis.T.astype(float), np.asarray(coords, dtype=float))
    return bool(np.allclose(sol, np.rint(sol), atol=1e-9))


def casimir_value(rs: RootSystem, weight) -> float:
    lr = np.asarray(weight, dtype=float) + rs.rho
    return float(lr @ lr - rs.rho @ rs.rho)


def weyl_dimension(rs: RootSystem, weight) -> int:
    lam = np.asarray(weight, dtype=float)
    d = 1.0
    for a in rs.positive_roots:
        d *= ((lam + rs.rho) @ a) / (rs.rho @ a)
    k = round(d)
    if abs(d - k) > 1e-6 or k < 1:
        raise InternalConsistencyError(f"Weyl dimension {d!r} is not a positive integer")
    return int(k)


def is_dominant(rs: RootSystem, weight, tol=1e-9) -> bool:
    lam = np.asarray(weight, dtype=float)
    return all(lam @ a >= -tol for a in rs.simple_roots)


def irrep_data(rs: RootSystem, weight) -> IrrepDatum:
    """Dimension and Casimir eigenvalue of the irreducible representation with highest weight ``weight``."""
    lam = np.asarray(weight, dtype=float)
    if not is_dominant(rs, lam):
        raise ValueError(f"weight {lam} is not dominant")
    if rs.abelian:
        coords = tuple(int(round(x)) for x in lam)
    else:
        cr = 2.0 * rs.simple_roots / np.sum(rs.simple_roots ** 2, axis=1)[:, None]
        raw = cr @ lam
        coords = tuple(int(round(x)) for x in raw)
        if not np.allclose(raw, coords, atol=1e-9):
            raise ValueError(f"weight {lam} is not integral")
    return IrrepDatum(weight=lam, coords=coords, dim=weyl_dimension(rs, lam), casimir=casimir_value(rs, lam))


def dominant_weights(rs: RootSystem, alg: StructuredLieAlgebra, cutoff: float) -> list:
    """All admissible dominant weights with Casimir eigenvalue <= ``cutoff``.

    Sorted by ``(casimir, coords)``; for a torus every lattice point is
    "dominant" and its weight is ``k / sqrt(s)`` for integer ``k``.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    r = rs.rank
    out = []
    if rs.abelian:
        lb = alg.lattice_basis
        bound = int(math.floor(math.sqrt(cutoff) / np.min(np.linalg.norm(lb, axis=1)))) + 1
        for k in itertools.product(range(-bound, bound + 1), repeat=r):
            w = np.asarray(k, dtype=float) @ lb
            c = float(w @ w)
            if c <= cutoff:
                out.append(IrrepDatum(weight=w, coords=tuple(k), dim=1, casimir=c))
    else:
        # c increases along every +omega_i step from a dominant weight: flood fill
        seen = {(0,) * r}
        stack = [(0,) * r]
        while stack:
            m = stack.pop()
            w = np.asarray(m, dtype=float) @ rs.fundamental_weights
            c = casimir_value(rs, w)
            if c > cutoff:
                continue
            if _admissible(rs, m):
                out.append(IrrepDatum(weight=w, coords=m, dim=weyl_dimension(rs, w), casimir=c))
            for i in range(r):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    out.sort(key=lambda d: (round(d.casimir, 9), d.coords))
    return out


def _alternating_sum(rs: RootSystem, mu: np.ndarray, h: np.ndarray) -> complex:
    total = 0j
    for w, sgn in zip(rs.weyl_group, rs.weyl_signs):
        total += sgn * cmath.exp(1j * float((w @ mu) @ h))
    return total


def weyl_denominator(rs: RootSystem, h) -> complex:
    return _alternating_sum(rs, rs.rho, np.asarray(h, dtype=float))


def character_complex(rs: RootSystem, weight, h) -> complex:
    h = np.asarray(h, dtype=float)
    den = weyl_denominator(rs, h)
    if abs(den) <= WEYL_SINGULAR_TOL:
        raise WeylSingularError(
            f"Weyl denominator {abs(den):.3g} at H={h.tolist()} is singular; perturb H"
        )
    return _alternating_sum(rs, np.asarray(weight, dtype=float) + rs.rho, h) / den


def character(rs: RootSystem, weight, h) -> float:
    """Weyl character ``chi_weight(exp H)`` for a regular Cartan element ``H``."""
    val = character_complex(rs, weight, h)
    if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
        raise LieHeatError(
            f"character has imaginary part {val.imag:.3g}; use character_complex for abelian groups"
        )
    return val.real
