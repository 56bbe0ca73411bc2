"""Finite-dimensional Lie algebras over Q by structure constants, their
modules, and Chevalley-Eilenberg cochain complexes with exact cohomology.

Conventions.  A LieAlgebra of dimension n stores c[i][j][k] with
[e_i, e_j] = sum_k c[i][j][k] e_k.  Cochains in degree p live in
Lambda^p(g)* tensor V and are flattened in the lexicographic basis:
index (I, v) -> pos(I) * dim(V) + v, where I runs over strictly increasing
p-tuples in lexicographic order.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .exact import (
    ONE,
    ZERO,
    all_zero,
    farray,
    feye,
    fmat,
    fzeros,
    in_column_space,
    mat_eq,
    nullspace,
    pivot_section,
    rank,
    rref,
    solve,
)


class StructuralError(ValueError):
    """Shape or consistency failure in the input data."""


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    basis_names: tuple
    c: np.ndarray  # rank 3, object dtype, Fractions

    def __post_init__(self):
        if self.c.shape != (self.dim, self.dim, self.dim):
            raise StructuralError(
                f"structure constants have shape {self.c.shape}, expected "
                f"{(self.dim,) * 3}"
            )
        if len(self.basis_names) != self.dim:
            raise StructuralError("basis names do not match the dimension")

    @staticmethod
    def from_constants(c, basis_names=None):
        c = farray(c) if not isinstance(c, np.ndarray) else c
        n = c.shape[0]
        names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(n))
        return LieAlgebra(n, names, c)

    def bracket(self, x, y):
        """Bracket of coefficient vectors."""
        out = fzeros(self.dim)
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                out = out + x[i] * y[j] * self.c[i, j]
        return out

    def bracket_basis(self, i, j):
        return self.c[i, j]

    def is_abelian(self):
        return all_zero(self.c)

    def adjoint(self, i):
        """Matrix of ad(e_i) acting on coefficient vectors."""
        m = fzeros(self.dim, self.dim)
        for j in range(self.dim):
            m[:, j] = self.c[i, j]
        return m


def validate_lie_algebra(L):
    """Every violated antisymmetry or Jacobi instance, with its residual.

    Returns a list of dicts; empty iff L is a Lie algebra.
    """
    report = []
    n = L.dim
    c = L.c
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = c[i, j, k] + c[j, i, k]
                if r != 0:
                    report.append(
                        {"kind": "antisymmetry", "indices": (i, j, k), "residual": r}
                    )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    r = ZERO
                    for m in range(n):
                        r += (
                            c[i, j, m] * c[m, k, l]
                            + c[j, k, m] * c[m, i, l]
                            + c[k, i, m] * c[m, j, l]
                        )
                    if r != 0:
                        report.append(
                            {"kind": "jacobi", "indices": (i, j, k, l), "residual": r}
                        )
    return report


@dataclass(frozen=True, eq=False)
class LieModule:
    algebra: LieAlgebra
    dim: int
    action: np.ndarray  # shape (dim g, dim V, dim V)

    def __post_init__(self):
        if self.action.shape != (self.algebra.dim, self.dim, self.dim):
            raise StructuralError(
                f"action has shape {self.action.shape}, expected "
                f"{(self.algebra.dim, self.dim, self.dim)}"
            )

    @staticmethod
    def from_matrices(L, mats):
        mats = [fmat(m) if not isinstance(m, np.ndarray) else m for m in mats]
        a = np.empty((L.dim, mats[0].shape[0] if mats else 0, mats[0].shape[1] if mats else 0), dtype=object)
        for i, m in enumerate(mats):
            a[i] = m
        return LieModule(L, a.shape[1], a)

    @staticmethod
    def trivial(L, dim):
        return LieModule(L, dim, fzeros(L.dim, dim, dim))

    def rho(self, i):
        return self.action[i]

    def act(self, x, v):
        """x a g-coefficient vector, v a V-vector."""
        out = fzeros(self.dim)
        for i in range(self.algebra.dim):
            if x[i] != 0:
                out = out + x[i] * self.action[i].dot(v)
        return out


def validate_module(V):
    """Violations of rho(e_i)rho(e_j) - rho(e_j)rho(e_i) = rho([e_i, e_j])."""
    report = []
    L = V.algebra
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = V.action[i].dot(V.action[j]) - V.action[j].dot(V.action[i])
            rhs = fzeros(V.dim, V.dim)
            for k in range(L.dim):
                if L.c[i, j, k] != 0:
                    rhs = rhs + L.c[i, j, k] * V.action[k]
            if not mat_eq(lhs, rhs):
                report.append({"kind": "representation", "indices": (i, j)})
    return report


def cochain_basis(n, p):
    """Strictly increasing p-tuples out of range(n), lexicographic."""
    return list(combinations(range(n), p))


def _tuple_index(tuples):
    return {t: i for i, t in enumerate(tuples)}


def _insert_sorted(k, rest):
    """Sort (k,) + rest, all distinct, returning (sign, tuple) or None."""
    if k in rest:
        return None
    pos = sum(1 for r in rest if r < k)
    out = tuple(sorted((k,) + rest))
    return (-1) ** pos, out


@dataclass(eq=False)
class CEComplex:
    """Chevalley-Eilenberg complex of a module, with cached differentials.

    d on a p-cochain w:
      (d w)(x_0..x_p) = sum_i (-1)^i x_i . w(.. x_i^ ..)
                      + sum_{i<j} (-1)^{i+j} w([x_i,x_j], .. x_i^ .. x_j^ ..)
    """

    algebra: LieAlgebra
    module: LieModule
    _cache: dict = field(default_factory=dict)

    def space_dim(self, p):
        n = self.algebra.dim
        if p < 0 or p > n:
            return 0
        return len(cochain_basis(n, p)) * self.module.dim

    def differential(self, p):
        """Matrix of d: C^p -> C^{p+1}."""
        if p in self._cache:
            return self._cache[p]
        n = self.algebra.dim
        dv = self.module.dim
        src = cochain_basis(n, p)
        tgt = cochain_basis(n, p + 1)
        tgt_pos = _tuple_index(tgt)
        mat = fzeros(len(tgt) * dv, len(src) * dv)
        for col_t, I in enumerate(src):
            for v in range(dv):
                col = col_t * dv + v
                # column = d(indicator cochain of (I, v))
                for J in tgt:
                    row_base = tgt_pos[J] * dv
                    # action terms
                    for pos_i, xi in enumerate(J):
                        rest = J[:pos_i] + J[pos_i + 1 :]
                        if rest == I:
                            sgn = (-1) ** pos_i
                            colvec = self.module.action[xi][:, v]
                            for w in range(dv):
                                if colvec[w] != 0:
                                    mat[row_base + w, col] += sgn * colvec[w]
                    # bracket terms
                    for pos_i in range(len(J)):
                        for pos_j in range(pos_i + 1, len(J)):
                            xi, xj = J[pos_i], J[pos_j]
                            rest = tuple(
                                x
                                for t, x in enumerate(J)
                                if t != pos_i and t != pos_j
                            )
                            cij = self.algebra.c[xi, xj]
                            for k in range(n):
                                if cij[k] == 0:
                                    continue
                                ins = _insert_sorted(k, rest)
                                if ins is None:
                                    continue
                                sgn_sort, K = ins
                                if K != I:
                                    continue
                                sgn = (-1) ** (pos_i + pos_j) * sgn_sort
                                mat[row_base + v, col] += sgn * cij[k]
        self._cache[p] = mat
        return mat

    def apply(self, p, vec):
        return self.differential(p).dot(vec)


def ce_cohomology(L, V, p):
    """Basis of H^p(L, V) (cocycle representatives) and the Betti number."""
    if p < 0:
        raise ValueError("degree must be nonnegative")
    bad = validate_module(V)
    if bad:
        raise StructuralError(f"not a module: {bad[:3]}")
    cx = CEComplex(L, V)
    dp = cx.differential(p)
    kernel = nullspace(dp)
    if p == 0:
        image = fzeros(cx.space_dim(0), 0)
    else:
        image = cx.differential(p - 1)
    rk_im = rank(image)
    betti = kernel.shape[1] - rk_im
    # representatives: kernel columns that extend a basis of the image
    if kernel.shape[1] == 0:
        return [], 0
    aug = fzeros(kernel.shape[0], image.shape[1] + kernel.shape[1])
    aug[:, : image.shape[1]] = image
    aug[:, image.shape[1] :] = kernel
    _, pivots = rref(aug)
    reps = [
        kernel[:, j - image.shape[1]]
        for j in pivots
        if j >= image.shape[1]
    ]
    assert len(reps) == betti
    return reps, betti


def class_is_zero(cx, p, cocycle):
    """Whether a p-cocycle is a coboundary, by exact rank comparison."""
    if all_zero(cocycle):
        return True
    return in_column_space(cx.differential(p - 1), cocycle)


def classes_equal(cx, p, a, b):
    return class_is_zero(cx, p, a - b)


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """0 -> V -i-> I -pi-> Q -> 0 of modules over one algebra."""

    V: LieModule
    I: LieModule
    Q: LieModule
    i: np.ndarray  # dim I x dim V
    pi: np.ndarray  # dim Q x dim I


class ExactnessError(ValueError):
    pass


class CocycleError(ValueError):
    pass


def validate_ses(ses):
    """Exactness and equivariance of both maps; raises on failure."""
    V, I, Q = ses.V, ses.I, ses.Q
    if not (V.algebra is I.algebra is Q.algebra):
        raise StructuralError("the three modules must share one algebra")
    if ses.i.shape != (I.dim, V.dim) or ses.pi.shape != (Q.dim, I.dim):
        raise StructuralError("map shapes do not match module dimensions")
    if rank(ses.i) != V.dim:
        raise ExactnessError("V -> I is not injective")
    if rank(ses.pi) != Q.dim:
        raise ExactnessError("I -> Q is not surjective")
    if not all_zero(ses.pi.dot(ses.i)):
        raise ExactnessError("the composite V -> I -> Q is nonzero")
    if V.dim + Q.dim != I.dim:
        raise ExactnessError("dimension count fails exactness in the middle")
    L = V.algebra
    for s in range(L.dim):
        if not mat_eq(ses.i.dot(V.action[s]), I.action[s].dot(ses.i)):
            raise ExactnessError(f"V -> I is not equivariant at basis {s}")
        if not mat_eq(ses.pi.dot(I.action[s]), Q.action[s].dot(ses.pi)):
            raise ExactnessError(f"I -> Q is not equivariant at basis {s}")


def connecting_map(ses, alpha, section=None):
    """Connect a Q-valued 2-cocycle to a V-valued 3-cocycle.

    Lifts alpha through I -> Q with a linear section (column-pivot echelon
    by default), applies d, and rewrites the result in V-coordinates.  The
    output class does not depend on the chosen section.
    """
    validate_ses(ses)
    L = ses.V.algebra
    cxQ = CEComplex(L, ses.Q)
    if not all_zero(cxQ.differential(2).dot(alpha)):
        raise CocycleError("alpha is not a 2-cocycle")
    if section is None:
        section = pivot_section(ses.pi)
    else:
        if not mat_eq(ses.pi.dot(section), feye(ses.Q.dim)):
            raise ValueError("supplied section is not a right inverse of pi")
    # lift alpha slotwise: C^2(Q) and C^2(I) share the Lambda^2 index
    pairsQ = cochain_basis(L.dim, 2)
    lifted = fzeros(len(pairsQ) * ses.I.dim)
    for t in range(len(pairsQ)):
        q = alpha[t * ses.Q.dim : (t + 1) * ses.Q.dim]
        lifted[t * ses.I.dim : (t + 1) * ses.I.dim] = section.dot(q)
    cxI = CEComplex(L, ses.I)
    d_lift = cxI.differential(2).dot(lifted)
    triples = cochain_basis(L.dim, 3)
    out = fzeros(len(triples) * ses.V.dim)
    for t in range(len(triples)):
        w = d_lift[t * ses.I.dim : (t + 1) * ses.I.dim]
        v = solve(ses.i, w)
        if v is None:
            raise ExactnessError(
                "lifted differential left the kernel of pi; sequence data is inconsistent"
            )
        out[t * ses.V.dim : (t + 1) * ses.V.dim] = v
    cxV = CEComplex(L, ses.V)
    assert all_zero(cxV.differential(3).dot(out))
    return out
