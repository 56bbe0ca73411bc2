"""Two-term L-infinity algebras L_0 (+) L_{-1}.

Data: l1: L_{-1} -> L_0 (degree +1), an antisymmetric bracket l2 on L_0, an
action-type component l2: L_0 x L_{-1} -> L_{-1} (with l2(h, x) = -l2(x, h)
understood), and a totally antisymmetric l3: L_0^3 -> L_{-1}.  All other
components vanish for degree reasons.

The complete identity list in the two-term case, checked by validate_linf:

  (1) l2_00 antisymmetric, l3 totally antisymmetric          (structural)
  (2) l1(l2(x, h)) = l2(x, l1 h)                             (chain map)
  (3) l2(l1 h, h') = -l2(l1 h', h)
  (4) l1(l3(x, y, z)) = [x,[y,z]] + [y,[z,x]] + [z,[x,y]]    (Jacobi defect)
  (5) l3(x, y, l1 h) = x.(y.h) - y.(x.h) - [x,y].h           (mixed defect)
  (6) the Jacobiator coherence: the formal Chevalley-Eilenberg differential
      of l3 (with L_{-1} treated as if it were an L_0-module through l2)
      vanishes on all basis quadruples.

A two-term algebra with l1 = 0 is called skeletal: L_0 is then a Lie
algebra, L_{-1} an honest module, and l3 a 3-cocycle.  With l3 = 0 the data
is a differential graded Lie algebra, the shape a crossed module induces.
"""

from dataclasses import dataclass

import numpy as np

from .algebra_core import LieAlgebra, LieModule, StructuralError
from .crossed import CrossedModule, Triplet
from .exact import all_zero, fzeros, mat_eq


@dataclass(frozen=True, eq=False)
class TwoTermLinf:
    dim0: int
    dimm1: int
    l1: np.ndarray  # dim0 x dimm1
    l2_00: np.ndarray  # (dim0, dim0, dim0)
    l2_0m1: np.ndarray  # (dim0, dimm1, dimm1): matrix of l2(e_x, .) per x
    l3: np.ndarray  # (dim0, dim0, dim0, dimm1)

    def __post_init__(self):
        if self.l1.shape != (self.dim0, self.dimm1):
            raise StructuralError("l1 has the wrong shape")
        if self.l2_00.shape != (self.dim0,) * 3:
            raise StructuralError("l2 on degree 0 has the wrong shape")
        if self.l2_0m1.shape != (self.dim0, self.dimm1, self.dimm1):
            raise StructuralError("mixed l2 has the wrong shape")
        if self.l3.shape != (self.dim0, self.dim0, self.dim0, self.dimm1):
            raise StructuralError("l3 has the wrong shape")

    def bracket00(self, x, y):
        out = fzeros(self.dim0)
        for i in range(self.dim0):
            if x[i] == 0:
                continue
            for j in range(self.dim0):
                if y[j] != 0:
                    out = out + x[i] * y[j] * self.l2_00[i, j]
        return out

    def act(self, x, h):
        out = fzeros(self.dimm1)
        for i in range(self.dim0):
            if x[i] != 0:
                out = out + x[i] * self.l2_0m1[i].dot(h)
        return out

    def l3_eval(self, x, y, z):
        out = fzeros(self.dimm1)
        for i in range(self.dim0):
            if x[i] == 0:
                continue
            for j in range(self.dim0):
                if y[j] == 0:
                    continue
                for k in range(self.dim0):
                    if z[k] != 0:
                        out = out + x[i] * y[j] * z[k] * self.l3[i, j, k]
        return out

    def degree0_algebra(self):
        """L_0 with l2_00 as bracket.  Only a Lie algebra when l1 . l3 = 0."""
        return LieAlgebra(self.dim0, tuple(f"x{i}" for i in range(self.dim0)), self.l2_00)


def _unit(n, i):
    v = fzeros(n)
    v[i] = 1
    return v


def validate_linf(T):
    """Evaluate every identity of the two-term list on all basis tuples."""
    report = []
    n0, n1 = T.dim0, T.dimm1
    for i in range(n0):
        for j in range(n0):
            if not all(a == -b for a, b in zip(T.l2_00[i, j], T.l2_00[j, i])):
                report.append({"kind": "l2-antisymmetry", "indices": (i, j)})
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                v = T.l3[i, j, k]
                if not (
                    all(a == -b for a, b in zip(v, T.l3[j, i, k]))
                    and all(a == -b for a, b in zip(v, T.l3[i, k, j]))
                ):
                    report.append({"kind": "l3-antisymmetry", "indices": (i, j, k)})
    # (2) chain map
    for x in range(n0):
        for h in range(n1):
            lhs = T.l1.dot(T.l2_0m1[x][:, h])
            rhs = T.bracket00(_unit(n0, x), T.l1[:, h])
            if not all(a == b for a, b in zip(lhs, rhs)):
                report.append({"kind": "chain-map", "indices": (x, h)})
    # (3) antisymmetric Peiffer-type relation
    for h in range(n1):
        for hp in range(n1):
            lhs = T.act(T.l1[:, h], _unit(n1, hp))
            rhs = -T.act(T.l1[:, hp], _unit(n1, h))
            if not all(a == b for a, b in zip(lhs, rhs)):
                report.append({"kind": "l1-l2-antisymmetry", "indices": (h, hp)})
    # (4) Jacobi defect
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                x, y, z = _unit(n0, i), _unit(n0, j), _unit(n0, k)
                cyc = (
                    T.bracket00(x, T.bracket00(y, z))
                    + T.bracket00(y, T.bracket00(z, x))
                    + T.bracket00(z, T.bracket00(x, y))
                )
                lhs = T.l1.dot(T.l3[i, j, k])
                if not all(a == b for a, b in zip(lhs, cyc)):
                    report.append({"kind": "jacobi-defect", "indices": (i, j, k)})
    # (5) mixed Jacobi defect
    for i in range(n0):
        for j in range(n0):
            for h in range(n1):
                x, y = _unit(n0, i), _unit(n0, j)
                hv = _unit(n1, h)
                lhs = T.l3_eval(x, y, T.l1[:, h])
                rhs = (
                    T.act(x, T.act(y, hv))
                    - T.act(y, T.act(x, hv))
                    - T.act(T.bracket00(x, y), hv)
                )
                if not all(a == b for a, b in zip(lhs, rhs)):
                    report.append({"kind": "mixed-jacobi-defect", "indices": (i, j, h)})
    # (6) Jacobiator coherence: formal d_CE of l3 vanishes
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                for l in range(n0):
                    if not all_zero(_formal_d_l3(T, i, j, k, l)):
                        report.append(
                            {"kind": "jacobiator", "indices": (i, j, k, l)}
                        )
    return report


def _formal_d_l3(T, i, j, k, l):
    n0 = T.dim0
    x = [_unit(n0, t) for t in (i, j, k, l)]
    out = (
        T.act(x[0], T.l3[j, k, l])
        - T.act(x[1], T.l3[i, k, l])
        + T.act(x[2], T.l3[i, j, l])
        - T.act(x[3], T.l3[i, j, k])
    )
    out = out - T.l3_eval(T.bracket00(x[0], x[1]), x[2], x[3])
    out = out + T.l3_eval(T.bracket00(x[0], x[2]), x[1], x[3])
    out = out - T.l3_eval(T.bracket00(x[0], x[3]), x[1], x[2])
    out = out - T.l3_eval(T.bracket00(x[1], x[2]), x[0], x[3])
    out = out + T.l3_eval(T.bracket00(x[1], x[3]), x[0], x[2])
    out = out - T.l3_eval(T.bracket00(x[2], x[3]), x[0], x[1])
    return out


def from_crossed(X, check=True):
    """The differential graded Lie algebra of a crossed module: l1 = mu,
    l2 from the bracket of g and the action, l3 = 0."""
    if check:
        from .crossed import validate_crossed_module

        bad = validate_crossed_module(X)
        if bad:
            raise ValueError(f"not a crossed module: {bad[:3]}")
    return TwoTermLinf(
        X.g.dim,
        X.h.dim,
        X.mu,
        X.g.c,
        X.action,
        fzeros(X.g.dim, X.g.dim, X.g.dim, X.h.dim),
    )


def from_triplet(tr):
    """Skeletal model of a triplet: l1 = 0, l2 from gbar and its module,
    l3 = gamma."""
    nb, nv = tr.gbar.dim, tr.V.dim
    from .algebra_core import cochain_basis

    l3 = fzeros(nb, nb, nb, nv)
    triples = cochain_basis(nb, 3)
    for t, (a, b, c) in enumerate(triples):
        val = tr.gamma[t * nv : (t + 1) * nv]
        for (p, q, r, sgn) in _odd_even_perms(a, b, c):
            l3[p, q, r] = sgn * val
    return TwoTermLinf(nb, nv, fzeros(nb, nv), tr.gbar.c, tr.V.action, l3)


def _odd_even_perms(a, b, c):
    return [
        (a, b, c, 1),
        (b, c, a, 1),
        (c, a, b, 1),
        (b, a, c, -1),
        (a, c, b, -1),
        (c, b, a, -1),
    ]


def is_skeletal(T):
    return all_zero(T.l1)


def linf_from_algebra(L):
    """A Lie algebra viewed as a two-term structure with L_{-1} = 0."""
    return TwoTermLinf(
        L.dim, 0, fzeros(L.dim, 0), L.c, fzeros(L.dim, 0, 0), fzeros(L.dim, L.dim, L.dim, 0)
    )
