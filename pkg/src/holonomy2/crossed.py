"""Crossed modules of Lie algebras and their classification data.

A crossed module is mu: h -> g with g acting on h by derivations such that

  (a)  mu(x . h) = [x, mu(h)]          (equivariance)
  (b)  mu(h) . h' = [h, h']            (Peiffer)

It is equivalent to a strict Lie 2-algebra (arrows = h semidirect g with the
bracket written through the action alone), and, up to equivalence, is
classified by the triplet (coker mu, ker mu, class of a 3-cocycle gamma).

Deterministic choices used throughout: nullspace bases come from the rref,
cokernel representatives are the non-pivot standard basis vectors of g with
respect to im(mu), and sections of surjections are supported on pivot
columns.  Class-level outputs are section-independent; element-level outputs
(phi2, gamma as a cochain) depend on these representatives.
"""

from dataclasses import dataclass

import numpy as np

from .algebra_core import (
    CEComplex,
    LieAlgebra,
    LieModule,
    ShortExactSequence,
    StructuralError,
    cochain_basis,
    validate_lie_algebra,
    validate_module,
    validate_ses,
)
from .exact import (
    ZERO,
    all_zero,
    feye,
    fzeros,
    in_column_space,
    mat_eq,
    nullspace,
    pivot_section,
    rank,
    rref,
    solve,
)


@dataclass(frozen=True, eq=False)
class CrossedModule:
    h: LieAlgebra
    g: LieAlgebra
    mu: np.ndarray  # dim g x dim h
    action: np.ndarray  # shape (dim g, dim h, dim h)

    def __post_init__(self):
        if self.mu.shape != (self.g.dim, self.h.dim):
            raise StructuralError(
                f"mu has shape {self.mu.shape}, expected {(self.g.dim, self.h.dim)}"
            )
        if self.action.shape != (self.g.dim, self.h.dim, self.h.dim):
            raise StructuralError("action tensor has the wrong shape")

    def act(self, x, hv):
        out = fzeros(self.h.dim)
        for i in range(self.g.dim):
            if x[i] != 0:
                out = out + x[i] * self.action[i].dot(hv)
        return out

    def act_matrix(self, x):
        m = fzeros(self.h.dim, self.h.dim)
        for i in range(self.g.dim):
            if x[i] != 0:
                m = m + x[i] * self.action[i]
        return m


@dataclass(frozen=True, eq=False)
class StrictLie2:
    g_minus1: LieAlgebra
    g_0: LieAlgebra
    s: np.ndarray
    t: np.ndarray
    i: np.ndarray


@dataclass(frozen=True, eq=False)
class Triplet:
    gbar: LieAlgebra
    V: LieModule  # over gbar
    gamma: np.ndarray  # flattened 3-cochain of gbar with values in V


@dataclass(frozen=True, eq=False)
class ElementaryEquivalence:
    phi: np.ndarray  # h -> h'
    psi: np.ndarray  # g -> g'


def validate_crossed_module(X):
    """All violated instances of the algebra axioms, the representation
    property, the derivation property, equivariance (a) and Peiffer (b)."""
    report = []
    for v in validate_lie_algebra(X.h):
        report.append({"kind": "h-" + v["kind"], "indices": v["indices"]})
    for v in validate_lie_algebra(X.g):
        report.append({"kind": "g-" + v["kind"], "indices": v["indices"]})
    for v in validate_module(LieModule(X.g, X.h.dim, X.action)):
        report.append({"kind": "action-" + v["kind"], "indices": v["indices"]})
    nh, ng = X.h.dim, X.g.dim
    # derivation property on basis triples
    for x in range(ng):
        for a in range(nh):
            for b in range(nh):
                lhs = X.action[x].dot(X.h.c[a, b])
                rhs = X.h.bracket(X.action[x][:, a], _unit(nh, b)) + X.h.bracket(
                    _unit(nh, a), X.action[x][:, b]
                )
                if not all(l == r for l, r in zip(lhs, rhs)):
                    report.append({"kind": "derivation", "indices": (x, a, b)})
    # (a) equivariance
    for x in range(ng):
        for a in range(nh):
            lhs = X.mu.dot(X.action[x][:, a])
            rhs = X.g.bracket(_unit(ng, x), X.mu[:, a])
            if not all(l == r for l, r in zip(lhs, rhs)):
                report.append({"kind": "equivariance-a", "indices": (x, a)})
    # (b) Peiffer
    for a in range(nh):
        acting = X.act_matrix(X.mu[:, a])
        for b in range(nh):
            lhs = acting[:, b]
            rhs = X.h.c[a, b]
            if not all(l == r for l, r in zip(lhs, rhs)):
                report.append({"kind": "peiffer-b", "indices": (a, b)})
    return report


def _unit(n, i):
    v = fzeros(n)
    v[i] = 1
    return v


def _require_valid(X):
    bad = validate_crossed_module(X)
    if bad:
        raise ValueError(f"not a crossed module, first violations: {bad[:3]}")


def to_strict_lie2(X, check=True):
    """Arrows h (+) g, s(h,g) = g, t(h,g) = mu(h) + g, i(g) = (0, g).

    The bracket on the arrow space is written with the action alone,

      [(h1,g1),(h2,g2)] = (mu(h1).h2 + g1.h2 - g2.h1, [g1,g2]),

    which by Peiffer agrees with the semidirect product of g with the Lie
    algebra h.  Basis order: h coordinates first, then g.
    """
    if check:
        _require_valid(X)
    nh, ng = X.h.dim, X.g.dim
    n = nh + ng
    c = fzeros(n, n, n)

    def fill(i, hv, gv):
        c[i[0], i[1], :nh] = hv
        c[i[0], i[1], nh:] = gv

    for a in range(n):
        for b in range(n):
            h1 = _unit(nh, a) if a < nh else fzeros(nh)
            g1 = _unit(ng, a - nh) if a >= nh else fzeros(ng)
            h2 = _unit(nh, b) if b < nh else fzeros(nh)
            g2 = _unit(ng, b - nh) if b >= nh else fzeros(ng)
            hv = (
                X.act(X.mu.dot(h1), h2)
                + X.act(g1, h2)
                - X.act(g2, h1)
            )
            gv = X.g.bracket(g1, g2)
            fill((a, b), hv, gv)
    names = tuple(f"h.{nm}" for nm in X.h.basis_names) + tuple(
        f"g.{nm}" for nm in X.g.basis_names
    )
    arrows = LieAlgebra(n, names, c)
    s = fzeros(ng, n)
    s[:, nh:] = feye(ng)
    t = fzeros(ng, n)
    t[:, :nh] = X.mu
    t[:, nh:] = feye(ng)
    i = fzeros(n, ng)
    i[nh:, :] = feye(ng)
    return StrictLie2(arrows, X.g, s, t, i)


def validate_strict_lie2(S):
    """Morphism, section and commuting-kernel conditions for a Lie 2-algebra."""
    report = []
    for v in validate_lie_algebra(S.g_minus1):
        report.append({"kind": "arrows-" + v["kind"], "indices": v["indices"]})
    for v in validate_lie_algebra(S.g_0):
        report.append({"kind": "objects-" + v["kind"], "indices": v["indices"]})
    n = S.g_minus1.dim
    for name, m in (("s", S.s), ("t", S.t)):
        for a in range(n):
            for b in range(n):
                lhs = m.dot(S.g_minus1.c[a, b])
                rhs = S.g_0.bracket(m[:, a], m[:, b])
                if not all(l == r for l, r in zip(lhs, rhs)):
                    report.append({"kind": f"{name}-not-morphism", "indices": (a, b)})
    n0 = S.g_0.dim
    for a in range(n0):
        for b in range(n0):
            lhs = S.i.dot(S.g_0.c[a, b])
            rhs = S.g_minus1.bracket(S.i[:, a], S.i[:, b])
            if not all(l == r for l, r in zip(lhs, rhs)):
                report.append({"kind": "i-not-morphism", "indices": (a, b)})
    if not mat_eq(S.s.dot(S.i), feye(n0)):
        report.append({"kind": "s-i-not-identity"})
    if not mat_eq(S.t.dot(S.i), feye(n0)):
        report.append({"kind": "t-i-not-identity"})
    ks = nullspace(S.s)
    kt = nullspace(S.t)
    for a in range(ks.shape[1]):
        for b in range(kt.shape[1]):
            if not all_zero(S.g_minus1.bracket(ks[:, a], kt[:, b])):
                report.append({"kind": "kernels-do-not-commute", "indices": (a, b)})
    return report


def from_strict_lie2(S, check=True):
    """Recover the crossed module: h = ker(s), mu = t restricted, g.h = [i(g), h]."""
    if check:
        bad = validate_strict_lie2(S)
        if bad:
            raise ValueError(f"not a strict Lie 2-algebra: {bad[:3]}")
    if rank(S.s) != S.g_0.dim:
        raise ValueError("source map is not surjective in the chosen bases")
    K = nullspace(S.s)  # columns: canonical basis of ker s
    nh = K.shape[1]
    ng = S.g_0.dim
    ch = fzeros(nh, nh, nh)
    for a in range(nh):
        for b in range(nh):
            w = S.g_minus1.bracket(K[:, a], K[:, b])
            coeffs = solve(K, w)
            if coeffs is None:
                raise ValueError("kernel of s is not a subalgebra; data corrupt")
            ch[a, b] = coeffs
    h = LieAlgebra(nh, tuple(f"k{i}" for i in range(nh)), ch)
    mu = S.t.dot(K)
    action = fzeros(ng, nh, nh)
    for x in range(ng):
        for a in range(nh):
            w = S.g_minus1.bracket(S.i[:, x], K[:, a])
            coeffs = solve(K, w)
            if coeffs is None:
                raise ValueError("action does not preserve ker s; data corrupt")
            action[x][:, a] = coeffs
    return CrossedModule(h, S.g_0, mu, action)


def _coker_data(X):
    """Cokernel of mu: non-pivot coordinates, projection, canonical section.

    Returns (indices, proj, sigma) with proj: g -> gbar, sigma: gbar -> g,
    proj . sigma = id and proj . mu = 0.
    """
    ng = X.g.dim
    r, pivots = rref(X.mu.T)  # row space of mu^T = im mu, pivot coordinates
    im_basis = fzeros(ng, len(pivots))
    for k in range(len(pivots)):
        im_basis[:, k] = r[k, :]  # echelon basis of im(mu)
    nonpivot = [j for j in range(ng) if j not in pivots]
    W = fzeros(ng, ng)
    W[:, : len(pivots)] = im_basis
    for k, j in enumerate(nonpivot):
        W[j, len(pivots) + k] = 1
    Winv = solve(W, feye(ng))
    proj = Winv[len(pivots) :, :]
    sigma = fzeros(ng, len(nonpivot))
    for k, j in enumerate(nonpivot):
        sigma[j, k] = 1
    return nonpivot, proj, sigma


def cokernel_algebra(X):
    """gbar = g / im(mu) on the canonical representatives."""
    nonpivot, proj, sigma = _coker_data(X)
    nb = len(nonpivot)
    c = fzeros(nb, nb, nb)
    for a in range(nb):
        for b in range(nb):
            c[a, b] = proj.dot(X.g.bracket(sigma[:, a], sigma[:, b]))
    names = tuple(X.g.basis_names[j] + "~" for j in nonpivot)
    return LieAlgebra(nb, names, c), proj, sigma


def outer_action(X, section=None, check=True):
    """Derivations of h indexed by a basis of coker(mu), plus a genuineness flag.

    The flag is True iff the chosen section turns coker(mu) -> der(h) into an
    honest representation; two sections differ by inner derivations.
    """
    if check:
        _require_valid(X)
    gbar, proj, sigma = cokernel_algebra(X)
    if section is not None:
        if section.shape != sigma.shape:
            raise ValueError("section has the wrong shape")
        if not mat_eq(proj.dot(section), feye(gbar.dim)):
            raise ValueError("supplied map is not a section of the projection")
        sigma = section
    mats = [X.act_matrix(sigma[:, a]) for a in range(gbar.dim)]
    genuine = True
    for a in range(gbar.dim):
        for b in range(gbar.dim):
            lhs = mats[a].dot(mats[b]) - mats[b].dot(mats[a])
            rhs = fzeros(X.h.dim, X.h.dim)
            br = gbar.c[a, b]
            for k in range(gbar.dim):
                if br[k] != 0:
                    rhs = rhs + br[k] * mats[k]
            if not mat_eq(lhs, rhs):
                genuine = False
    return mats, genuine


def kernel_module(X, gbar, sigma):
    """ker(mu) as a module over gbar (it is central, so this is well defined)."""
    N = nullspace(X.mu)
    nv = N.shape[1]
    action = fzeros(gbar.dim, nv, nv)
    for a in range(gbar.dim):
        m = X.act_matrix(sigma[:, a])
        img = m.dot(N)
        coeffs = solve(N, img)
        if coeffs is None:
            raise ValueError("action does not preserve ker mu; invalid input")
        action[a] = coeffs
    return LieModule(gbar, nv, action), N


def skeletal_model(X, sigma=None, check=True):
    """Triplet (coker mu, ker mu, gamma) and the correction phi2.

    phi2(x, y) solves mu(phi2(x, y)) = sigma[x, y] - [sigma x, sigma y];
    gamma is the formal Chevalley-Eilenberg differential of phi2, which
    lands in ker(mu) and is closed.  The class of gamma does not depend on
    the section; phi2 itself does.
    """
    if check:
        _require_valid(X)
    gbar, proj, sigma_default = _skeletal_quotient(X)
    if sigma is None:
        sigma = sigma_default
    else:
        if not mat_eq(proj.dot(sigma), feye(gbar.dim)):
            raise ValueError("supplied sigma is not a section")
    V, N = kernel_module(X, gbar, sigma)
    nb = gbar.dim
    nh = X.h.dim
    # right inverse of mu on its image, supported on pivot columns of mu
    pairs = cochain_basis(nb, 2)
    phi2 = fzeros(nb, nb, nh)
    for (a, b) in pairs:
        defect = X.g.bracket(sigma[:, a], sigma[:, b])
        target = sigma.dot(gbar.c[a, b]) - defect
        pre = solve(X.mu, target)
        if pre is None:
            raise ValueError(
                "section defect left im(mu); input violates the crossed module axioms"
            )
        phi2[a, b] = pre
        phi2[b, a] = -pre
    # formal CE differential of phi2 with values in h, action through sigma
    mats = [X.act_matrix(sigma[:, a]) for a in range(nb)]
    triples = cochain_basis(nb, 3)
    gamma_h = fzeros(len(triples), nh)
    for t, (a, b, c) in enumerate(triples):
        val = (
            mats[a].dot(phi2[b, c])
            - mats[b].dot(phi2[a, c])
            + mats[c].dot(phi2[a, b])
        )
        val = val - _phi2_of(phi2, gbar.c[a, b], c, nb)
        val = val + _phi2_of(phi2, gbar.c[a, c], b, nb)
        val = val - _phi2_of(phi2, gbar.c[b, c], a, nb)
        gamma_h[t] = val
    gamma = fzeros(len(triples) * V.dim)
    for t in range(len(triples)):
        coeffs = solve(N, gamma_h[t])
        if coeffs is None:
            raise ValueError("gamma left ker(mu); input violates the axioms")
        gamma[t * V.dim : (t + 1) * V.dim] = coeffs
    cx = CEComplex(gbar, V)
    if not all_zero(cx.differential(3).dot(gamma)):
        raise ValueError("gamma is not closed; input violates the axioms")
    return Triplet(gbar, V, gamma), phi2


def _skeletal_quotient(X):
    gbar, proj, sigma = cokernel_algebra(X)
    return gbar, proj, sigma


def _phi2_of(phi2, xvec, b, nb):
    """phi2(sum_k xvec_k e_k, e_b)."""
    out = fzeros(phi2.shape[2])
    for k in range(nb):
        if xvec[k] != 0:
            out = out + xvec[k] * phi2[k, b]
    return out


def extract_triplet(X, sigma=None):
    return skeletal_model(X, sigma=sigma)[0]


def splice_crossed_module(ses, alpha, check=True):
    """Crossed module with abelian h realizing the class of (ses, alpha).

    h is the middle module I with the zero bracket; g is the extension of
    gbar by Q attached to alpha, with bracket

      [(q1, x1), (q2, x2)] = (x1.q2 - x2.q1 - alpha(x1, x2), [x1, x2]);

    mu(w) = (pi(w), 0) and (q, x) acts on I through x.  The sign on alpha is
    the one for which the skeletal class of the output equals the connecting
    map of (ses, alpha).
    """
    if check:
        validate_ses(ses)
    gbar = ses.V.algebra
    nq, nb = ses.Q.dim, gbar.dim
    cxQ = CEComplex(gbar, ses.Q)
    alpha_t = _cochain2_tensor(alpha, nb, nq)
    if not all_zero(cxQ.differential(2).dot(alpha)):
        from .algebra_core import CocycleError

        raise CocycleError("alpha is not a 2-cocycle")
    ng = nq + nb
    c = fzeros(ng, ng, ng)
    for a in range(ng):
        for b in range(ng):
            q1 = _unit(nq, a) if a < nq else fzeros(nq)
            x1 = _unit(nb, a - nq) if a >= nq else fzeros(nb)
            q2 = _unit(nq, b) if b < nq else fzeros(nq)
            x2 = _unit(nb, b - nq) if b >= nq else fzeros(nb)
            qpart = ses.Q.act(x1, q2) - ses.Q.act(x2, q1) - _eval2(alpha_t, x1, x2, nq)
            xpart = gbar.bracket(x1, x2)
            c[a, b, :nq] = qpart
            c[a, b, nq:] = xpart
    names = tuple(f"q{i}" for i in range(nq)) + tuple(
        nm + "^" for nm in gbar.basis_names
    )
    g = LieAlgebra(ng, names, c)
    h = LieAlgebra(
        ses.I.dim, tuple(f"i{i}" for i in range(ses.I.dim)), fzeros(ses.I.dim, ses.I.dim, ses.I.dim)
    )
    mu = fzeros(ng, ses.I.dim)
    mu[:nq, :] = ses.pi
    action = fzeros(ng, ses.I.dim, ses.I.dim)
    for a in range(nb):
        action[nq + a] = ses.I.action[a]
    return CrossedModule(h, g, mu, action)


def _cochain2_tensor(alpha, n, dv):
    pairs = cochain_basis(n, 2)
    t = fzeros(n, n, dv)
    for p, (a, b) in enumerate(pairs):
        t[a, b] = alpha[p * dv : (p + 1) * dv]
        t[b, a] = -t[a, b]
    return t


def _eval2(alpha_t, x, y, dv):
    n = alpha_t.shape[0]
    out = fzeros(dv)
    for a in range(n):
        if x[a] == 0:
            continue
        for b in range(n):
            if y[b] != 0:
                out = out + x[a] * y[b] * alpha_t[a, b]
    return out


def check_elementary_equivalence(X, Xp, E):
    """Verify that (phi, psi) is an elementary equivalence X -> X'.

    Kernels and cokernels are compared in their canonical coordinates (rref
    nullspace bases and non-pivot representatives), where the induced maps
    must be identities.  Returns (ok, list of failures).
    """
    failures = []
    nh, ng = X.h.dim, X.g.dim
    if E.phi.shape != (Xp.h.dim, nh) or E.psi.shape != (Xp.g.dim, ng):
        return False, [{"kind": "shape-mismatch"}]
    for a in range(nh):
        for b in range(nh):
            lhs = E.phi.dot(X.h.c[a, b])
            rhs = Xp.h.bracket(E.phi[:, a], E.phi[:, b])
            if not all(l == r for l, r in zip(lhs, rhs)):
                failures.append({"kind": "phi-not-morphism", "indices": (a, b)})
    for a in range(ng):
        for b in range(ng):
            lhs = E.psi.dot(X.g.c[a, b])
            rhs = Xp.g.bracket(E.psi[:, a], E.psi[:, b])
            if not all(l == r for l, r in zip(lhs, rhs)):
                failures.append({"kind": "psi-not-morphism", "indices": (a, b)})
    if not mat_eq(Xp.mu.dot(E.phi), E.psi.dot(X.mu)):
        failures.append({"kind": "square-mu"})
    for x in range(ng):
        lhs = E.phi.dot(X.action[x])
        rhs = Xp.act_matrix(E.psi[:, x]).dot(E.phi)
        if not mat_eq(lhs, rhs):
            failures.append({"kind": "action-compatibility", "indices": (x,)})
    # kernels: phi must carry the canonical basis of ker mu to that of ker mu'
    N, Np = nullspace(X.mu), nullspace(Xp.mu)
    if N.shape[1] != Np.shape[1]:
        failures.append({"kind": "kernel-dimension"})
    else:
        img = E.phi.dot(N)
        coeffs = solve(Np, img)
        if coeffs is None or not mat_eq(coeffs, feye(N.shape[1])):
            failures.append({"kind": "kernel-identity"})
    # cokernels: psi must induce the identity on canonical representatives
    _, projp, _ = _coker_data(Xp)
    _, proj, sigma = _coker_data(X)
    if proj.shape[0] != projp.shape[0]:
        failures.append({"kind": "cokernel-dimension"})
    else:
        induced = projp.dot(E.psi.dot(sigma))
        if not mat_eq(induced, feye(proj.shape[0])):
            failures.append({"kind": "cokernel-identity"})
    return not failures, failures
