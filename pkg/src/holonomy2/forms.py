"""Differential forms with polynomial coefficients on a coordinate chart,
valued in a graded component of a two-term L-infinity algebra.

A term is (monomial exponents, strictly increasing index tuple, value basis
index) -> rational coefficient.  All exterior calculus here is exact, so the
Maurer-Cartan check is a polynomial identity, not a numerical one.

The two curvature forms of a degree-1 pair (A, B):

  fake_curvature  = dA + (1/2)[A, A] + l1(B)        (a 2-form in L_0)
  three_curvature = dB + [A, B] + c * l3(A, A, A)   (a 3-form in L_{-1})

The pair is Maurer-Cartan when both vanish identically.  The prefactor c on
the trilinear term defaults to 1; pass l3_prefactor=Fraction(1, 6) for the
normalization that divides by 3!.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import ZERO, fr, fzeros
from .linf import TwoTermLinf

DEG0 = 0
DEGM1 = -1


def _sort_indices(idx):
    """Sort a wedge index tuple; None if a factor repeats."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    lst = list(idx)
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuple(lst)


@dataclass(frozen=True, eq=False)
class PolyForm:
    chart_dim: int
    target: TwoTermLinf
    component: int  # DEG0 or DEGM1
    terms: dict = field(default_factory=dict)  # (exps, idx, vi) -> Fraction

    def __post_init__(self):
        for (exps, idx, vi) in self.terms:
            if len(exps) != self.chart_dim:
                raise ValueError("monomial exponent tuple has the wrong length")
            if any(i >= self.chart_dim for i in idx):
                raise ValueError("form index outside the chart")
            if list(idx) != sorted(set(idx)):
                raise ValueError("index tuples must be strictly increasing")
            if vi >= self.value_dim():
                raise ValueError("value index outside the target component")

    def value_dim(self):
        return self.target.dim0 if self.component == DEG0 else self.target.dimm1

    def form_degrees(self):
        return sorted({len(idx) for (_, idx, _) in self.terms})

    def total_degrees(self):
        return sorted({len(idx) + self.component for (_, idx, _) in self.terms})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, PolyForm)
            and self.chart_dim == other.chart_dim
            and self.component == other.component
            and self.terms == other.terms
        )

    def __add__(self, other):
        assert self.chart_dim == other.chart_dim and self.component == other.component
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return PolyForm(self.chart_dim, self.target, self.component, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, a):
        a = fr(a)
        if a == 0:
            return PolyForm(self.chart_dim, self.target, self.component, {})
        return PolyForm(
            self.chart_dim,
            self.target,
            self.component,
            {k: a * v for k, v in self.terms.items()},
        )

    def evaluate(self, point, *tangents):
        """Contract every term with the given tangent vectors at a point.

        Requires all terms to have form degree len(tangents).  Returns a
        float vector over the value component.
        """
        k = len(tangents)
        out = np.zeros(self.value_dim())
        for (exps, idx, vi), coeff in self.terms.items():
            if len(idx) != k:
                raise ValueError("term degree does not match tangent count")
            mono = 1.0
            for e, x in zip(exps, point):
                if e:
                    mono *= float(x) ** e
            out[vi] += float(coeff) * mono * _det_minor(tangents, idx)
        return out

    def pretty(self, names=None):
        names = names or [f"x{i}" for i in range(self.chart_dim)]
        bits = []
        for (exps, idx, vi), coeff in sorted(self.terms.items()):
            mono = "".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(exps)
                if e
            )
            wedge = "^".join(f"d{names[i]}" for i in idx)
            bits.append(f"({coeff}){mono}{wedge}[v{vi}]")
        return " + ".join(bits) if bits else "0"


def _det_minor(tangents, idx):
    k = len(idx)
    if k == 0:
        return 1.0
    m = np.array([[float(t[i]) for i in idx] for t in tangents])
    return float(np.linalg.det(m))


def _accumulate(d, key, val):
    cur = d.get(key, ZERO) + val
    if cur == 0:
        d.pop(key, None)
    else:
        d[key] = cur


def form(chart_dim, target, component, raw_terms):
    """Build a PolyForm from (exps, idx, vi, coeff) with unsorted indices."""
    terms = {}
    for exps, idx, vi, coeff in raw_terms:
        s = _sort_indices(idx)
        if s is None:
            continue
        sign, idx_sorted = s
        _accumulate(terms, (tuple(exps), idx_sorted, vi), sign * fr(coeff))
    return PolyForm(chart_dim, target, component, terms)


def zero_form(chart_dim, target, component):
    return PolyForm(chart_dim, target, component, {})


def d(w):
    """Exact exterior derivative, term by term; d(d(w)) = 0."""
    out = {}
    for (exps, idx, vi), coeff in w.terms.items():
        for j in range(w.chart_dim):
            e = exps[j]
            if e == 0 or j in idx:
                # j in idx: dx_j wedge dx_j = 0
                if e == 0:
                    continue
            if j in idx:
                continue
            new_exps = list(exps)
            new_exps[j] -= 1
            pos = sum(1 for i in idx if i < j)
            sign = (-1) ** pos
            new_idx = tuple(sorted(idx + (j,)))
            _accumulate(out, (tuple(new_exps), new_idx, vi), sign * coeff * e)
    return PolyForm(w.chart_dim, w.target, w.component, out)


def wedge_l2(a, b):
    """Graded wedge of two forms combined with l2 on the values.

    The Koszul sign is (-1)^(|u| * deg(eta)) for the value u of the first
    factor moving past the form part of the second.
    """
    if a.target is not b.target and a.target != b.target:
        raise ValueError("forms take values in different structures")
    T = a.target
    if a.component == DEG0 and b.component == DEG0:
        comp, combine = DEG0, lambda u, v: T.l2_00[u, v]
    elif a.component == DEG0 and b.component == DEGM1:
        comp, combine = DEGM1, lambda u, v: T.l2_0m1[u][:, v]
    elif a.component == DEGM1 and b.component == DEG0:
        comp, combine = DEGM1, lambda u, v: -T.l2_0m1[v][:, u]
    else:
        # l2 on L_{-1} x L_{-1} lands in degree -2, which is zero
        return zero_form(a.chart_dim, T, DEGM1)
    out = {}
    for (e1, i1, v1), c1 in a.terms.items():
        for (e2, i2, v2), c2 in b.terms.items():
            s = _sort_indices(i1 + i2)
            if s is None:
                continue
            sign, idx = s
            if a.component == DEGM1:
                sign *= (-1) ** len(i2)
            exps = tuple(x + y for x, y in zip(e1, e2))
            vec = combine(v1, v2)
            for w in range(len(vec)):
                if vec[w] != 0:
                    _accumulate(out, (exps, idx, w), sign * c1 * c2 * vec[w])
    return PolyForm(a.chart_dim, T, comp, out)


def apply_l1(w):
    """Push an L_{-1}-valued form to L_0 through l1, degree unchanged."""
    if w.component != DEGM1:
        raise ValueError("l1 applies to the degree -1 component")
    T = w.target
    out = {}
    for (exps, idx, vi), coeff in w.terms.items():
        col = T.l1[:, vi]
        for u in range(T.dim0):
            if col[u] != 0:
                _accumulate(out, (exps, idx, u), coeff * col[u])
    return PolyForm(w.chart_dim, T, DEG0, out)


def l3_cube(a, prefactor=Fraction(1)):
    """The trilinear prolongation l3(a, a, a) of a degree-0 valued form."""
    if a.component != DEG0:
        raise ValueError("l3 applies to degree 0 values")
    T = a.target
    out = {}
    items = list(a.terms.items())
    for (e1, i1, v1), c1 in items:
        for (e2, i2, v2), c2 in items:
            for (e3, i3, v3), c3 in items:
                s = _sort_indices(i1 + i2 + i3)
                if s is None:
                    continue
                sign, idx = s
                exps = tuple(x + y + z for x, y, z in zip(e1, e2, e3))
                vec = T.l3[v1, v2, v3]
                for w in range(T.dimm1):
                    if vec[w] != 0:
                        _accumulate(
                            out, (exps, idx, w), prefactor * sign * c1 * c2 * c3 * vec[w]
                        )
    return PolyForm(a.chart_dim, T, DEGM1, out)


@dataclass(frozen=True, eq=False)
class MCPair:
    """A degree-1 element: a 1-form A in L_0 and a 2-form B in L_{-1}."""

    A: PolyForm
    B: PolyForm

    def __post_init__(self):
        if self.A.component != DEG0 or self.B.component != DEGM1:
            raise ValueError("the pair must be (degree-0 values, degree -1 values)")
        if self.A.chart_dim != self.B.chart_dim:
            raise ValueError("the two forms live on different charts")
        if any(deg != 1 for deg in self.A.form_degrees()):
            raise ValueError("A must be a 1-form")
        if any(deg != 2 for deg in self.B.form_degrees()):
            raise ValueError("B must be a 2-form")

    @property
    def chart_dim(self):
        return self.A.chart_dim

    @property
    def target(self):
        return self.A.target


def fake_curvature(pair):
    """dA + (1/2)[A, A] + l1(B), exactly."""
    return (
        d(pair.A)
        + wedge_l2(pair.A, pair.A).scale(Fraction(1, 2))
        + apply_l1(pair.B)
    )


def three_curvature(pair, l3_prefactor=Fraction(1)):
    """dB + [A, B] + prefactor * l3(A, A, A), exactly.

    On a chart of dimension 2 this is identically zero for degree reasons.
    """
    return d(pair.B) + wedge_l2(pair.A, pair.B) + l3_cube(pair.A, l3_prefactor)


def is_maurer_cartan(pair, l3_prefactor=Fraction(1)):
    """True iff both curvatures vanish as polynomial identities.

    Returns (flag, {"fake": residual 2-form, "three": residual 3-form}).
    """
    fake = fake_curvature(pair)
    three = three_curvature(pair, l3_prefactor)
    return fake.is_zero() and three.is_zero(), {"fake": fake, "three": three}


def permute_chart(w, perm):
    """Relabel chart coordinates by a permutation (new index = perm[old])."""
    out = {}
    for (exps, idx, vi), coeff in w.terms.items():
        new_exps = [0] * w.chart_dim
        for i, e in enumerate(exps):
            new_exps[perm[i]] = e
        s = _sort_indices(tuple(perm[i] for i in idx))
        sign, new_idx = s
        _accumulate(out, (tuple(new_exps), new_idx, vi), sign * coeff)
    return PolyForm(w.chart_dim, w.target, w.component, out)
