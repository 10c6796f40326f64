"""The homogeneous monogenic polynomial basis and its exact derivative rule.

The basis element attached to a multi-index m is the fully symmetrised
product of the degree-one monogenic variables z_i = x_i - x0*e_i, normalised
so that applying the derivative rule m times and evaluating at the origin
yields exactly m!.  Equivalently, its restriction to the hyperplane x0 = 0
is the plain monomial x^m.

Evaluation uses the right-factor recursion

    V_m(x) = (1/|m|) * sum_i  m_i * V_{m-e_i}(x) * z_i(x),      V_0 = 1,

which regroups the permutation sum by last factor: it costs O(prod(m_i+1))
per point instead of |m|! and is exact in exact mode.
"""

from __future__ import annotations

from fractions import Fraction

from .clifford import CliffordNumber, Paravector, cl_mul
from .multiindex import MultiIndex, mi_abs
from .sampling import sphere_directions


def fueter_var(axis: int, x: Paravector) -> CliffordNumber:
    """The degree-one monogenic variable z_axis = x_axis - x0 * e_axis."""
    n = x.dim
    if not 1 <= axis <= n:
        raise ValueError(f"axis {axis} out of range 1..{n}")
    return CliffordNumber(n, {0: x.xv[axis - 1], 1 << (axis - 1): -x.x0})


class FueterCache:
    """Memoised basis evaluation at one fixed point.

    The memo is confined to this object; share one cache per point per task.
    """

    def __init__(self, x: Paravector, exact: bool = False):
        self.x = x
        self.n = x.dim
        self.exact = exact
        self._vars = [fueter_var(i, x) for i in range(1, self.n + 1)]
        one: CliffordNumber = CliffordNumber.scalar(self.n, Fraction(1) if exact else 1.0)
        self._memo: dict[MultiIndex, CliffordNumber] = {(0,) * self.n: one}

    def value(self, m: MultiIndex) -> CliffordNumber:
        memo = self._memo
        got = memo.get(m)
        if got is not None:
            return got
        q = mi_abs(m)
        acc = CliffordNumber.zero(self.n)
        for i, mi in enumerate(m):
            if mi == 0:
                continue
            prev = self.value(tuple(v - 1 if j == i else v for j, v in enumerate(m)))
            acc = acc + cl_mul(prev, self._vars[i]).scale(mi)
        weight = Fraction(1, q) if self.exact else 1.0 / q
        out = acc.scale(weight)
        memo[m] = out
        return out


def fueter_eval(m: MultiIndex, x: Paravector, exact: bool = False) -> CliffordNumber:
    """Evaluate the basis element for m at x (fresh cache; see FueterCache)."""
    return FueterCache(x, exact=exact).value(m)


def fueter_derivative_rule(m: MultiIndex, axis: int) -> tuple[int, MultiIndex | None]:
    """d/dx_axis V_m = m_axis * V_{m - e_axis}; returns (m_axis, lowered index).

    If the variable is absent the derivative is zero: returns (0, None).
    """
    if not 1 <= axis <= len(m):
        raise ValueError(f"axis {axis} out of range 1..{len(m)}")
    mi = m[axis - 1]
    if mi == 0:
        return 0, None
    lowered = tuple(v - 1 if j == axis - 1 else v for j, v in enumerate(m))
    return mi, lowered


def fueter_sup_unit_ball(m: MultiIndex, samples: int, seed: int = 0) -> float:
    """Sampled max of the basis element's norm over the closed unit ball.

    The element is homogeneous so the sup sits on the sphere; axis points are
    always in the sample set, and the value never exceeds 1.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = len(m)
    best = 0.0
    for d in sphere_directions(n + 1, samples, seed=seed):
        x = Paravector(float(d[0]), [float(v) for v in d[1:]])
        best = max(best, fueter_eval(m, x).norm())
    # the true sup is <= 1; trim float jitter at attaining points
    return min(best, 1.0)


def ordered_word_eval(m: MultiIndex, x: Paravector) -> CliffordNumber:
    """The unsymmetrised product z_1^m_1 * ... * z_n^m_n.

    Deliberately not monogenic for mixed m; used as a negative control for
    the Dirac-residual checks.
    """
    out = CliffordNumber.scalar(x.dim, 1.0)
    for i, mi in enumerate(m):
        z = fueter_var(i + 1, x)
        for _ in range(mi):
            out = cl_mul(out, z)
    return out
