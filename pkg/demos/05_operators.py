"""Formal differential operators: application, table inversion, decay classes.

An operator sum_m u_m (ck) d^m is determined by its values on the polynomial
basis (b_p = P(V_p)/p!) and can be rebuilt from any right-linear map through
those values alone.  Coefficient decay against the gauge sequence decides
whether the operator acts continuously on the weighted growth spaces; the
certificates here are grid verdicts, never asymptotic claims.
"""

import math

from monogenic import (
    MonogenicSeries,
    OperatorSymbol,
    ProximateOrder,
    ck_mul_left,
    hom_to_op,
    op_apply,
    op_class_check,
    op_to_hom,
    reconstruct_from_blackbox,
    series_derivative,
    tail_bound_profile,
)
from monogenic.operators import convergence_threshold, gauge_coefficient_operator

# a first-order operator whose single coefficient is itself a basis element
P = OperatorSymbol(2, {(1, 0): MonogenicSeries.basis_element(2, (0, 1))})
f = MonogenicSeries.basis_element(2, (2, 0))
print("P f =", dict(op_apply(P, f, 4).coeffs))

# operator <-> basis-value table: an exact bijection
table = op_to_hom(P, 3)
assert hom_to_op(table) == P
print("table round trip: exact for", len(table.entries), "table entries")

# rebuild an operator from a black-box right-linear map
g = MonogenicSeries.basis_element(2, (1, 0))

def black_box(h):
    return ck_mul_left(g, series_derivative(h, (0, 1)), 10)

Q = reconstruct_from_blackbox(black_box, 2, 4)
print("recovered support:", sorted(Q.entries), "- coefficient equals g:",
      Q.entries[(0, 1)].coeffs == g.coeffs)

# decay certificates against the gauge sequence
po = ProximateOrder("constant", 1.0)
lam0 = 0.2
boundary = gauge_coefficient_operator(2, po, 16, lambda q: q * math.log(lam0))
cert = op_class_check(boundary, po, po, sigma_grid=(1.0,), lambda_grid=(0.1, 0.2, 0.4))
for (lam, sig), ok in sorted(cert.cell_ok.items()):
    print(f"rate {lam:.1f}, weight {sig:.1f}: "
          f"{'admissible' if ok else 'not admissible'}, "
          f"ln C = {cert.ln_constant[(lam, sig)]:.3f}")

# tail of the application bound: geometric decay below the threshold rate
k, tau = 2.1, 1.0
eps_star = convergence_threshold(math.sqrt(6.0), k, tau, po.rho)
Pgood = gauge_coefficient_operator(2, po, 30, lambda q: q * math.log(eps_star / 2.5))
profile = tail_bound_profile(Pgood, po, po, sigma=1.0, tau=tau, k=k)
print("\nassembled tail bound (ln) by truncation point:")
for M in (10, 12, 14, 16, 18):
    print(f"  M={M:2d}: {profile[M]:9.3f}")
