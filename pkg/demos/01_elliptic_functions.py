"""Jacobi elliptic functions with complex argument and complex modulus.

The numerical bedrock of the package: theta-quotient evaluation that stays
accurate for the complex moduli (i k/k', 1/k, ...) the symmetry tables
produce, where real-modulus algorithms give up.
"""

import numpy as np

from darboux import (
    ModulusData,
    complete_elliptic,
    jacobi,
    jacobi_sn_cn_dn,
    lambda_of_tau,
    nome_and_tau,
)

k = 0.6
K, Kp = complete_elliptic(k)
print(f"modulus k = {k}:  K = {K.real:.15f},  K' = {Kp.real:.15f}")

q, tau = nome_and_tau(k)
print(f"nome q = {q.real:.12f},  tau = iK'/K = {tau:.12f}")

print("\nsn, cn, dn at a complex point:")
u = 0.8 + 0.35j
sn, cn, dn = jacobi_sn_cn_dn(u, k)
print(f"  sn({u}, {k}) = {sn:.12f}")
print(f"  cn({u}, {k}) = {cn:.12f}")
print(f"  dn({u}, {k}) = {dn:.12f}")
print(f"  sn^2+cn^2-1        = {abs(sn**2 + cn**2 - 1):.2e}")
print(f"  dn^2+k^2 sn^2 - 1  = {abs(dn**2 + k**2 * sn**2 - 1):.2e}")

print("\ncomplex modulus (the reciprocal transformation C: sn(ku, 1/k) = k sn(u, k)):")
lhs = jacobi("sn", k * u, 1 / k, guard=0)
print(f"  sn(k u, 1/k)  = {lhs:.12f}")
print(f"  k sn(u, k)    = {k * sn:.12f}   diff {abs(lhs - k * sn):.2e}")

print("\nthe shift to the dual singular point (row I3): sn(u + iK') = ns(u)/k:")
lhs = jacobi_sn_cn_dn(0.7 + 1j * Kp, k)[0]
rhs = jacobi("ns", 0.7, k) / k
print(f"  lhs = {lhs:.12f}, rhs = {rhs:.12f}, diff {abs(lhs - rhs):.2e}")

print("\nmodular lambda (lambda(tau) = k^2 on the tau of the modulus):")
print(f"  lambda(i)   = {lambda_of_tau(1j).real:.12f}   (exactly 1/2)")
print(f"  lambda(2i)  = {lambda_of_tau(2j).real:.12f}   (= (3-2*sqrt2)^2)")
print(f"  lambda(tau(k)) - k^2 = {abs(lambda_of_tau(tau) - k * k):.2e}")

md = ModulusData.from_modulus(1j * 0.6 / 0.8)
print(f"\npurely imaginary modulus ik/k': K = {md.K:.10f}, |q| = {abs(md.q):.6f}")
