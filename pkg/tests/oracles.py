"""Independent reference computations used by the test-suite.

Nothing here calls the explicit coefficient formulas of ``piezoplate.bcp``.
"""

import mpmath as mp
import numpy as np

from piezoplate.bcp import TRACTION_VOIGT, Variant
from piezoplate.material import Orientation, constitutive_matrix


def _reduced_mp(spec):
    m = spec.material
    if spec.orientation is Orientation.THICKNESS1:
        c, e, beta, omega, eps, k, kp = m.c44, m.e15, 0.0, m.omega1, m.eps11, m.kappa11, m.kappaE11
    else:
        c, e, beta, omega, eps, k, kp = m.c33, m.e33, m.beta3, m.omega3, m.eps33, m.kappa33, m.kappaE33
    c, e, beta, omega, eps, k, kp = (mp.mpf(v) for v in (c, e, beta, omega, eps, k, kp))
    K = k / kp
    A = beta * e + c * omega
    B = e * e + c * eps
    a = A / (K * B)
    V = beta - K * a * e
    return dict(c=c, e=e, K=K, a=a, V=V)


def _basis(spec, r, x):
    """Jets (value, d/dx) of (u1, u2, u3, T, phi) for each of the ten unit coefficients.

    Textbook form: T = T1 e^{ax} + T2, phi = K T1 e^{ax} + F1 x + F2,
    u3 = V/(a c) T1 e^{ax} + U31 x + U32, u2 = U21 x + U22 and u1 either
    affine (x3 thickness) or with the beta1/(a c11) T1 e^{ax} term (x1 thickness).
    """
    m = spec.material
    a, K, V, c = r["a"], r["K"], r["V"], r["c"]
    x = mp.mpf(x)
    E = mp.exp(a * x)
    w1 = mp.mpf(m.beta1) / mp.mpf(m.c11) if spec.orientation is Orientation.THICKNESS1 else mp.mpf(0)
    zero = (mp.mpf(0), mp.mpf(0))
    cols = []
    # order: T1 T2 F1 F2 U11 U12 U21 U22 U31 U32; fields (u1, u2, u3, T, phi)
    cols.append([(w1 / a * E, w1 * E), zero, (V / (a * c) * E, V / c * E), (E, a * E), (K * E, K * a * E)])
    cols.append([zero, zero, zero, (mp.mpf(1), mp.mpf(0)), zero])
    cols.append([zero, zero, zero, zero, (x, mp.mpf(1))])
    cols.append([zero, zero, zero, zero, (mp.mpf(1), mp.mpf(0))])
    cols.append([(x, mp.mpf(1)), zero, zero, zero, zero])
    cols.append([(mp.mpf(1), mp.mpf(0)), zero, zero, zero, zero])
    cols.append([zero, (x, mp.mpf(1)), zero, zero, zero])
    cols.append([zero, (mp.mpf(1), mp.mpf(0)), zero, zero, zero])
    cols.append([zero, zero, (x, mp.mpf(1)), zero, zero])
    cols.append([zero, zero, (mp.mpf(1), mp.mpf(0)), zero, zero])
    return cols


def _flux(J, n, jet):
    """Constitutive image (t1..t6, D, q) of a 1-D jet in the state_vector layout."""
    s = [mp.mpf(0)] * 16
    for i in range(3):
        s[3 * i + n] = jet[i][1]
    s[9 + n] = jet[4][1]
    s[12 + n] = jet[3][1]
    s[15] = jet[3][0]
    return [mp.fsum(mp.mpf(J[r, j]) * s[j] for j in range(16)) for r in range(12)]


def dense_coefficients(spec, dps=50):
    """Solve the ten raw boundary equations as one dense system in extended precision.

    Returns the coefficients in textbook form (amplitude of exp(a x)), as floats.
    """
    with mp.workdps(dps):
        r = _reduced_mp(spec)
        J = constitutive_matrix(spec.material)
        n = spec.orientation.normal_axis
        h = mp.mpf(spec.h)
        d = spec.data
        top, bot = _basis(spec, r, h), _basis(spec, r, -h)
        rows, rhs = [], []

        def add(fn, value):
            rows.append([fn(j) for j in range(10)])
            rhs.append(mp.mpf(value))

        add(lambda j: top[j][3][0], d.Tbar)
        add(lambda j: top[j][4][0], d.phibar)
        for k, p in enumerate(TRACTION_VOIGT[spec.orientation]):
            add(lambda j, p=p: _flux(J, n, top[j])[p], getattr(d, f"tbar{k + 1}"))
        for i in range(3):
            add(lambda j, i=i: bot[j][i][0], getattr(d, f"ubar{i + 1}"))
        add(lambda j: -_flux(J, n, bot[j])[9 + n], d.qbar)
        if spec.variant is Variant.I:
            add(lambda j: -_flux(J, n, bot[j])[6 + n], d.Dbar)
        else:
            add(lambda j: bot[j][4][0], d.phibar2)
        sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
        return np.array([float(v) for v in sol])


def full_tensors(m):
    """Fourth-, third- and second-order 6mm tensors assembled index by index."""
    C = np.zeros((6, 6))
    C[0, 0] = C[1, 1] = m.c11
    C[0, 1] = C[1, 0] = m.c12
    C[0, 2] = C[2, 0] = C[1, 2] = C[2, 1] = m.c13
    C[2, 2] = m.c33
    C[3, 3] = C[4, 4] = m.c44
    C[5, 5] = m.c66
    E = np.zeros((3, 6))
    E[0, 4] = E[1, 3] = m.e15
    E[2, 0] = E[2, 1] = m.e31
    E[2, 2] = m.e33
    pairs = {(0, 0): 0, (1, 1): 1, (2, 2): 2, (1, 2): 3, (2, 1): 3, (0, 2): 4, (2, 0): 4, (0, 1): 5, (1, 0): 5}
    c = np.zeros((3, 3, 3, 3))
    e = np.zeros((3, 3, 3))
    for (i, j), p in pairs.items():
        e[:, i, j] = E[:, p]
        for (k, l), q in pairs.items():
            c[i, j, k, l] = C[p, q]
    return dict(
        c=c, e=e,
        eps=np.diag([m.eps11, m.eps11, m.eps33]),
        beta=np.diag([m.beta1, m.beta2, m.beta3]),
        omega=np.array([m.omega1, m.omega2, m.omega3]),
        kappa=np.diag([m.kappa11, m.kappa11, m.kappa33]),
        kappaE=np.diag([m.kappaE11, m.kappaE11, m.kappaE33]),
    )


def tensor_response(m, grad_u, grad_phi, grad_T, T):
    """(t_ij, D_i, q_i) by explicit contraction; E = -grad phi."""
    tn = full_tensors(m)
    strain = 0.5 * (grad_u + grad_u.T)
    E = -np.asarray(grad_phi)
    t = np.einsum("ijkl,kl->ij", tn["c"], strain) - np.einsum("kij,k->ij", tn["e"], E) - tn["beta"] * T
    D = np.einsum("ikl,kl->i", tn["e"], strain) + tn["eps"] @ E + tn["omega"] * T
    q = -tn["kappa"] @ grad_T - tn["kappaE"] @ E
    return t, D, q
