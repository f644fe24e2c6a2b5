"""Floating-point oracles that share no code with the exact engines."""

import numpy as np
from scipy.integrate import quad, solve_ivp


def _real(f):
    return lambda t: f.evaluate_complex(t).real


def witness_residual(r, omega, P, a, b, n=50):
    """Largest relative gap between y = P exp(int omega) (by quadrature) and the
    numeric solution of y'' = r y with the same data at a, over n points in [a, b]."""
    R, W = _real(r), _real(omega)
    Pf = np.polynomial.Polynomial([float(c) for c in P.coeffs] or [0.0])
    dP = Pf.deriv()
    xs = np.linspace(a, b, n)
    y_quad = np.array([Pf(t) * np.exp(quad(W, a, t, epsabs=1e-14, epsrel=1e-13, limit=200)[0]) for t in xs])
    y0 = [Pf(a), dP(a) + W(a) * Pf(a)]
    sol = solve_ivp(lambda t, s: [s[1], R(t) * s[0]], (a, b), y0, t_eval=xs, method="DOP853",
                    rtol=1e-12, atol=1e-14)
    scale = np.max(np.abs(y_quad))
    return float(np.max(np.abs(sol.y[0] - y_quad)) / scale)
