"""
Extended-precision oracles, independent of the package's code paths.

The level oracle solves the joint sigma_l relation as a root-finding problem
with mpmath.findroot (secant) at 50 digits instead of iterating it, and uses
the textbook (cancellation-prone but high-precision) forms of every formula.
"""

import mpmath as mp

mp.mp.dps = 50


def level_oracle(m01, m02, zalpha, n, l, sign=+1, freeze_d0=False):
    m01, m02, g = mp.mpf(m01), mp.mpf(m02), mp.mpf(zalpha)
    m0 = m01 + m02
    h = mp.mpf(l) + mp.mpf(1) / 2

    def fields(sigma):
        beta = n - sigma
        x = (1 + g**2 / beta**2) ** mp.mpf(-0.5)
        m = mp.sqrt(m01**2 + sign * 2 * m01 * m02 * x + m02**2)
        mu0 = 2 * m01 * m02 / (m0 + m)
        mu = sign * mu0 * x
        D = mu * (m0 + m) / (2 * m**2)
        d0 = 0 if freeze_d0 else 2 * g**2 * D
        return beta, m, mu0, mu, D, d0

    def residual(sigma):
        beta, _, _, _, _, d0 = fields(sigma)
        rhs = h + d0 / (2 * beta) - mp.sqrt(h**2 - g**2 + mp.mpf(3) / 2 * d0 - d0 / beta)
        return sigma - rhs

    sigma0 = h - mp.sqrt(h**2 - g**2)
    sigma = mp.findroot(residual, sigma0) if g != 0 else mp.mpf(0)
    beta, m, mu0, mu, D, d0 = fields(sigma)
    return dict(sigma_l=sigma, beta=beta, m=m, E_n=m, Eprime=m - m0, mu0=mu0, mu=mu, D=D, d0=d0)


def laguerre_coeffs(n_r, l):
    """Coefficients of L_{n_r}^{2l+1}(rho), rescaled so the constant term is 1."""
    c = [(-1) ** k * mp.binomial(n_r + 2 * l + 1, n_r - k) / mp.factorial(k) for k in range(n_r + 1)]
    return [ck / c[0] for ck in c]


def recurrence_oracle(s, beta, d0, zalpha, l, n_r):
    s, beta, d0, g = (mp.mpf(v) for v in (s, beta, d0, zalpha))
    b = [mp.mpf(1)]
    for nu in range(n_r + 1):
        num = s + nu - (beta + d0 / (2 * beta))
        den = (s + nu) * (s + nu + 1) - l * (l + 1) + g**2 - mp.mpf(3) / 2 * d0 + d0 / beta
        b.append(num / den * b[-1])
    return b
