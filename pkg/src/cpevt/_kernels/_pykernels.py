"""Pure-numpy implementations of the likelihood kernels.

Mirrors the API of the compiled module ``cpevt._kernels._core``; used as the
fallback backend when the extension is unavailable. Both backends must stay
numerically interchangeable (see tests/test_kernels.py).
"""

import math

import numpy as np

XI_EPS = 1e-8

_GAMMA_EPS = 1e-14
_GAMMA_ITMAX = 1000
_SQRT2 = math.sqrt(2.0)


# -- regularized incomplete gamma ------------------------------------------
# Series for x < a+1, continued fraction otherwise (Numerical Recipes split).

def _gamma_series(a: float, x: float) -> float:
    # lower regularized P(a, x) via power series
    if x <= 0.0:
        return 0.0
    gln = math.lgamma(a)
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_GAMMA_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - gln)


def _gamma_cf(a: float, x: float) -> float:
    # upper regularized Q(a, x) via Lentz continued fraction
    gln = math.lgamma(a)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, _GAMMA_ITMAX + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return math.exp(-x + a * math.log(x) - gln) * h


def reg_lower_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0."""
    if x <= 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_cf(a, x)


def reg_upper_gamma(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if x <= 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def norm_cdf(z: float) -> float:
    """Standard normal distribution function."""
    return 0.5 * math.erfc(-z / _SQRT2)


def norm_sf(z: float) -> float:
    """Standard normal survival function, accurate in the upper tail."""
    return 0.5 * math.erfc(z / _SQRT2)


# -- mixture bulk ------------------------------------------------------------

def gamma_mix_logpdf(x, logx, w, mu, eta):
    """Per-point log-density of a Gamma mixture (mean/shape parametrization).

    ``logx`` is the precomputed elementwise log of ``x``.
    """
    rate = eta / mu
    const = np.log(w) + eta * np.log(rate) - np.vectorize(math.lgamma)(eta)
    # terms[i, z] = log(w_z * pdf_z(x_i))
    terms = const + np.outer(logx, eta - 1.0) - np.outer(x, rate)
    m = terms.max(axis=1)
    return m + np.log(np.exp(terms - m[:, None]).sum(axis=1))


def normal_mix_logpdf(x, w, mu, d2):
    """Per-point log-density of a Normal mixture (mean/variance params)."""
    const = np.log(w) - 0.5 * np.log(2.0 * math.pi * d2)
    dev = x[:, None] - mu
    terms = const - 0.5 * dev * dev / d2
    m = terms.max(axis=1)
    return m + np.log(np.exp(terms - m[:, None]).sum(axis=1))


def gamma_mix_cdf(x: float, w, mu, eta) -> float:
    if x <= 0.0:
        return 0.0
    total = 0.0
    for z in range(len(w)):
        total += w[z] * reg_lower_gamma(eta[z], (eta[z] / mu[z]) * x)
    return total


def gamma_mix_sf(x: float, w, mu, eta) -> float:
    # survival accumulated from Q terms: accurate when 1 - cdf is tiny
    if x <= 0.0:
        return 1.0
    total = 0.0
    for z in range(len(w)):
        total += w[z] * reg_upper_gamma(eta[z], (eta[z] / mu[z]) * x)
    return total


def normal_mix_cdf(x: float, w, mu, d2) -> float:
    total = 0.0
    for z in range(len(w)):
        total += w[z] * norm_cdf((x - mu[z]) / math.sqrt(d2[z]))
    return total


def normal_mix_sf(x: float, w, mu, d2) -> float:
    total = 0.0
    for z in range(len(w)):
        total += w[z] * norm_sf((x - mu[z]) / math.sqrt(d2[z]))
    return total


# -- GPD tail ----------------------------------------------------------------

def gpd_logpdf(x: float, u: float, sigma: float, xi: float) -> float:
    """Log-density of the GPD at a single point; -inf outside support."""
    z = (x - u) / sigma
    if z < 0.0:
        return -math.inf
    if abs(xi) < XI_EPS:
        return -math.log(sigma) - z
    t = 1.0 + xi * z
    if t <= 0.0:
        return -math.inf
    return -math.log(sigma) - (1.0 / xi + 1.0) * math.log(t)


def _gpd_logpdf_vec(xs, u, sigma, xi):
    z = (xs - u) / sigma
    if np.any(z < 0.0):
        return None
    if abs(xi) < XI_EPS:
        return -math.log(sigma) - z
    t = 1.0 + xi * z
    if np.any(t <= 0.0):
        return None
    return -math.log(sigma) - (1.0 / xi + 1.0) * np.log(t)


def series_loglik(x, logh, tau, u, sigma, xi, logsurv) -> float:
    """Total log-likelihood of the regime-switching tail model.

    ``logh`` holds the bulk log-density at every observation and ``logsurv``
    the per-regime log bulk survival at the threshold; both are supplied by
    the caller so they can be cached across tail-parameter updates.
    """
    total = 0.0
    k = len(u)
    for j in range(k):
        seg = slice(tau[j], tau[j + 1])
        xs = x[seg]
        exc = xs > u[j]
        n_exc = int(exc.sum())
        total += logh[seg][~exc].sum()
        if n_exc:
            if not np.isfinite(logsurv[j]):
                return -math.inf
            lp = _gpd_logpdf_vec(xs[exc], u[j], sigma[j], xi[j])
            if lp is None:
                return -math.inf
            total += n_exc * logsurv[j] + lp.sum()
    return float(total)


def series_pointwise_logpdf(x, logh, tau, u, sigma, xi, logsurv):
    """Per-observation log-density under the regime-switching tail model."""
    out = np.array(logh, dtype=np.float64, copy=True)
    k = len(u)
    for j in range(k):
        seg = slice(tau[j], tau[j + 1])
        xs = x[seg]
        exc = xs > u[j]
        if not exc.any():
            continue
        lp = _gpd_logpdf_vec(xs[exc], u[j], sigma[j], xi[j])
        vals = np.full(int(exc.sum()), -math.inf)
        if lp is not None and np.isfinite(logsurv[j]):
            vals = logsurv[j] + lp
        block = out[seg]
        block[exc] = vals
        out[seg] = block
    return out
