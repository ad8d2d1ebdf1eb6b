"""Catalog of ten distribution families: CDF, quantile, inverse-transform sampling.

Every family is driven by a :class:`DistributionSpec` value. Closed-form
families evaluate their textbook formulas; Gamma and Student-t go through
the regularized incomplete gamma/beta functions with quantiles recovered by
bracketed bisection plus Newton polish; the Hill-horror law is defined by
its quantile function, so its CDF is obtained by bisecting the quantile.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .empirical import Sample

_SQRT2 = math.sqrt(2.0)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "uniform": ("a", "b"),
    "exponential": ("lambda",),
    "gamma": ("alpha", "beta"),
    "normal": ("mu", "sigma2"),
    "studentt": ("n",),
    "pareto": ("alpha", "delta"),
    "frechet": ("alpha", "mu", "sigma"),
    "negweibull": ("alpha", "mu", "sigma"),
    "gumbel": ("mu", "gamma"),
    "hillhorror": ("alpha",),
}

_ALIASES = {
    "exp": "exponential",
    "t": "studentt",
    "student": "studentt",
    "gauss": "normal",
    "hh": "hillhorror",
}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _validate_params(family: str, p: dict[str, float]) -> None:
    for name, value in p.items():
        _require(math.isfinite(value), f"{family}: parameter {name} must be finite, got {value}")
    if family == "uniform":
        _require(p["a"] < p["b"], f"uniform: requires a < b, got a={p['a']}, b={p['b']}")
    elif family == "exponential":
        _require(p["lambda"] > 0, f"exponential: requires lambda > 0, got {p['lambda']}")
    elif family == "gamma":
        _require(p["alpha"] > 0, f"gamma: requires alpha > 0, got {p['alpha']}")
        _require(p["beta"] > 0, f"gamma: requires beta > 0, got {p['beta']}")
    elif family == "normal":
        _require(p["sigma2"] > 0, f"normal: requires sigma2 > 0, got {p['sigma2']}")
    elif family == "studentt":
        _require(
            p["n"] >= 1 and p["n"] == int(p["n"]),
            f"studentt: requires integer n >= 1, got {p['n']}",
        )
    elif family == "pareto":
        _require(p["alpha"] > 0, f"pareto: requires alpha > 0, got {p['alpha']}")
        _require(p["delta"] > 0, f"pareto: requires delta > 0, got {p['delta']}")
    elif family in ("frechet", "negweibull"):
        _require(p["alpha"] > 0, f"{family}: requires alpha > 0, got {p['alpha']}")
        _require(p["sigma"] > 0, f"{family}: requires sigma > 0, got {p['sigma']}")
    elif family == "gumbel":
        _require(p["gamma"] > 0, f"gumbel: requires gamma > 0, got {p['gamma']}")
    elif family == "hillhorror":
        _require(p["alpha"] > 0, f"hillhorror: requires alpha > 0, got {p['alpha']}")


@dataclass(frozen=True)
class DistributionSpec:
    """Tagged family identifier plus validated parameter record."""

    family: str
    params: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        name = self.family.strip().lower()
        name = _ALIASES.get(name, name)
        if name not in FAMILY_PARAMS:
            raise ValueError(f"unknown family {self.family!r}")
        expected = FAMILY_PARAMS[name]
        given = dict(self.params)
        for key in given:
            if key not in expected:
                raise ValueError(f"unknown parameter {key!r} for family {name}")
        missing = [key for key in expected if key not in given]
        if missing:
            raise ValueError(f"{name}: missing parameter {missing[0]!r}")
        params = {key: float(given[key]) for key in expected}
        _validate_params(name, params)
        object.__setattr__(self, "family", name)
        object.__setattr__(self, "params", params)

    def __str__(self) -> str:
        inner = ",".join(f"{k}={v:.12g}" for k, v in self.params.items())
        return f"{self.family}({inner})"


_SPEC_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*(.*?)\s*\)\s*$")


def parse_spec(text: str) -> DistributionSpec:
    """Parse the compact text form ``family(name=value,...)``."""
    match = _SPEC_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse distribution spec {text!r}; expected family(name=value,...)")
    family, body = match.group(1), match.group(2)
    params: dict[str, float] = {}
    if body:
        for token in body.split(","):
            if "=" not in token:
                raise ValueError(f"cannot parse parameter {token.strip()!r}; expected name=value")
            key, _, raw = token.partition("=")
            key = key.strip().lower()
            try:
                value = float(raw.strip())
            except ValueError:
                raise ValueError(f"invalid number {raw.strip()!r} for parameter {key!r}") from None
            if key in params:
                raise ValueError(f"duplicate parameter {key!r}")
            params[key] = value
    return DistributionSpec(family, params)


@dataclass(frozen=True)
class RngState:
    """Seed plus replicate stream index; fully determines a sample."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        _require(0 <= self.seed < 2**64, f"seed must be a 64-bit unsigned integer, got {self.seed}")
        _require(self.stream >= 0, f"stream must be non-negative, got {self.stream}")


# --- standard normal helpers -------------------------------------------------

def _norm_cdf(z):
    return 0.5 * special.erfc(-np.asarray(z, float) / _SQRT2)


def _norm_pdf(z):
    z = np.asarray(z, float)
    return np.exp(-0.5 * z * z - _LOG_SQRT_2PI)


# Acklam's rational approximation to the standard normal quantile
# (|relative error| < 1.15e-9 over (0,1)).
_ACK_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
          1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_ACK_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
          6.680131188771972e+01, -1.328068155288572e+01)
_ACK_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
          -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_ACK_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
          3.754408661907416e+00)


def _norm_ppf(p):
    p = np.asarray(p, float)
    x = np.empty_like(p)
    a, b, c, d = _ACK_A, _ACK_B, _ACK_C, _ACK_D
    lo = p < 0.02425
    hi = p > 1.0 - 0.02425
    mid = ~(lo | hi)
    if np.any(lo):
        q = np.sqrt(-2.0 * np.log(p[lo]))
        x[lo] = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
                ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    if np.any(hi):
        q = np.sqrt(-2.0 * np.log(1.0 - p[hi]))
        x[hi] = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
                ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    if np.any(mid):
        q = p[mid] - 0.5
        r = q * q
        x[mid] = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
                 (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    # One Newton step on the CDF takes |F(x) - p| below 1e-12.
    x = x - (_norm_cdf(x) - p) / _norm_pdf(x)
    return x


# --- generic bracketed inversion ---------------------------------------------

def _invert_cdf(cdf, pdf, p, lo, hi, iterations=100, xtol=1e-10):
    """Invert an increasing CDF on a per-element bracket [lo, hi].

    Bisection to xtol, then Newton polish with the density (kept inside
    the final bracket) to near machine accuracy.
    """
    p = np.asarray(p, float)
    lo = np.broadcast_to(np.asarray(lo, float), p.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, float), p.shape).copy()
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = cdf(mid) < p
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= xtol * np.maximum(1.0, np.abs(mid))):
            break
    x = 0.5 * (lo + hi)
    for _ in range(3):
        dens = pdf(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dens > 0, (cdf(x) - p) / np.where(dens > 0, dens, 1.0), 0.0)
        x = np.clip(x - step, lo, hi)
    return x


def _gamma_cdf(shape, rate, x):
    x = np.asarray(x, float)
    return np.where(x > 0, special.gammainc(shape, rate * np.maximum(x, 0.0)), 0.0)


def _gamma_pdf(shape, rate, x):
    x = np.asarray(x, float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logpdf = shape * math.log(rate) + (shape - 1.0) * np.log(x) - rate * x - math.lgamma(shape)
    return np.where(x > 0, np.exp(logpdf), 0.0)


def _gamma_ppf(shape, rate, p):
    p = np.asarray(p, float)
    hi = np.full(p.shape, max(1.0, 2.0 * shape / rate))
    for _ in range(200):
        need = _gamma_cdf(shape, rate, hi) < p
        if not np.any(need):
            break
        hi = np.where(need, hi * 2.0, hi)
    return _invert_cdf(
        lambda x: _gamma_cdf(shape, rate, x),
        lambda x: _gamma_pdf(shape, rate, x),
        p, 0.0, hi,
    )


def _t_cdf(df, x):
    # Two incomplete-beta forms: the tail argument df/(df+x^2) is accurate
    # far from 0 but saturates to 1.0 for |x| < ~1e-8, so the central region
    # uses the complementary argument x^2/(df+x^2) instead.
    x = np.asarray(x, float)
    xx = x * x
    central = 0.5 * special.betainc(0.5, 0.5 * df, xx / (df + xx))
    tail = 0.5 * special.betainc(0.5 * df, 0.5, df / (df + xx))
    inner = xx <= df
    upper = np.where(inner, 0.5 + central, 1.0 - tail)
    lower = np.where(inner, 0.5 - central, tail)
    return np.where(x >= 0, upper, lower)


def _t_pdf(df, x):
    x = np.asarray(x, float)
    lognorm = math.lgamma(0.5 * (df + 1.0)) - math.lgamma(0.5 * df) - 0.5 * math.log(df * math.pi)
    return np.exp(lognorm - 0.5 * (df + 1.0) * np.log1p(x * x / df))


def _t_ppf(df, p):
    p = np.asarray(p, float)
    hi = np.ones(p.shape)
    for _ in range(200):
        need = (_t_cdf(df, hi) < p) | (_t_cdf(df, -hi) > p)
        if not np.any(need):
            break
        hi = np.where(need, hi * 2.0, hi)
    return _invert_cdf(lambda x: _t_cdf(df, x), lambda x: _t_pdf(df, x), p, -hi, hi)


def _hh_quantile(alpha, p):
    p = np.asarray(p, float)
    with np.errstate(over="ignore"):
        return np.power(1.0 - p, -1.0 / alpha) * (-np.log1p(-p))


def _hh_cdf(alpha, x):
    # The quantile is explicit and strictly increasing on (0,1): bisect p.
    x = np.asarray(x, float)
    pos = x > 0
    out = np.zeros(x.shape)
    if np.any(pos):
        target = x[pos]
        lo = np.zeros(target.shape)
        hi = np.ones(target.shape)
        for _ in range(60):  # resolves p to ~4e-19 < 1e-12
            mid = 0.5 * (lo + hi)
            below = _hh_quantile(alpha, mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        out[pos] = 0.5 * (lo + hi)
    return out


# --- vectorized CDF / quantile dispatch --------------------------------------

def _cdf_array(spec: DistributionSpec, x) -> np.ndarray:
    x = np.asarray(x, float)
    p = spec.params
    family = spec.family
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if family == "uniform":
            return np.clip((x - p["a"]) / (p["b"] - p["a"]), 0.0, 1.0)
        if family == "exponential":
            return np.where(x > 0, -np.expm1(-p["lambda"] * np.maximum(x, 0.0)), 0.0)
        if family == "gamma":
            return _gamma_cdf(p["alpha"], p["beta"], x)
        if family == "normal":
            return _norm_cdf((x - p["mu"]) / math.sqrt(p["sigma2"]))
        if family == "studentt":
            return _t_cdf(p["n"], x)
        if family == "pareto":
            safe = np.maximum(x, p["delta"])
            return np.where(x < p["delta"], 0.0, -np.expm1(p["alpha"] * np.log(p["delta"] / safe)))
        if family == "frechet":
            z = np.maximum((x - p["mu"]) / p["sigma"], 0.0)
            return np.where(x > p["mu"], np.exp(-np.power(z, -p["alpha"])), 0.0)
        if family == "negweibull":
            z = np.maximum(-(x - p["mu"]) / p["sigma"], 0.0)
            return np.where(x < p["mu"], np.exp(-np.power(z, p["alpha"])), 1.0)
        if family == "gumbel":
            return np.exp(-np.exp(-(x - p["mu"]) / p["gamma"]))
        if family == "hillhorror":
            return _hh_cdf(p["alpha"], x)
    raise AssertionError(f"unhandled family {family}")


def _quantile_array(spec: DistributionSpec, prob) -> np.ndarray:
    prob = np.asarray(prob, float)
    p = spec.params
    family = spec.family
    with np.errstate(over="ignore"):
        if family == "uniform":
            return p["a"] + prob * (p["b"] - p["a"])
        if family == "exponential":
            return -np.log1p(-prob) / p["lambda"]
        if family == "gamma":
            return _gamma_ppf(p["alpha"], p["beta"], prob)
        if family == "normal":
            return p["mu"] + math.sqrt(p["sigma2"]) * _norm_ppf(prob)
        if family == "studentt":
            return _t_ppf(p["n"], prob)
        if family == "pareto":
            return p["delta"] * np.exp(-np.log1p(-prob) / p["alpha"])
        if family == "frechet":
            return p["mu"] + p["sigma"] * np.power(-np.log(prob), -1.0 / p["alpha"])
        if family == "negweibull":
            return p["mu"] - p["sigma"] * np.power(-np.log(prob), 1.0 / p["alpha"])
        if family == "gumbel":
            return p["mu"] - p["gamma"] * np.log(-np.log(prob))
        if family == "hillhorror":
            return _hh_quantile(p["alpha"], prob)
    raise AssertionError(f"unhandled family {family}")


def cdf(spec: DistributionSpec, x: float) -> float:
    """P(X <= x) for the given spec; total on finite x."""
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    return float(_cdf_array(spec, x))


def quantile(spec: DistributionSpec, p: float) -> float:
    """Generalized inverse inf{x : F(x) >= p} for p in (0,1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return float(_quantile_array(spec, p))


def _generator(rng: RngState) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=rng.seed, spawn_key=(rng.stream,))
    return np.random.Generator(np.random.PCG64(seq))


def _uniform_open(gen: np.random.Generator, count: int) -> np.ndarray:
    # (k + 0.5) / 2^53 lies strictly inside (0, 1), keeping the quantile total.
    return (gen.integers(0, 1 << 53, size=count, dtype=np.int64) + 0.5) * 2.0**-53


def sample(spec: DistributionSpec, rng: RngState, count: int) -> Sample:
    """Draw ``count`` i.i.d. observations by inverse transform.

    Identical (seed, stream) pairs produce identical samples regardless of
    execution order, so replicate streams can be evaluated in parallel.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    gen = _generator(rng)
    u = _uniform_open(gen, count)
    return Sample(_quantile_array(spec, u))
