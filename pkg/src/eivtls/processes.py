"""Weakly dependent error-sequence generators with declarative rate metadata.

Three generator kinds are provided:

* ``iid_gaussian`` -- independent N(0, scale^2) draws.
* ``ma`` -- Gaussian moving average of order q.  The output is q-dependent,
  so its uniform-mixing coefficient vanishes beyond lag q; this is the
  phi-mixing exemplar.
* ``ar1`` -- stationary Gaussian AR(1), the alpha-mixing exemplar.  Its true
  mixing rate is geometric; the declared polynomial envelope ``n^(-1-delta)``
  (constant 1) is metadata consumed by the assumption checker, not a derived
  bound.

All generators are pure functions of (spec, n, seed) and are scaled so the
marginal standard deviation equals ``scale`` exactly in population.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import lfilter

from .errors import InvalidParams
from .seeding import column_subseed, stream

# Marker returned by theoretical_mixing_bound where the finite-range
# convention gives no usable bound.
UNBOUNDED_BELOW_RANGE = "unbounded-below-range"

MIXING_ALPHA = "alpha"
MIXING_PHI = "phi"
MIXING_INDEPENDENT = "independent"


@dataclass(frozen=True)
class ErrorProcessSpec:
    """One error column: generator kind plus mixing/moment metadata."""

    kind: str  # "iid_gaussian" | "ma" | "ar1"
    scale: float = 1.0
    coeffs: tuple[float, ...] | None = None  # MA coefficients c_0..c_q
    a: float | None = None  # AR(1) coefficient
    mixing_class: str = MIXING_INDEPENDENT
    delta: float | None = None  # polynomial rate exponent in n^(-1-delta)
    omega: float | None = None  # moment surplus in E|xi|^(4+omega)
    stationary: bool = True

    def __post_init__(self):
        if self.scale <= 0 or not np.isfinite(self.scale):
            raise InvalidParams("scale must be positive and finite")
        if self.kind == "ma":
            if not self.coeffs:
                raise InvalidParams("ma spec needs at least one coefficient")
            if not all(np.isfinite(c) for c in self.coeffs):
                raise InvalidParams("ma coefficients must be finite")
            if all(c == 0 for c in self.coeffs):
                raise InvalidParams("ma coefficients cannot all be zero")
            if self.mixing_class != MIXING_PHI:
                raise InvalidParams("ma carries mixing_class 'phi' by convention")
            if self.delta is not None:
                raise InvalidParams("ma is finite-range; delta must be None")
        elif self.kind == "ar1":
            if self.a is None or not np.isfinite(self.a) or abs(self.a) >= 1:
                raise InvalidParams("ar1 needs |a| < 1")
            if self.mixing_class != MIXING_ALPHA:
                raise InvalidParams("ar1 carries mixing_class 'alpha' by convention")
        elif self.kind == "iid_gaussian":
            if self.mixing_class != MIXING_INDEPENDENT:
                raise InvalidParams("iid_gaussian carries mixing_class 'independent'")
        else:
            raise InvalidParams(f"unknown process kind {self.kind!r}")

    @property
    def order(self) -> int:
        """Dependence range: q for MA(q), 0 for iid (AR(1) has no finite range)."""
        if self.kind == "ma":
            return len(self.coeffs) - 1
        return 0

    @property
    def finite_range(self) -> bool:
        return self.kind in ("ma", "iid_gaussian")

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "scale": self.scale, "stationary": self.stationary}
        if self.coeffs is not None:
            out["coeffs"] = list(self.coeffs)
        if self.a is not None:
            out["a"] = self.a
        if self.delta is not None:
            out["delta"] = self.delta
        if self.omega is not None:
            out["omega"] = self.omega
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorProcessSpec":
        kind = d.get("kind")
        if kind == "iid_gaussian":
            return iid_gaussian(scale=d.get("scale", 1.0), omega=d.get("omega"))
        if kind == "ma":
            return ma(
                tuple(d.get("coeffs", ())),
                scale=d.get("scale", 1.0),
                omega=d.get("omega"),
            )
        if kind == "ar1":
            return ar1(
                d.get("a"),
                scale=d.get("scale", 1.0),
                delta=d.get("delta"),
                omega=d.get("omega"),
            )
        raise InvalidParams(f"unknown process kind {kind!r}")


def iid_gaussian(scale: float = 1.0, omega: float | None = None) -> ErrorProcessSpec:
    return ErrorProcessSpec(
        kind="iid_gaussian", scale=scale, mixing_class=MIXING_INDEPENDENT, omega=omega
    )


def ma(coeffs: tuple[float, ...], scale: float = 1.0, omega: float | None = None) -> ErrorProcessSpec:
    """Gaussian MA(q) with coefficients ``coeffs = (c_0, ..., c_q)``."""
    return ErrorProcessSpec(
        kind="ma",
        scale=scale,
        coeffs=tuple(float(c) for c in coeffs),
        mixing_class=MIXING_PHI,
        omega=omega,
    )


def ar1(a: float, scale: float = 1.0, delta: float | None = None, omega: float | None = None) -> ErrorProcessSpec:
    """Stationary Gaussian AR(1) with coefficient ``a``."""
    return ErrorProcessSpec(
        kind="ar1", scale=scale, a=float(a), mixing_class=MIXING_ALPHA,
        delta=delta, omega=omega,
    )


def generate_sequence(spec: ErrorProcessSpec, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` values of the process; deterministic given (spec, n, seed)."""
    if n < 1:
        raise InvalidParams("n must be >= 1")
    rng = stream(seed)
    if spec.kind == "iid_gaussian":
        return spec.scale * rng.standard_normal(n)
    if spec.kind == "ma":
        c = np.asarray(spec.coeffs)
        q = len(c) - 1
        eta = rng.standard_normal(n + q)
        # x_t = scale * sum_j c_j eta_{t-j} / ||c||_2, so Var x_t = scale^2.
        x = np.convolve(eta, c, mode="valid")
        return spec.scale * x / np.linalg.norm(c)
    if spec.kind == "ar1":
        a = spec.a
        x0 = spec.scale * rng.standard_normal()
        innov = spec.scale * np.sqrt(1.0 - a * a) * rng.standard_normal(n)
        # Stationary start: x_0 ~ N(0, scale^2), then x_t = a x_{t-1} + e_t.
        x, _ = lfilter([1.0], [1.0, -a], innov, zi=np.array([a * x0]))
        return x
    raise InvalidParams(f"unknown process kind {spec.kind!r}")


def theoretical_mixing_bound(spec: ErrorProcessSpec, n: int):
    """Declared mixing-coefficient envelope at gap ``n``.

    Finite-range kinds return exactly 0 beyond their range and the
    ``UNBOUNDED_BELOW_RANGE`` marker inside it; AR(1) evaluates its declared
    polynomial envelope ``n^(-1-delta)``.
    """
    if n < 1:
        raise InvalidParams("n must be >= 1")
    if spec.kind == "iid_gaussian":
        return 0.0
    if spec.kind == "ma":
        return 0.0 if n > spec.order else UNBOUNDED_BELOW_RANGE
    if spec.kind == "ar1":
        if spec.delta is None:
            return UNBOUNDED_BELOW_RANGE
        return float(n) ** (-1.0 - spec.delta)
    raise InvalidParams(f"unknown process kind {spec.kind!r}")


@dataclass(frozen=True)
class ErrorMatrixSpec:
    """Column specs for the joint error matrix plus the common variance."""

    column_specs: tuple[ErrorProcessSpec, ...]
    sigma2: float = 1.0

    def __post_init__(self):
        if not self.column_specs:
            raise InvalidParams("need at least one error column")
        if self.sigma2 <= 0 or not np.isfinite(self.sigma2):
            raise InvalidParams("sigma2 must be positive and finite")

    @property
    def p(self) -> int:
        return len(self.column_specs) - 1

    def to_dict(self) -> dict:
        return {
            "sigma2": self.sigma2,
            "columns": [s.to_dict() for s in self.column_specs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorMatrixSpec":
        cols = tuple(ErrorProcessSpec.from_dict(c) for c in d.get("columns", ()))
        return cls(column_specs=cols, sigma2=d.get("sigma2", 1.0))


def generate_error_matrix(spec: ErrorMatrixSpec, n: int, seed: int) -> np.ndarray:
    """Draw the n x (p+1) error matrix with mutually independent columns.

    Column j (1-based) gets sub-seed ``splitmix64(seed XOR j*GOLDEN)`` and its
    scale is overridden so the population variance equals ``sigma2``.
    """
    if n < 1:
        raise InvalidParams("n must be >= 1")
    sd = float(np.sqrt(spec.sigma2))
    cols = []
    for j, col_spec in enumerate(spec.column_specs, start=1):
        sub = column_subseed(seed, j)
        cols.append(generate_sequence(replace(col_spec, scale=sd), n, sub))
    return np.column_stack(cols)
