"""Data models for channels, code-tree paths, decoder outputs and experiment results."""

import math
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.errors import DomainError

LN2 = math.log(2.0)

# Relative tolerance for identities between redundant fields.
_REL_TOL = 1e-9


class ChannelSpec(BaseModel):
    """Normalized energy per bit plus an optional time-domain view.

    ``eb`` is E_b/N0 (dimensionless). When ``c_inf`` and ``tau`` are both set,
    the rate is R = 1/tau and the fields must satisfy eb·R = ln2·c_inf, i.e.
    the rate fraction R/c_inf equals ln2/eb.
    """

    model_config = ConfigDict(frozen=True)

    eb: float = Field(..., gt=0, description="Energy per bit over N0")
    c_inf: Optional[float] = Field(None, gt=0, description="Infinite-bandwidth capacity, bits per unit time")
    tau: Optional[float] = Field(None, gt=0, description="Seconds per bit-slot")

    @model_validator(mode="after")
    def validate_time_domain(self):
        """Ensure the time-domain fields agree with eb when both are set."""
        if self.c_inf is not None and self.tau is not None:
            rate = 1.0 / self.tau
            lhs = self.eb * rate
            rhs = LN2 * self.c_inf
            if abs(lhs - rhs) > _REL_TOL * max(abs(lhs), abs(rhs)):
                raise ValueError(
                    f"Inconsistent time-domain view: eb*R = {lhs!r} but ln2*c_inf = {rhs!r}"
                )
        return self

    @classmethod
    def from_rate_fraction(cls, rate_fraction: float) -> "ChannelSpec":
        """Build a spec from r = R/C_inf using eb = ln2/r."""
        if not rate_fraction > 0:
            raise ValueError(f"Rate fraction must be positive, got {rate_fraction!r}")
        return cls(eb=LN2 / rate_fraction)

    @classmethod
    def from_time_domain(cls, rate: float, c_inf: float) -> "ChannelSpec":
        """Build a spec from a bit rate R and capacity C_inf (same time unit)."""
        if not rate > 0 or not c_inf > 0:
            raise ValueError(f"Rate and capacity must be positive, got R={rate!r}, c_inf={c_inf!r}")
        return cls(eb=LN2 * c_inf / rate, c_inf=c_inf, tau=1.0 / rate)

    @property
    def rate_fraction(self) -> float:
        return LN2 / self.eb

    @property
    def amplitude(self) -> float:
        """Matched-filter amplitude of one bit's energy in unit-variance noise."""
        return math.sqrt(2.0 * self.eb)


class ExponentValue(BaseModel):
    """An error exponent in nats, tagged with its unit domain.

    ``rate`` values are nats per unit time; ``eb`` values are nats per bit-slot.
    """

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0)
    domain: Literal["rate", "eb"]

    def __float__(self) -> float:
        return self.value


class PathIndex(BaseModel):
    """A leaf of the code tree at depth ``slot``: the sub-slot of a bit prefix.

    The sub-slot is the prefix read as a binary number, first bit most
    significant, so the children of m are 2m and 2m+1.
    """

    model_config = ConfigDict(frozen=True)

    slot: int = Field(..., ge=1)
    subslot: int = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_subslot_range(self):
        """Sub-slot must index one of the 2^slot divisions of the slot."""
        if self.subslot >= (1 << self.slot):
            raise ValueError(f"subslot {self.subslot} out of range for slot {self.slot}")
        return self


class Pulse(BaseModel):
    """All of one slot's energy, placed in a single sub-slot."""

    model_config = ConfigDict(frozen=True)

    path: PathIndex
    energy: float = Field(..., gt=0)


class DmcSpec(BaseModel):
    """Discrete memoryless channel with per-input costs and a free input."""

    model_config = ConfigDict(frozen=True)

    inputs: list[str] = Field(..., min_length=2)
    outputs: list[str] = Field(..., min_length=1)
    transition: list[list[float]]
    cost: list[float]
    zero_cost_input: int = Field(..., ge=0)

    @field_validator("cost")
    @classmethod
    def validate_cost(cls, v: list[float]) -> list[float]:
        """Costs must be nonnegative."""
        if any(c < 0 for c in v):
            raise ValueError("Input costs must be nonnegative")
        return v

    @model_validator(mode="after")
    def validate_shapes_and_rows(self):
        """Check matrix shape, stochastic rows and the zero-cost input."""
        nx, ny = len(self.inputs), len(self.outputs)
        if len(self.transition) != nx or any(len(row) != ny for row in self.transition):
            raise ValueError(f"Transition matrix must be {nx}x{ny}")
        if len(self.cost) != nx:
            raise ValueError(f"Cost row must have {nx} entries")
        for x, row in enumerate(self.transition):
            if any(p < 0 or p > 1 for p in row):
                raise ValueError(f"Row {x} has a probability outside [0, 1]")
            if abs(math.fsum(row) - 1.0) > 1e-12:
                raise ValueError(f"Row {x} sums to {math.fsum(row)!r}, not 1")
        if self.zero_cost_input >= nx:
            raise ValueError(f"zero_cost_input {self.zero_cost_input} is not an input index")
        if self.cost[self.zero_cost_input] != 0:
            raise ValueError("The designated zero-cost input must have cost 0")
        return self

    @property
    def matrix(self) -> np.ndarray:
        """Row-stochastic matrix P(y|x) as a fresh float array."""
        return np.asarray(self.transition, dtype=np.float64)


class DecodeResult(BaseModel):
    """Maximum-likelihood path over the first ``horizon`` slots."""

    model_config = ConfigDict(frozen=True)

    horizon: int = Field(..., ge=1)
    ml_path: tuple[int, ...]
    metric: float

    @model_validator(mode="after")
    def validate_path_length(self):
        if len(self.ml_path) != self.horizon:
            raise ValueError(f"ml_path has {len(self.ml_path)} bits, horizon is {self.horizon}")
        return self


class AnytimeEstimates(BaseModel):
    """Bit estimates at every horizon: ``rows[t-1][i-1]`` is bit i seen through slot t."""

    model_config = ConfigDict(frozen=True)

    horizon: int = Field(..., ge=1)
    rows: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def validate_triangle(self):
        if len(self.rows) != self.horizon:
            raise ValueError("One row per horizon is required")
        for t, row in enumerate(self.rows, 1):
            if len(row) != t:
                raise ValueError(f"Row for horizon {t} has {len(row)} entries")
        return self

    def estimate(self, t: int, i: int) -> int:
        """Estimate of bit i (1-based) from observations through slot t."""
        if not 1 <= i <= t <= self.horizon:
            raise ValueError(f"Need 1 <= i <= t <= {self.horizon}, got i={i}, t={t}")
        return self.rows[t - 1][i - 1]


class CurvePoint(BaseModel):
    """Empirical error rate at one delay with a 95% interval."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=0)
    trials: int = Field(..., gt=0)
    errors: int = Field(..., ge=0)
    p_hat: float
    ci_lo: float
    ci_hi: float

    @model_validator(mode="after")
    def validate_interval(self):
        if self.errors > self.trials:
            raise ValueError("errors cannot exceed trials")
        if not (self.ci_lo - 1e-12 <= self.p_hat <= self.ci_hi + 1e-12):
            raise ValueError(f"Interval [{self.ci_lo}, {self.ci_hi}] does not contain {self.p_hat}")
        return self


class ErrorCurve(BaseModel):
    """Per-delay error estimates, ordered by delay."""

    model_config = ConfigDict(frozen=True)

    points: list[CurvePoint]

    @property
    def delays(self) -> list[int]:
        return [p.d for p in self.points]

    def point(self, d: int) -> CurvePoint:
        for p in self.points:
            if p.d == d:
                return p
        raise KeyError(d)


class ExponentFit(BaseModel):
    """Weighted least-squares fit of -ln p_hat = intercept + slope·d."""

    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    stderr: float
    points_used: int = Field(..., ge=3)


class BlockEstimate(BaseModel):
    """Monte Carlo block-error rate of M-ary orthogonal ML detection."""

    model_config = ConfigDict(frozen=True)

    messages: int = Field(..., ge=2)
    eb: float = Field(..., gt=0)
    trials: int = Field(..., gt=0)
    errors: int = Field(..., ge=0)
    p_hat: float
    ci_lo: float
    ci_hi: float
    exact: Optional[float] = None


class FeedbackHistogram(BaseModel):
    """Distribution of the earliest-error age seen by tentative decisions.

    ``counts[a]`` counts (trial, t) pairs whose earliest wrong tentative bit
    lies a slots back (a = 0: no error). Slopes are per bit-slot.

    Age a can only occur once t >= a, so ``eligible_probabilities`` divides by
    the trials * (n - a + 1) pairs where it could occur. The plain tail is
    steepened by that truncation; the eligible tail is not.
    """

    model_config = ConfigDict(frozen=True)

    stream_length: int = Field(..., ge=1)
    trials: int = Field(..., gt=0)
    counts: list[int]
    probabilities: list[float]
    tail_slope: Optional[float] = None
    tail_stderr: Optional[float] = None
    log2_frequency_slope: Optional[float] = None
    eligible_probabilities: list[float] = Field(default_factory=list)
    eligible_tail_slope: Optional[float] = None
    eligible_tail_stderr: Optional[float] = None
    candidates: dict[str, float] = Field(default_factory=dict)


class CostBudget(BaseModel):
    """Running cost account of a unit-cost encoder.

    Spending is only allowed while spent stays within eb_cost times the
    number of bits received so far.
    """

    model_config = ConfigDict(validate_assignment=True)

    eb_cost: float = Field(..., gt=0)
    bits_received: int = Field(default=0, ge=0)
    spent: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def validate_within_budget(self):
        allowance = self.eb_cost * self.bits_received
        if self.spent > allowance * (1 + _REL_TOL) + 1e-12:
            raise ValueError(f"Spent {self.spent!r} exceeds allowance {allowance!r}")
        return self

    @property
    def available(self) -> float:
        return self.eb_cost * self.bits_received - self.spent

    def receive_bit(self) -> None:
        self.bits_received += 1

    def spend(self, amount: float) -> None:
        """Charge ``amount`` against the allowance."""
        if amount < 0:
            raise DomainError(f"Cannot spend a negative amount: {amount!r}")
        if amount > self.available * (1 + _REL_TOL) + 1e-12:
            raise DomainError(
                f"Spending {amount!r} would exceed the allowance "
                f"({self.available!r} left after {self.bits_received} bits)"
            )
        self.spent = self.spent + amount


class BurstPlan(BaseModel):
    """Channel inputs placed in the active sub-slot of one L-bit burst."""

    model_config = ConfigDict(frozen=True)

    L: int = Field(..., ge=1)
    eb_cost: float = Field(..., gt=0)
    symbol_multiset: tuple[int, ...] = Field(..., min_length=1)
    total_cost: float = Field(..., ge=0)
    total_divergence: float = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_budget(self):
        budget = self.L * self.eb_cost
        if self.total_cost > budget * (1 + _REL_TOL):
            raise ValueError(f"Plan cost {self.total_cost!r} exceeds burst budget {budget!r}")
        return self

    @property
    def budget(self) -> float:
        return self.L * self.eb_cost


class RunRecord(BaseModel):
    """Everything needed to reproduce one CLI run, plus its headline result."""

    subcommand: str
    parameters: dict[str, Any]
    seed: Optional[int] = None
    config_file: dict[str, str] = Field(default_factory=dict)
    flags: dict[str, Any] = Field(default_factory=dict)
    fitted_slope: Optional[float] = None
    fitted_stderr: Optional[float] = None
    wall_time_seconds: float = 0.0
    extra: dict[str, Any] = Field(default_factory=dict)


class BurstEmission(BaseModel):
    """The active sub-slot of one burst and the inputs placed in it."""

    model_config = ConfigDict(frozen=True)

    slot: int = Field(..., ge=1)
    subslot: int = Field(..., ge=0)
    symbols: tuple[int, ...]
