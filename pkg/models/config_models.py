"""Configuration models for validation using Pydantic."""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from models.data_models import ChannelSpec
from utils.errors import CapacityError
from models.limits import (
    MAX_ANYTIME_HORIZON,
    MAX_BLOCK_MESSAGES,
    MAX_BURST_TREE_BITS,
    MAX_GENIE_DELAY,
)

DEFAULT_SEED = 20050101

Subcommand = Literal[
    "theory", "sim-genie", "sim-anytime", "sim-block", "sim-feedback", "sim-cost", "fit"
]

# Subcommands that simulate the AWGN code and so need exactly one of eb / rate fraction.
_NEEDS_CHANNEL = {"sim-genie", "sim-anytime", "sim-block", "sim-feedback"}


class Settings(BaseModel):
    """Process-wide settings loaded from the environment."""

    log_level: str = Field(default="INFO", description="Logging level")
    output_dir: Optional[str] = Field(None, description="Default directory for output files")
    workers: int = Field(default=1, ge=1, description="Default trial-parallelism degree")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the standard levels."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"Log level must be one of: {', '.join(valid_levels)}")
        return v_upper


class RunConfig(BaseModel):
    """Resolved parameters of one CLI run (config file merged with flags)."""

    subcommand: Subcommand
    eb: Optional[float] = Field(None, gt=0)
    rate_fraction: Optional[float] = Field(None, gt=0)
    delays: list[int] = Field(default_factory=list)
    trials: int = Field(default=10000, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2 ** 64)
    workers: int = Field(default=1, ge=1)
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"

    bit_index: int = Field(default=1, ge=1)
    messages: int = Field(default=16, ge=2)
    stream_length: int = Field(default=16, ge=1)
    dmc_path: Optional[str] = None
    eb_cost: Optional[float] = Field(None, gt=0)
    burst: int = Field(default=1, ge=1)

    @field_validator("delays")
    @classmethod
    def validate_delays(cls, v: list[int]) -> list[int]:
        """Delays are nonnegative and listed without repeats."""
        if any(d < 0 for d in v):
            raise ValueError("Delays must be nonnegative")
        if len(set(v)) != len(v):
            raise ValueError("Delays must not repeat")
        return sorted(v)

    @model_validator(mode="after")
    def validate_channel_choice(self):
        """Exactly one of eb / rate fraction for the AWGN simulations."""
        if self.subcommand in _NEEDS_CHANNEL:
            if (self.eb is None) == (self.rate_fraction is None):
                raise ValueError("Supply exactly one of --eb or --rate-fraction")
        elif self.eb is not None and self.rate_fraction is not None:
            raise ValueError("--eb and --rate-fraction are mutually exclusive")
        return self

    @model_validator(mode="after")
    def validate_required(self):
        """Delays, channel file and burst alignment for the curve subcommands."""
        needs_delays = {"sim-genie", "sim-anytime", "sim-cost"}
        if self.subcommand in needs_delays and not self.delays:
            raise ValueError("At least one delay is required")
        if self.subcommand == "sim-cost":
            if self.dmc_path is None or self.eb_cost is None:
                raise ValueError("sim-cost needs --dmc and --eb-cost")
            if any(d % self.burst for d in self.delays):
                raise ValueError("Cost-curve delays must be multiples of the burst length")
        return self

    def check_caps(self) -> None:
        """
        Keep every tree within the decoder's documented caps.

        Raises:
            CapacityError: A delay, horizon, stream length or message count is past its cap
        """
        max_d = max(self.delays, default=0)
        if self.subcommand == "sim-genie" and max_d > MAX_GENIE_DELAY:
            raise CapacityError(f"Genie delays are capped at {MAX_GENIE_DELAY}")
        if self.subcommand == "sim-anytime" and self.bit_index + max_d > MAX_ANYTIME_HORIZON:
            raise CapacityError(f"bit index + delay must not exceed {MAX_ANYTIME_HORIZON}")
        if self.subcommand == "sim-feedback" and self.stream_length > MAX_ANYTIME_HORIZON:
            raise CapacityError(f"Stream length is capped at {MAX_ANYTIME_HORIZON}")
        if self.subcommand == "sim-block" and self.messages > MAX_BLOCK_MESSAGES:
            raise CapacityError(f"Message count is capped at {MAX_BLOCK_MESSAGES}")
        if self.subcommand == "sim-cost" and max_d + self.burst > MAX_BURST_TREE_BITS:
            raise CapacityError(f"delay + burst length must not exceed {MAX_BURST_TREE_BITS} bits")

    def channel_spec(self) -> ChannelSpec:
        """Channel for the AWGN simulations, converting a rate fraction if given."""
        if self.eb is not None:
            return ChannelSpec(eb=self.eb)
        if self.rate_fraction is not None:
            return ChannelSpec.from_rate_fraction(self.rate_fraction)
        raise ValueError("No channel parameters supplied")
