"""Data models for the anytime PPM toolkit."""

from models.data_models import (
    AnytimeEstimates,
    BlockEstimate,
    BurstEmission,
    BurstPlan,
    ChannelSpec,
    CostBudget,
    CurvePoint,
    DecodeResult,
    DmcSpec,
    ErrorCurve,
    ExponentFit,
    ExponentValue,
    FeedbackHistogram,
    PathIndex,
    Pulse,
    RunRecord,
)
from models.config_models import RunConfig, Settings

__all__ = [
    "AnytimeEstimates",
    "BlockEstimate",
    "BurstEmission",
    "BurstPlan",
    "ChannelSpec",
    "CostBudget",
    "CurvePoint",
    "DecodeResult",
    "DmcSpec",
    "ErrorCurve",
    "ExponentFit",
    "ExponentValue",
    "FeedbackHistogram",
    "PathIndex",
    "Pulse",
    "RunConfig",
    "RunRecord",
    "Settings",
]
