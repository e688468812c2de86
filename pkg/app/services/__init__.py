"""Core services: type tables, the scheme engine, metrics and capturing."""

from .capturing import CaptureService
from .ordinal_metrics import INFINITY, MetricView
from .scheme_engine import SchemeView
from .type_core import TypeTable, builtin_type, validate_partition, validate_type

__all__ = [
    "CaptureService",
    "INFINITY",
    "MetricView",
    "SchemeView",
    "TypeTable",
    "builtin_type",
    "validate_partition",
    "validate_type",
]
