"""Report formatting for mmident."""

from .formatters import ReportFormatters
from .templates import ReportTemplates

__all__ = ["ReportFormatters", "ReportTemplates"]
