"""Report generation for tables, exception lists and the 73 analysis."""

from .exporter import ReportExporter
from .generators import ExceptionListGenerator, MdTableGenerator, X173ReportGenerator

__all__ = [
    "ReportExporter",
    "ExceptionListGenerator",
    "MdTableGenerator",
    "X173ReportGenerator",
]
