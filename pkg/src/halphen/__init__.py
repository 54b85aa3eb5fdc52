"""Exact toolkit for Halphen pencils of index two: base-point resolution,
Kodaira fiber classification, and log canonical thresholds of plane sextics."""

__version__ = "0.1.0"
