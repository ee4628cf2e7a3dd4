"""Batch command-line surface."""

from .config import ConfigError, RunConfig
from .report import Check, VerificationReport
from .main import cli, main

__all__ = ["ConfigError", "RunConfig", "Check", "VerificationReport", "cli", "main"]
