"""Readers for certificates and expectation files."""

from .certificate_parser import CertificateParser
from .expectations_parser import Expectations, ExpectationsParser

__all__ = ["CertificateParser", "Expectations", "ExpectationsParser"]
