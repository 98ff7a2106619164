"""Exact MOY, Kauffman and Kauffman-Vogel polynomials of small diagrams."""

from .diagram import SliceDiagram, parse_diagram, parse_diagrams
from .laurent import HalfLaurent, qbinom, qint

__all__ = ["HalfLaurent", "SliceDiagram", "parse_diagram", "parse_diagrams", "qbinom", "qint"]
__version__ = "0.1.0"
