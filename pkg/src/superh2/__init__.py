"""Lie superalgebras sl(m,n,R), their Steinberg-type central extensions and
graded second homology, computed by exact linear algebra."""

__version__ = "0.1.0"
