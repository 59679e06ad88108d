"""bocskit: gendo-symmetric algebras and the bocs (A, D(A)) by exact linear algebra."""

__version__ = "0.1.0"
