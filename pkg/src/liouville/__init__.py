"""Liouvillian solutions of second-order linear ODEs and Morales-Ramis tests
for few-body problems."""

__version__ = "0.1.0"
