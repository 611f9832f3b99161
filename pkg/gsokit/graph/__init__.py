"""Finite relation and graph algebra."""
