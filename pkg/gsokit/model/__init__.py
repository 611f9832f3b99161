"""Finite models of the full theory."""
