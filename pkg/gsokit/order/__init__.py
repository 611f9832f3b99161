"""Stratified orders, step sequences and extensions."""
