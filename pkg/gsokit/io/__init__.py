"""Model documents."""
