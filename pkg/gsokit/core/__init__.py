"""Universe sorts and the specification-level structure."""
