"""The PSL-core fragment and the interpretation into it."""
