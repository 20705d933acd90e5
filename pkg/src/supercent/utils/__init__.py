"""Configuration, logging and progress helpers."""

__all__ = [
    "config",
    "logger",
    "progress",
]
