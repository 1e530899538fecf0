"""Shared tools for the engines and the command line."""
