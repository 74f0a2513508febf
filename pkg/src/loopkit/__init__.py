"""Finite loop workbench."""
