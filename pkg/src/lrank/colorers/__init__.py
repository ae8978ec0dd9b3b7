"""Ranking constructions."""
