"""Tests for pseudocat-workbench."""
