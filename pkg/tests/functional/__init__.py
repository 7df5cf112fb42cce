"""Functional test suite: worked example, linkage properties and brute-force oracles."""
