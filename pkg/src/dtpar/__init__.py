"""Exact generating-series calculus for parabolic stable pair and generalized
DT invariants: wall-crossing transforms, multiple cover checks, Gopakumar-Vafa
products, and constructible-function aggregation."""

__version__ = "0.1.0"
