"""Gorenstein liaison and deficiency modules over prime fields."""
