"""Q4EDA: compile visual time-series selections into weighted boolean
search queries, run them, and score how stable the answers are."""

__version__ = "0.1.0"
