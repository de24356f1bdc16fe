"""Reference implementations used to pin expected values.

Everything in this package is computed the slow, literal way and must
stay independent of q4eda: nothing from the main package may be
imported here. Tests compare the fast implementations against these.
"""
