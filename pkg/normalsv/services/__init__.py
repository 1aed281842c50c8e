"""Shared services — storage.

Commands, nodes and scripts read configs and write CSV through
``services.storage`` so path handling and number formatting stay in one place.
"""
