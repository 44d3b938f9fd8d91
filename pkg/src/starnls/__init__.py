"""Tools for standing waves of the NLS equation on star graphs with a delta vertex."""
