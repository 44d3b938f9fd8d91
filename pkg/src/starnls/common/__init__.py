"""Common utilities shared between the starnls subpackages and the starstab tool."""
