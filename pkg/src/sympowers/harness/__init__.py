"""Search, certification, isomorphism testing and the command line."""
