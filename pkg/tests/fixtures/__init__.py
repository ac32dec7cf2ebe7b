"""Host fixtures used by pytest-test code."""
