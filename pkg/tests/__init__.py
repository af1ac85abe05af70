"""
StringForge test suite

- Unit tests per module family (tests/test_<area>/)
- Integration tests across solver, specialization and oracle
- Shared fixtures in conftest.py
"""
