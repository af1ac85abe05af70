"""
Logging tests
"""
