"""genfun tests"""
