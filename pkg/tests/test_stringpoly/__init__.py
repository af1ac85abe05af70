"""stringpoly tests"""
