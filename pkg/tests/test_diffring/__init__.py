"""diffring tests"""
