"""motzkin tests"""
