"""algebra tests"""
