"""config tests"""
