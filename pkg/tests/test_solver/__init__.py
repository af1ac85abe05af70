"""solver tests"""
